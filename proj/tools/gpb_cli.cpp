// gpb: command-line front end for the disordered Gross-Pitaevskii lattice model.
//
//   gpb solve --L 64 --p 0.5 --b 1 --g-rho 0.01 --seed 7
//   gpb sweep --p 0.5 --g-rho 2e-4,2e-5,2e-6 --n 10000 --seeds 8
//   gpb sweep --config sweep.json --threads 4
//
// Data goes to stdout (or --output); diagnostics go to stderr.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gpb/error.hpp"
#include "gpb/experiment.hpp"

namespace {

struct Flags {
  std::string config_path;
  bool print_config = false;
  std::string p, b, g, rho, norm_target, tol_gradient, tol_energy;
  std::vector<std::string> g_rho, g_rho_range, epsilons;
  std::size_t length = 0, n = 0, seeds = 0, split = 0, max_iterations = 0, threads = 0;
  std::uint64_t seed = 0;
  std::vector<std::size_t> sizes;
  std::string initial_state, output, format, state_binary;
};

struct Bound {
  CLI::Option* p;
  CLI::Option* b;
  CLI::Option* g_rho;
  CLI::Option* g_rho_range;
  CLI::Option* g;
  CLI::Option* rho;
  CLI::Option* length;
  CLI::Option* n;
  CLI::Option* sizes;
  CLI::Option* seed;
  CLI::Option* seeds;
  CLI::Option* epsilons;
  CLI::Option* norm_target;
  CLI::Option* split;
  CLI::Option* tol_gradient;
  CLI::Option* tol_energy;
  CLI::Option* max_iterations;
  CLI::Option* initial_state;
  CLI::Option* threads;
  CLI::Option* output;
  CLI::Option* format;
  CLI::Option* state_binary;
};

Bound add_options(CLI::App& app, Flags& f) {
  Bound o{};
  app.add_option("--config", f.config_path, "JSON config file; flags override its values");
  app.add_flag("--print-config", f.print_config, "print the resolved config as JSON and exit");
  o.p = app.add_option("--p", f.p, "probability that a site is a lake (V = 0)");
  o.b = app.add_option("--b", f.b, "barrier height");
  o.g_rho = app.add_option("--g-rho", f.g_rho, "coupling g*rho; comma list, 2^-12 accepted")
                ->delimiter(',');
  o.g_rho_range = app.add_option("--g-rho-range", f.g_rho_range,
                                 "geometric range start,stop,factor")
                      ->delimiter(',')
                      ->expected(3);
  o.g = app.add_option("--g", f.g, "interaction strength (with --rho)");
  o.rho = app.add_option("--rho", f.rho, "density (with --g)");
  o.length = app.add_option("--L", f.length, "number of sites (fixed-length model)");
  o.n = app.add_option("--n", f.n, "number of lake/barrier pairs (interval-count model)");
  o.sizes = app.add_option("--sizes", f.sizes, "system sizes for converge")->delimiter(',');
  o.seed = app.add_option("--seed", f.seed, "first realization seed");
  o.seeds = app.add_option("--seeds", f.seeds, "number of consecutive seeds");
  o.epsilons = app.add_option("--epsilon", f.epsilons, "occupation thresholds")->delimiter(',');
  o.norm_target = app.add_option("--norm-target", f.norm_target, "mass target in (0, 1]");
  o.split = app.add_option("--split", f.split, "split site for subadd (random if absent)");
  o.tol_gradient = app.add_option("--tol-gradient", f.tol_gradient, "solver residual tolerance");
  o.tol_energy = app.add_option("--tol-energy", f.tol_energy, "solver energy-decrease tolerance");
  o.max_iterations = app.add_option("--max-iterations", f.max_iterations, "solver iteration cap");
  o.initial_state = app.add_option("--initial-state", f.initial_state,
                                   "automatic | uniform | linear_ground_state");
  o.threads = app.add_option("--threads", f.threads, "worker threads (default $GPB_THREADS)");
  o.output = app.add_option("-o,--output", f.output, "write data here instead of stdout");
  o.format = app.add_option("--format", f.format, "csv | jsonl | json");
  o.state_binary = app.add_option("--state-binary", f.state_binary,
                                  "solve: also dump the amplitudes in binary form");
  return o;
}

std::vector<double> numbers(const std::vector<std::string>& text) {
  std::vector<double> out;
  for (const auto& t : text) out.push_back(gpb::parse_number(t));
  return out;
}

gpb::ExperimentConfig resolve(gpb::Command command, const Flags& f, const Bound& o) {
  gpb::ExperimentConfig c;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw gpb::InvalidArgument("field 'config': cannot open " + f.config_path);
    gpb::Json j;
    try {
      j = gpb::Json::parse(in);
    } catch (const gpb::Json::exception& e) {
      throw gpb::InvalidArgument("field 'config': " + std::string(e.what()));
    }
    c = gpb::experiment_from_json(j);
  }
  c.command = command;

  if (o.p->count()) c.p = gpb::parse_number(f.p);
  if (o.b->count()) c.b = gpb::parse_number(f.b);
  // Any coupling flag replaces whatever coupling form the file used.
  if (o.g_rho->count() || o.g_rho_range->count() || o.g->count() || o.rho->count()) {
    c.g_rho.clear();
    c.g_rho_range.reset();
    c.g.reset();
    c.rho.reset();
  }
  if (o.g_rho->count()) c.g_rho = numbers(f.g_rho);
  if (o.g_rho_range->count()) {
    const auto r = numbers(f.g_rho_range);
    c.g_rho_range = gpb::GeometricRange{r[0], r[1], r[2]};
  }
  if (o.g->count()) c.g = gpb::parse_number(f.g);
  if (o.rho->count()) c.rho = gpb::parse_number(f.rho);
  if (o.length->count() || o.n->count()) {
    c.length.reset();
    c.n.reset();
  }
  if (o.length->count()) c.length = f.length;
  if (o.n->count()) c.n = f.n;
  if (o.sizes->count()) c.sizes = f.sizes;
  if (o.seed->count()) c.seed = f.seed;
  if (o.seeds->count()) c.seeds = f.seeds;
  if (o.epsilons->count()) c.epsilons = numbers(f.epsilons);
  if (o.norm_target->count()) c.norm_target = gpb::parse_number(f.norm_target);
  if (o.split->count()) c.split = f.split;
  if (o.tol_gradient->count()) c.tol_gradient = gpb::parse_number(f.tol_gradient);
  if (o.tol_energy->count()) c.tol_energy = gpb::parse_number(f.tol_energy);
  if (o.max_iterations->count()) c.max_iterations = f.max_iterations;
  if (o.initial_state->count()) c.initial_state = gpb::initial_state_from_string(f.initial_state);
  if (o.threads->count()) c.threads = f.threads;
  if (o.output->count()) c.output = f.output;
  if (o.format->count()) c.format = gpb::output_format_from_string(f.format);
  if (o.state_binary->count()) c.state_binary = f.state_binary;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ground states of the Gross-Pitaevskii functional on a lattice with "
               "Bernoulli barriers"};
  app.set_version_flag("--version", std::string(gpb::kVersion));
  app.require_subcommand(1);

  const std::vector<std::pair<gpb::Command, const char*>> commands = {
      {gpb::Command::solve, "ground state of one realization"},
      {gpb::Command::bounds, "variational upper and lower bounds, no solve"},
      {gpb::Command::sweep, "ground-state energies and bounds over a g_rho sweep"},
      {gpb::Command::converge, "mean energy versus system size"},
      {gpb::Command::subadd, "check X(0,L) <= X(0,M) + X(M,L)"},
      {gpb::Command::lakes, "sample a realization and list its lakes and barriers"},
  };
  Flags flags;
  std::vector<std::pair<CLI::App*, Bound>> subs;
  for (const auto& [command, help] : commands) {
    auto* sub = app.add_subcommand(std::string(gpb::to_string(command)), help);
    subs.emplace_back(sub, add_options(*sub, flags));
  }

  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (!subs[i].first->parsed()) continue;
    try {
      const auto config = resolve(commands[i].first, flags, subs[i].second);
      if (flags.print_config) {
        config.validate();
        std::cout << gpb::to_json(config).dump(2) << '\n';
        return 0;
      }
      gpb::run(config, std::cout, std::cerr);
      return 0;
    } catch (const gpb::InvalidArgument& e) {
      std::cerr << "gpb: invalid configuration: " << e.what() << '\n';
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "gpb: error: " << e.what() << '\n';
      return 1;
    }
  }
  return 2;
}

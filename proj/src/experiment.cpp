#include "gpb/experiment.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "gpb/analysis.hpp"
#include "gpb/error.hpp"
#include "gpb/parallel.hpp"
#include "gpb/variational.hpp"

namespace gpb {

std::string_view to_string(Command c) {
  switch (c) {
    case Command::solve:
      return "solve";
    case Command::bounds:
      return "bounds";
    case Command::sweep:
      return "sweep";
    case Command::converge:
      return "converge";
    case Command::subadd:
      return "subadd";
    case Command::lakes:
      return "lakes";
  }
  return "unknown";
}

Command command_from_string(std::string_view name) {
  for (auto c : {Command::solve, Command::bounds, Command::sweep, Command::converge,
                 Command::subadd, Command::lakes}) {
    if (to_string(c) == name) return c;
  }
  throw InvalidArgument("field 'command': unknown command '" + std::string(name) + "'");
}

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::csv:
      return "csv";
    case OutputFormat::jsonl:
      return "jsonl";
    case OutputFormat::json:
      return "json";
  }
  return "unknown";
}

OutputFormat output_format_from_string(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "jsonl") return OutputFormat::jsonl;
  if (name == "json") return OutputFormat::json;
  throw InvalidArgument("field 'format': unknown format '" + std::string(name) + "'");
}

std::vector<double> GeometricRange::expand() const {
  if (!(start > 0.0 && stop > 0.0 && factor > 0.0 && factor != 1.0)) {
    throw InvalidArgument("field 'g_rho_range': need start, stop > 0 and factor > 0, != 1");
  }
  const bool down = factor < 1.0;
  if (down ? stop > start : stop < start) {
    throw InvalidArgument("field 'g_rho_range': factor moves away from stop");
  }
  std::vector<double> out;
  const double slack = 1e-12;
  for (double v = start; down ? v >= stop * (1.0 - slack) : v <= stop * (1.0 + slack);
       v *= factor) {
    out.push_back(v);
    if (out.size() > 100000) throw InvalidArgument("field 'g_rho_range': too many values");
  }
  return out;
}

double parse_number(std::string_view text) {
  const std::string s(text);
  const auto caret = s.find('^');
  try {
    std::size_t used = 0;
    if (caret == std::string::npos) {
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    }
    const std::string base_text = s.substr(0, caret);
    const std::string exp_text = s.substr(caret + 1);
    const double base = std::stod(base_text, &used);
    if (used != base_text.size()) throw std::invalid_argument(s);
    const double exponent = std::stod(exp_text, &used);
    if (used != exp_text.size()) throw std::invalid_argument(s);
    return std::pow(base, exponent);
  } catch (const std::logic_error&) {
    throw InvalidArgument("cannot parse number '" + s + "'");
  }
}

std::vector<double> ExperimentConfig::coupling_values() const {
  if (!g_rho.empty()) return g_rho;
  if (g_rho_range) return g_rho_range->expand();
  if (g && rho) return {*g * *rho};
  return {};
}

OutputFormat ExperimentConfig::resolved_format() const {
  if (format) return *format;
  switch (command) {
    case Command::solve:
    case Command::lakes:
      return OutputFormat::json;
    default:
      return OutputFormat::csv;
  }
}

SolverConfig ExperimentConfig::solver_config() const {
  SolverConfig c;
  c.tol_gradient = tol_gradient;
  c.tol_energy = tol_energy;
  c.max_iterations = max_iterations;
  c.initial_state = initial_state;
  return c;
}

std::size_t ExperimentConfig::thread_count() const {
  return threads ? *threads : default_thread_count();
}

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw InvalidArgument("field '" + field + "': " + what);
}

}  // namespace

void ExperimentConfig::validate() const {
  const bool lake_only = command == Command::lakes;
  if (!(p > 0.0 && p <= 1.0)) bad("p", "must lie in (0, 1]");
  if (p == 1.0 && (n || command == Command::sweep || command == Command::bounds)) {
    bad("p", "the interval-count model and the bounds need p < 1");
  }
  if (!(b > 0.0) || !std::isfinite(b)) bad("b", "must be positive");

  const int coupling_forms = (!g_rho.empty() ? 1 : 0) + (g_rho_range ? 1 : 0) +
                             ((g || rho) ? 1 : 0);
  if (coupling_forms > 1) bad("g_rho", "give exactly one of g_rho, g_rho_range, or g and rho");
  if ((g.has_value()) != (rho.has_value())) bad(g ? "rho" : "g", "g and rho go together");
  if (g && !(*g >= 0.0)) bad("g", "must be >= 0");
  if (rho && !(*rho > 0.0)) bad("rho", "must be > 0");
  if (!lake_only && coupling_forms == 0) bad("g_rho", "a coupling is required");
  const auto couplings = coupling_values();
  for (double v : couplings) {
    if (!(v >= 0.0) || !std::isfinite(v)) bad("g_rho", "values must be >= 0");
  }
  const bool single_coupling = command == Command::solve ||
                               command == Command::converge ||
                               command == Command::subadd;
  if (single_coupling && couplings.size() != 1) {
    bad("g_rho", std::string(to_string(command)) + " takes exactly one coupling");
  }
  if (command == Command::sweep || command == Command::bounds) {
    for (double v : couplings) {
      if (!(v > 0.0 && v < 1.0)) bad("g_rho", "sweep/bounds values must lie in (0, 1)");
    }
  }

  if (length && *length == 0) bad("L", "must be >= 1");
  if (n && *n == 0) bad("n", "must be >= 1");
  switch (command) {
    case Command::solve:
    case Command::bounds:
    case Command::lakes:
      if (length.has_value() == n.has_value()) bad("L", "give exactly one of L or n");
      break;
    case Command::sweep:
      if (!n) bad("n", "sweep needs n");
      if (length) bad("L", "sweep uses the interval-count model; give n, not L");
      break;
    case Command::converge:
      if (sizes.empty()) bad("sizes", "converge needs a list of sizes");
      for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (sizes[i] == 0 || (i > 0 && sizes[i] <= sizes[i - 1])) {
          bad("sizes", "must be positive and strictly increasing");
        }
      }
      break;
    case Command::subadd:
      if (!length || *length < 2) bad("L", "subadd needs L >= 2");
      if (split && (*split < 1 || *split >= *length)) bad("split", "need 1 <= split < L");
      break;
  }
  if (seeds == 0) bad("seeds", "must be >= 1");
  for (double e : epsilons) {
    if (!(e > 0.0 && e < 1.0)) bad("epsilon", "values must lie in (0, 1)");
  }
  if (!(norm_target > 0.0 && norm_target <= 1.0)) bad("norm_target", "must lie in (0, 1]");
  if (!(tol_gradient > 0.0)) bad("tol_gradient", "must be > 0");
  if (!(tol_energy > 0.0)) bad("tol_energy", "must be > 0");
  if (max_iterations == 0) bad("max_iterations", "must be > 0");
  if (initial_state == InitialState::supplied) {
    bad("initial_state", "'supplied' is only available through the library API");
  }
  if (threads && *threads == 0) bad("threads", "must be >= 1");
  if (!state_binary.empty() && command != Command::solve) {
    bad("state_binary", "only meaningful for solve");
  }
}

Json to_json(const ExperimentConfig& c) {
  Json j;
  j["command"] = std::string(to_string(c.command));
  j["p"] = c.p;
  j["b"] = c.b;
  if (!c.g_rho.empty()) j["g_rho"] = c.g_rho;
  if (c.g_rho_range) {
    j["g_rho_range"] = {c.g_rho_range->start, c.g_rho_range->stop, c.g_rho_range->factor};
  }
  if (c.g) j["g"] = *c.g;
  if (c.rho) j["rho"] = *c.rho;
  if (c.length) j["L"] = *c.length;
  if (c.n) j["n"] = *c.n;
  if (!c.sizes.empty()) j["sizes"] = c.sizes;
  j["seed"] = c.seed;
  j["seeds"] = c.seeds;
  j["epsilon"] = c.epsilons;
  j["norm_target"] = c.norm_target;
  if (c.split) j["split"] = *c.split;
  j["tol_gradient"] = c.tol_gradient;
  j["tol_energy"] = c.tol_energy;
  j["max_iterations"] = c.max_iterations;
  j["initial_state"] = std::string(to_string(c.initial_state));
  if (c.threads) j["threads"] = *c.threads;
  if (!c.output.empty()) j["output"] = c.output;
  if (c.format) j["format"] = std::string(to_string(*c.format));
  if (!c.state_binary.empty()) j["state_binary"] = c.state_binary;
  return j;
}

ExperimentConfig experiment_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("config must be a JSON object");
  ExperimentConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "command") {
        c.command = command_from_string(value.get<std::string>());
      } else if (key == "p") {
        c.p = value.get<double>();
      } else if (key == "b") {
        c.b = value.get<double>();
      } else if (key == "g_rho") {
        c.g_rho = value.is_array() ? value.get<std::vector<double>>()
                                   : std::vector<double>{value.get<double>()};
      } else if (key == "g_rho_range") {
        const auto r = value.get<std::vector<double>>();
        if (r.size() != 3) throw InvalidArgument("field 'g_rho_range': need [start, stop, factor]");
        c.g_rho_range = GeometricRange{r[0], r[1], r[2]};
      } else if (key == "g") {
        c.g = value.get<double>();
      } else if (key == "rho") {
        c.rho = value.get<double>();
      } else if (key == "L") {
        c.length = value.get<std::size_t>();
      } else if (key == "n") {
        c.n = value.get<std::size_t>();
      } else if (key == "sizes") {
        c.sizes = value.get<std::vector<std::size_t>>();
      } else if (key == "seed") {
        c.seed = value.get<std::uint64_t>();
      } else if (key == "seeds") {
        c.seeds = value.get<std::size_t>();
      } else if (key == "epsilon") {
        c.epsilons = value.get<std::vector<double>>();
      } else if (key == "norm_target") {
        c.norm_target = value.get<double>();
      } else if (key == "split") {
        c.split = value.get<std::size_t>();
      } else if (key == "tol_gradient") {
        c.tol_gradient = value.get<double>();
      } else if (key == "tol_energy") {
        c.tol_energy = value.get<double>();
      } else if (key == "max_iterations") {
        c.max_iterations = value.get<std::size_t>();
      } else if (key == "initial_state") {
        c.initial_state = initial_state_from_string(value.get<std::string>());
      } else if (key == "threads") {
        c.threads = value.get<std::size_t>();
      } else if (key == "output") {
        c.output = value.get<std::string>();
      } else if (key == "format") {
        c.format = output_format_from_string(value.get<std::string>());
      } else if (key == "state_binary") {
        c.state_binary = value.get<std::string>();
      } else {
        throw InvalidArgument("field '" + key + "': unknown config key");
      }
    }
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed config: ") + e.what());
  }
  return c;
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

namespace {

std::string csv_cell(const Table::Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_number(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::string>) {
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string quoted = "\"";
          for (char ch : v) {
            if (ch == '"') quoted += '"';
            quoted += ch;
          }
          return quoted + '"';
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

nlohmann::ordered_json json_cell(const Table::Cell& cell) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
        }
        return v;
      },
      cell);
}

}  // namespace

void Table::write(std::ostream& out, OutputFormat format) const {
  auto row_object = [&](const std::vector<Cell>& row) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < columns.size(); ++i) obj[columns[i]] = json_cell(row[i]);
    return obj;
  };
  switch (format) {
    case OutputFormat::csv:
      for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
      }
      out << '\n';
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          out << (i ? "," : "") << csv_cell(row[i]);
        }
        out << '\n';
      }
      break;
    case OutputFormat::jsonl:
      for (const auto& row : rows) out << row_object(row).dump() << '\n';
      break;
    case OutputFormat::json: {
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      for (const auto& row : rows) arr.push_back(row_object(row));
      out << arr.dump(2) << '\n';
      break;
    }
  }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

namespace {

using Cell = Table::Cell;

const std::vector<std::string> kProvenanceColumns = {
    "command", "version", "p", "b", "g_rho", "n", "L", "seed"};

std::vector<Cell> provenance(const ExperimentConfig& c, double g_rho,
                             std::optional<std::size_t> n, std::size_t length,
                             std::uint64_t seed) {
  return {std::string(to_string(c.command)),
          std::string(kVersion),
          c.p,
          c.b,
          g_rho,
          n ? static_cast<std::int64_t>(*n) : std::int64_t{-1},
          static_cast<std::uint64_t>(length),
          seed};
}

Table with_provenance(std::vector<std::string> extra_columns) {
  Table t;
  t.columns = kProvenanceColumns;
  t.columns.insert(t.columns.end(), extra_columns.begin(), extra_columns.end());
  return t;
}

PotentialRealization make_realization(const ExperimentConfig& c, std::uint64_t seed) {
  if (c.n) return sample_fixed_interval_count(*c.n, c.p, c.b, seed);
  return sample_fixed_length(*c.length, c.p, c.b, seed);
}

Json provenance_json(const ExperimentConfig& c) {
  // The worker count never changes results, so it stays out of the data.
  auto config = to_json(c);
  config.erase("threads");
  return Json{{"version", kVersion}, {"config", std::move(config)}};
}

void run_solve(const ExperimentConfig& c, std::ostream& out, std::ostream& log) {
  const auto potential = make_realization(c, c.seed);
  const double g_rho = c.coupling_values().front();
  const auto coupling = Coupling::from_g_rho(g_rho, potential.size());
  log << "gpb: solving L = " << potential.size() << ", gN = " << coupling.g_n << '\n';
  const auto result = ground_state(potential, coupling, c.solver_config());
  if (!result.converged) {
    log << "gpb: warning: solver did not converge (residual "
        << format_number(result.residual) << ")\n";
  }
  if (!c.state_binary.empty()) write_state_binary(c.state_binary, result.state.amplitudes());

  const auto format = c.resolved_format();
  if (format == OutputFormat::csv) {
    auto table = with_provenance({"site", "potential", "amplitude"});
    const auto a = result.state.amplitudes();
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto row = provenance(c, g_rho, c.n, potential.size(), c.seed);
      row.insert(row.end(), {static_cast<std::uint64_t>(i + 1), potential[i], a[i]});
      table.rows.push_back(std::move(row));
    }
    table.write(out, format);
    return;
  }
  Json occupation = Json::array();
  for (double eps : c.epsilons) {
    // V >= 0 here, so the unshifted bound applies.
    occupation.push_back(to_json(check_delocalization(result.state, eps, coupling.g_n,
                                                      result.energy.total, 0.0)));
  }
  Json doc = provenance_json(c);
  doc["g_rho"] = g_rho;
  doc["g_n"] = coupling.g_n;
  doc["potential"] = to_json(potential);
  doc["result"] = to_json(result);
  doc["occupation"] = std::move(occupation);
  out << (format == OutputFormat::json ? doc.dump(2) : doc.dump()) << '\n';
}

void run_lakes(const ExperimentConfig& c, std::ostream& out) {
  const auto format = c.resolved_format();
  if (format == OutputFormat::json) {
    Json docs = Json::array();
    for (std::size_t k = 0; k < c.seeds; ++k) {
      const auto potential = make_realization(c, c.seed + k);
      Json doc = provenance_json(c);
      doc["realization"] = to_json(potential);
      doc["decomposition"] = to_json(decompose_lakes(potential));
      docs.push_back(std::move(doc));
    }
    out << (c.seeds == 1 ? docs.front() : docs).dump(2) << '\n';
    return;
  }
  auto table = with_provenance({"kind", "index", "start", "length"});
  for (std::size_t k = 0; k < c.seeds; ++k) {
    const auto potential = make_realization(c, c.seed + k);
    const auto d = decompose_lakes(potential);
    auto emit = [&](const char* kind, const std::vector<Interval>& list) {
      for (std::size_t i = 0; i < list.size(); ++i) {
        auto row = provenance(c, std::nan(""), c.n, potential.size(), c.seed + k);
        row.insert(row.end(), {std::string(kind), static_cast<std::uint64_t>(i),
                               static_cast<std::uint64_t>(list[i].start),
                               static_cast<std::uint64_t>(list[i].length)});
        table.rows.push_back(std::move(row));
      }
    };
    emit("lake", d.lakes);
    emit("barrier", d.barriers);
  }
  table.write(out, format);
}

void run_bounds(const ExperimentConfig& c, std::ostream& out) {
  auto table = with_provenance(
      {"in_regime", "note", "log_p", "cutoff", "upper", "upper_sharp", "lower",
       "lower_expected", "upper_scaled", "lower_scaled", "test_energy",
       "lambda_asymptotic", "lambda_water_fill", "water_fill_cutoff", "active_lakes"});
  const auto couplings = c.coupling_values();
  const double nan = std::nan("");
  for (double g_rho : couplings) {
    for (std::size_t k = 0; k < c.seeds; ++k) {
      const auto seed = c.seed + k;
      const auto potential = make_realization(c, seed);
      const auto d = decompose_lakes(potential);
      auto row = provenance(c, g_rho, c.n, potential.size(), seed);
      const double lp = log_base(g_rho, c.p);
      try {
        const double upper = upper_bound_energy(d, g_rho, c.p);
        const double lower = lower_bound_energy(d, g_rho, c.p, c.norm_target);
        const auto test = build_test_function(d, g_rho, c.p);
        const double test_energy =
            evaluate_energy(test, potential, Coupling::from_g_rho(g_rho, potential.size()))
                .total;
        const auto alloc = water_fill(d, g_rho, potential.size(), c.norm_target);
        std::uint64_t active = 0;
        for (double m : alloc.masses) active += m > 0.0 ? 1 : 0;
        row.insert(row.end(),
                   {true, std::string(), lp, cutoff_length(g_rho, c.p), upper,
                    upper_bound_energy_sharp(d, g_rho, c.p), lower,
                    c.n ? lower_bound_energy_expected(g_rho, c.p, *c.n, c.norm_target) : nan,
                    upper * lp * lp, lower * lp * lp, test_energy,
                    lambda_asymptotic(g_rho, c.p), alloc.lambda, alloc.cutoff, active});
      } catch (const Error& e) {
        row.insert(row.end(), {false, std::string(e.what()), lp, nan, nan, nan, nan, nan,
                               nan, nan, nan, nan, nan, nan, std::uint64_t{0}});
      }
      table.rows.push_back(std::move(row));
    }
  }
  table.write(out, c.resolved_format());
}

void run_sweep(const ExperimentConfig& c, std::ostream& out, std::ostream& log) {
  ScalingSweepConfig s;
  s.p = c.p;
  s.b = c.b;
  s.g_rho_values = c.coupling_values();
  s.n = *c.n;
  s.seeds = c.seeds;
  s.first_seed = c.seed;
  s.norm_target = c.norm_target;
  s.solver = c.solver_config();
  s.threads = c.thread_count();
  log << "gpb: sweep of " << s.g_rho_values.size() * s.seeds << " solves on "
      << s.threads << " thread(s)\n";
  const auto rows = scaling_sweep(s);
  auto table = with_provenance(
      {"log_p", "e0", "e0_scaled", "converged", "residual", "in_regime", "note",
       "cutoff", "upper", "upper_scaled", "upper_sharp", "lower", "lower_scaled",
       "test_energy", "frac_barrier", "frac_long", "frac_light", "frac_heavy",
       "heavy_lakes", "heavy_kinetic_violations"});
  for (const auto& r : rows) {
    auto row = provenance(c, r.g_rho, r.n, r.length, r.seed);
    row.insert(row.end(),
               {r.log_p, r.e0, r.scaled(r.e0), r.converged, r.residual, r.in_regime,
                r.regime_note, r.cutoff, r.upper, r.scaled(r.upper), r.upper_sharp,
                r.lower, r.scaled(r.lower), r.test_energy, r.fractions.barrier,
                r.fractions.long_lakes, r.fractions.light, r.fractions.heavy,
                static_cast<std::uint64_t>(r.heavy_kinetic.heavy_lakes),
                static_cast<std::uint64_t>(r.heavy_kinetic.violations)});
    table.rows.push_back(std::move(row));
  }
  table.write(out, c.resolved_format());
}

void run_converge(const ExperimentConfig& c, std::ostream& out, std::ostream& log) {
  ConvergenceStudyConfig s;
  s.p = c.p;
  s.b = c.b;
  s.g_rho = c.coupling_values().front();
  s.sizes = c.sizes;
  s.seeds_per_size = c.seeds;
  s.first_seed = c.seed;
  s.solver = c.solver_config();
  s.threads = c.thread_count();
  log << "gpb: convergence study of " << s.sizes.size() * s.seeds_per_size
      << " solves on " << s.threads << " thread(s)\n";
  const auto rows = convergence_study(s);
  auto table = with_provenance({"seeds", "mean_e0", "std_e0", "converged"});
  for (const auto& r : rows) {
    auto row = provenance(c, s.g_rho, std::nullopt, r.length, c.seed);
    row.insert(row.end(), {static_cast<std::uint64_t>(r.seeds.size()), r.mean, r.stddev,
                           static_cast<std::uint64_t>(r.converged)});
    table.rows.push_back(std::move(row));
  }
  table.write(out, c.resolved_format());
}

std::size_t random_split(std::uint64_t seed, std::size_t length) {
  std::mt19937_64 engine(~seed);
  return 1 + static_cast<std::size_t>(engine() % (length - 1));
}

void run_subadd(const ExperimentConfig& c, std::ostream& out, std::ostream& log) {
  const double g_rho = c.coupling_values().front();
  const auto solver = c.solver_config();
  log << "gpb: subadditivity on " << c.seeds << " realization(s)\n";
  struct Outcome {
    std::size_t split;
    SubadditivityCheck check;
  };
  const auto outcomes = parallel_map(c.seeds, c.thread_count(), [&](std::size_t k) {
    const auto potential = sample_fixed_length(*c.length, c.p, c.b, c.seed + k);
    const std::size_t split = c.split ? *c.split : random_split(c.seed + k, *c.length);
    return Outcome{split, check_subadditivity(potential, split, g_rho, solver)};
  });
  auto table = with_provenance({"split", "x_0L", "x_0M", "x_ML", "holds", "converged"});
  for (std::size_t k = 0; k < outcomes.size(); ++k) {
    const auto& o = outcomes[k];
    auto row = provenance(c, g_rho, std::nullopt, *c.length, c.seed + k);
    row.insert(row.end(), {static_cast<std::uint64_t>(o.split), o.check.x_0l, o.check.x_0m,
                           o.check.x_ml, o.check.holds, o.check.converged});
    table.rows.push_back(std::move(row));
  }
  table.write(out, c.resolved_format());
}

}  // namespace

void run(const ExperimentConfig& config, std::ostream& data, std::ostream& log) {
  config.validate();
  std::ofstream file;
  std::ostream* out = &data;
  if (!config.output.empty()) {
    file.open(config.output, std::ios::binary);
    if (!file) throw InvalidArgument("field 'output': cannot open " + config.output);
    out = &file;
  }
  // Render into memory first so a failure never leaves a half-written file.
  std::ostringstream buffer;
  switch (config.command) {
    case Command::solve:
      run_solve(config, buffer, log);
      break;
    case Command::lakes:
      run_lakes(config, buffer);
      break;
    case Command::bounds:
      run_bounds(config, buffer);
      break;
    case Command::sweep:
      run_sweep(config, buffer, log);
      break;
    case Command::converge:
      run_converge(config, buffer, log);
      break;
    case Command::subadd:
      run_subadd(config, buffer, log);
      break;
  }
  *out << buffer.str();
  out->flush();
}

std::size_t default_thread_count() {
  if (const char* env = std::getenv("GPB_THREADS")) {
    try {
      const auto v = std::stoul(env);
      if (v > 0) return v;
    } catch (const std::logic_error&) {
    }
  }
  const auto hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

}  // namespace gpb

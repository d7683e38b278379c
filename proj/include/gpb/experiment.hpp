#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gpb/serialize.hpp"
#include "gpb/solver.hpp"

namespace gpb {

enum class Command { solve, bounds, sweep, converge, subadd, lakes };
enum class OutputFormat { csv, jsonl, json };

std::string_view to_string(Command c);
Command command_from_string(std::string_view name);
std::string_view to_string(OutputFormat f);
OutputFormat output_format_from_string(std::string_view name);

/// g_rho values start, start*factor, ... while not past stop.
struct GeometricRange {
  double start = 0.0;
  double stop = 0.0;
  double factor = 0.0;
  std::vector<double> expand() const;
  friend bool operator==(const GeometricRange&, const GeometricRange&) = default;
};

/// Everything needed to reproduce one CLI invocation.
struct ExperimentConfig {
  Command command = Command::solve;
  double p = 0.5;
  double b = 1.0;
  std::vector<double> g_rho;
  std::optional<GeometricRange> g_rho_range;
  std::optional<double> g;
  std::optional<double> rho;
  std::optional<std::size_t> length;
  std::optional<std::size_t> n;
  std::vector<std::size_t> sizes;
  std::uint64_t seed = 0;
  std::size_t seeds = 1;
  std::vector<double> epsilons = {0.1, 0.5, 0.9};
  double norm_target = 1.0;
  std::optional<std::size_t> split;
  double tol_gradient = 1e-10;
  double tol_energy = 1e-14;
  std::size_t max_iterations = 1'000'000;
  InitialState initial_state = InitialState::automatic;
  std::optional<std::size_t> threads;
  std::string output;
  std::optional<OutputFormat> format;
  std::string state_binary;

  /// Throws InvalidArgument naming the offending field.
  void validate() const;
  /// The coupling values this run uses: g_rho list, expanded range, or g*rho.
  std::vector<double> coupling_values() const;
  OutputFormat resolved_format() const;
  SolverConfig solver_config() const;
  std::size_t thread_count() const;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

Json to_json(const ExperimentConfig& config);
/// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig experiment_from_json(const Json& j);

/// Parses "0.25", "1e-3" or "2^-12".
double parse_number(std::string_view text);

/// A table with a fixed column order, emitted as CSV (header row first),
/// JSON lines, or a JSON array of objects.
struct Table {
  using Cell = std::variant<double, std::int64_t, std::uint64_t, bool, std::string>;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void write(std::ostream& out, OutputFormat format) const;
};

/// Runs one experiment. Data goes to `data` (or config.output when set),
/// progress to `log`. Invalid configurations throw InvalidArgument;
/// numerical trouble is flagged per row.
void run(const ExperimentConfig& config, std::ostream& data, std::ostream& log);

}  // namespace gpb

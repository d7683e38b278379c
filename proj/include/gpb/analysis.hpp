#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gpb/disorder.hpp"
#include "gpb/energy.hpp"
#include "gpb/solver.hpp"

namespace gpb {

// ---------------------------------------------------------------------------
// Occupation sets and the delocalization bound
// ---------------------------------------------------------------------------

/// Sites where |phi(x)| exceeds epsilon / sqrt(L), with the lower bound on
/// their count once an energy is supplied.
struct OccupationReport {
  double epsilon = 0.0;
  double threshold = 0.0;
  std::size_t occupied_count = 0;
  std::optional<double> bound;
  std::optional<bool> satisfied;
};

OccupationReport occupation_set(const WaveFunction& phi, double epsilon);

/// gN (1 - eps^2)^2 / (2 (energy - v_min)).
double delocalization_bound(double g_n, double epsilon, double energy,
                            double v_min);

/// occupation_set paired with delocalization_bound.
OccupationReport check_delocalization(const WaveFunction& phi, double epsilon,
                                      double g_n, double energy, double v_min);

// ---------------------------------------------------------------------------
// Lake classification
// ---------------------------------------------------------------------------

enum class LakeClass { long_lake, heavy, light };
std::string_view to_string(LakeClass c);

struct LakeRecord {
  std::size_t lake_index = 0;
  Interval interval;
  /// Norm of phi restricted to the lake.
  double m = 0.0;
  /// Neighbour amplitude over m; empty when m == 0.
  std::optional<double> delta_left;
  std::optional<double> delta_right;
  LakeClass lake_class = LakeClass::heavy;
};

struct IntervalClassification {
  std::vector<LakeRecord> lakes;
  double barrier_norm_sq = 0.0;
  /// log_p(g_rho): lakes longer than this are long.
  double long_threshold = 0.0;
};

/// long iff L_i > log_p(g_rho); otherwise heavy iff
/// max(delta_L, delta_R) <= 1/(2 sqrt(L_i)), light otherwise. Lakes with
/// m = 0 count as heavy. A wall neighbour gives delta = 0; a single barrier
/// site between two lakes contributes to both.
IntervalClassification classify_intervals(const WaveFunction& phi,
                                          const LakeDecomposition& decomposition,
                                          double g_rho, double p);

/// m^2 kappa^2 pi^2 / (L+1)^2.
double heavy_kinetic_lower_bound(double m_sq, std::size_t lake_length);

struct NormDecomposition {
  double barrier = 0.0;
  double long_lakes = 0.0;
  double light = 0.0;
  double heavy = 0.0;
  double sum() const { return barrier + long_lakes + light + heavy; }
};

NormDecomposition norm_decomposition(const WaveFunction& phi,
                                     const IntervalClassification& classification);

struct HeavyKineticCheck {
  std::size_t heavy_lakes = 0;
  std::size_t violations = 0;
  /// min over heavy lakes of kinetic / bound (inf when none has m > 0).
  double worst_ratio = 0.0;
};

/// Compares the bond kinetic energy on every heavy lake (all L_i + 1 bonds
/// touching it) with heavy_kinetic_lower_bound.
HeavyKineticCheck check_heavy_kinetic(const WaveFunction& phi,
                                      const IntervalClassification& classification);

// ---------------------------------------------------------------------------
// Subadditivity and studies
// ---------------------------------------------------------------------------

struct SubadditivityCheck {
  double x_0l = 0.0;
  double x_0m = 0.0;
  double x_ml = 0.0;
  bool holds = false;
  bool converged = false;
};

inline constexpr double kSubadditivityTolerance = 1e-9;

/// X_{a,b} = (b - a) * E0(V[a, b), gN = g_rho (b - a)): the minimum over
/// states of norm sqrt(b - a) with quartic coefficient g_rho / 2.
/// holds = x_0m + x_ml >= x_0l - 1e-9.
SubadditivityCheck check_subadditivity(const PotentialRealization& potential,
                                       std::size_t split, double g_rho,
                                       const SolverConfig& config = {});

double unnormalized_minimum(std::span<const double> potential, double g_rho,
                            const SolverConfig& config, bool* converged = nullptr);

struct ConvergenceRow {
  std::size_t length = 0;
  std::vector<std::uint64_t> seeds;
  std::vector<double> energies;
  std::size_t converged = 0;
  double mean = 0.0;
  /// Sample standard deviation (n - 1 denominator).
  double stddev = 0.0;
};

struct ConvergenceStudyConfig {
  double p = 0.5;
  double b = 1.0;
  double g_rho = 0.0;
  std::vector<std::size_t> sizes;
  std::size_t seeds_per_size = 1;
  std::uint64_t first_seed = 0;
  SolverConfig solver;
  std::size_t threads = 1;
};

/// E0^(L) on fixed-length realizations with seeds first_seed + k. A
/// realization of size L is a prefix of the size-2L one with the same seed.
std::vector<ConvergenceRow> convergence_study(const ConvergenceStudyConfig& config);

struct ScalingRow {
  double g_rho = 0.0;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t length = 0;
  double log_p = 0.0;
  double e0 = 0.0;
  bool converged = false;
  double residual = 0.0;
  bool in_regime = false;
  std::string regime_note;
  double cutoff = 0.0;
  double upper = 0.0;
  double upper_sharp = 0.0;
  double lower = 0.0;
  double test_energy = 0.0;
  NormDecomposition fractions;
  HeavyKineticCheck heavy_kinetic;

  double scaled(double value) const { return value * log_p * log_p; }
};

struct ScalingSweepConfig {
  double p = 0.5;
  double b = 1.0;
  std::vector<double> g_rho_values;
  std::size_t n = 1;
  std::size_t seeds = 1;
  std::uint64_t first_seed = 0;
  double norm_target = 1.0;
  SolverConfig solver;
  std::size_t threads = 1;
};

/// One row per (g_rho, seed), g_rho-major. Realizations use the
/// fixed-interval-count model with seed first_seed + k, shared across
/// g_rho values. Out-of-regime bounds are flagged in the row, not thrown.
std::vector<ScalingRow> scaling_sweep(const ScalingSweepConfig& config);

struct ScalingSummary {
  double g_rho = 0.0;
  std::size_t rows = 0;
  double mean_e0_scaled = 0.0;
  double mean_upper_scaled = 0.0;
  double mean_lower_scaled = 0.0;
  NormDecomposition mean_fractions;
};

/// Per-g_rho means over in-regime rows, in first-appearance order.
std::vector<ScalingSummary> summarize(const std::vector<ScalingRow>& rows);

}  // namespace gpb

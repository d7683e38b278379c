#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "gpb/disorder.hpp"
#include "gpb/energy.hpp"

namespace gpb {

/// 1 - 1/sqrt(2): fraction of the Dirichlet wave number a heavy lake keeps.
inline const double kHeavyKappa = 1.0 - 1.0 / std::sqrt(2.0);

/// log_p(y) = ln y / ln p.
double log_base(double y, double p);

/// l* = log_p(g_rho) + log_p(log_p(g_rho)). Requires g_rho, p in (0, 1) and
/// log_p(g_rho) > 1, otherwise throws OutOfRegime.
double cutoff_length(double g_rho, double p);

/// Sum of lengths of lakes strictly longer than `threshold`.
std::size_t mass_above(const LakeDecomposition& decomposition, double threshold);

/// Half-sine of mass m_i^2 = L_i / S on every lake with L_i > l*, zero
/// elsewhere, S the summed length of those lakes.
WaveFunction build_test_function(const LakeDecomposition& decomposition,
                                 double g_rho, double p);

/// 3 gN / (4 S) + pi^2 / (l* + 1)^2 with gN = g_rho * total_length.
double upper_bound_energy(const LakeDecomposition& decomposition, double g_rho,
                          double p);

/// 3 gN / (4 S) + sum_i m_i^2 pi^2 / (L_i + 1)^2 over contributing lakes.
double upper_bound_energy_sharp(const LakeDecomposition& decomposition,
                                double g_rho, double p);

struct MassAllocation {
  /// m_i^2 per lake, in decomposition order.
  std::vector<double> masses;
  double lambda = 0.0;
  /// kappa pi / sqrt(lambda): lakes no longer than this carry no mass.
  double cutoff = 0.0;
  std::size_t bisection_steps = 0;
};

/// Minimizes sum_i [gN m_i^4 / (2 L_i) + m_i^2 kappa^2 pi^2 / L_i^2] subject
/// to sum_i m_i^2 = norm_target, m_i^2 >= 0:
/// m_i^2 = (L_i / gN) (lambda - kappa^2 pi^2 / L_i^2)_+, lambda by bisection.
MassAllocation water_fill(const LakeDecomposition& decomposition, double g_rho,
                          std::size_t total_length, double norm_target);

/// Objective minimized by water_fill, for a given allocation.
double water_fill_objective(const LakeDecomposition& decomposition,
                            double g_n, const std::vector<double>& masses);

/// Leading-order multiplier (kappa pi / l*)^2.
double lambda_asymptotic(double g_rho, double p);

/// norm_target^2 gN / (2 S), S = summed length of lakes with L_i > l*.
double lower_bound_energy(const LakeDecomposition& decomposition, double g_rho,
                          double p, double norm_target);

/// Same bound with L and S replaced by their expectations n/(pq) and
/// expected_mass_above(l*, p, n).
double lower_bound_energy_expected(double g_rho, double p, std::size_t n,
                                   double norm_target);

}  // namespace gpb

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gpb/disorder.hpp"

namespace gpb {

/// Coefficient of the quartic term, gN = g_rho * L. Stored as one number so
/// the functional does not track rho and L separately.
struct Coupling {
  double g_n = 0.0;

  static Coupling from_g_rho(double g_rho, std::size_t lattice_size);
  static Coupling from_g_and_rho(double g, double rho, std::size_t lattice_size);
};

/// Normalized real amplitudes on interior sites 1..L; phi(0) = phi(L+1) = 0
/// are implicit.
class WaveFunction {
 public:
  static constexpr double kNormTolerance = 1e-12;

  /// Takes amplitudes whose Euclidean norm is already 1 within
  /// kNormTolerance; throws InvalidArgument otherwise.
  explicit WaveFunction(std::vector<double> amplitudes);

  /// Rescales a nonzero scratch vector to unit norm.
  static WaveFunction normalize(std::vector<double> scratch);

  std::span<const double> amplitudes() const { return amplitudes_; }
  std::size_t size() const { return amplitudes_.size(); }
  double operator[](std::size_t i) const { return amplitudes_[i]; }
  bool nonnegative() const;

 private:
  std::vector<double> amplitudes_;
};

struct EnergyBreakdown {
  double kinetic = 0.0;
  double potential = 0.0;
  double interaction = 0.0;
  double total = 0.0;
};

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + correction_; }

 private:
  double sum_ = 0.0;
  double correction_ = 0.0;
};

double euclidean_norm(std::span<const double> x);

/// Breakdown of E on an arbitrary (not necessarily normalized) vector:
/// kinetic over all L+1 bonds including the two wall bonds, potential
/// sum V phi^2, interaction (gN/2) sum phi^4.
EnergyBreakdown energy_terms(std::span<const double> phi,
                             std::span<const double> potential, double g_n);

EnergyBreakdown evaluate_energy(const WaveFunction& phi,
                                std::span<const double> potential,
                                Coupling coupling);
EnergyBreakdown evaluate_energy(const WaveFunction& phi,
                                const PotentialRealization& potential,
                                Coupling coupling);

/// Gradient of the ambient functional: 2[(-Lap phi) + V phi + gN phi^3].
std::vector<double> energy_gradient(std::span<const double> phi,
                                    std::span<const double> potential,
                                    Coupling coupling);

/// ||grad - (phi . grad) phi|| for unit phi.
double tangential_gradient_norm(std::span<const double> phi,
                                std::span<const double> gradient);

/// Least interaction energy of mass `norm_sq` on `site_count` sites:
/// (gN/2) norm_sq^2 / site_count.
double interaction_minimum(double norm_sq, std::size_t site_count, double g_n);

/// Kinetic energy of the bonds touching sites [start, start+length): the
/// length+1 bonds from the left neighbour to the right neighbour, with
/// wall neighbours contributing amplitude 0.
double segment_kinetic(std::span<const double> phi, std::size_t start,
                       std::size_t length);

}  // namespace gpb

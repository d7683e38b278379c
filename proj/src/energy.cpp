#include "gpb/energy.hpp"

#include <cmath>
#include <string>

#include "gpb/error.hpp"

namespace gpb {

Coupling Coupling::from_g_rho(double g_rho, std::size_t lattice_size) {
  if (!(g_rho >= 0.0) || !std::isfinite(g_rho)) {
    throw InvalidArgument("g_rho must be nonnegative and finite");
  }
  return {g_rho * static_cast<double>(lattice_size)};
}

Coupling Coupling::from_g_and_rho(double g, double rho,
                                  std::size_t lattice_size) {
  if (!(g >= 0.0) || !(rho > 0.0)) {
    throw InvalidArgument("g must be >= 0 and rho > 0");
  }
  return from_g_rho(g * rho, lattice_size);
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    correction_ += (sum_ - t) + x;
  } else {
    correction_ += (x - t) + sum_;
  }
  sum_ = t;
}

double euclidean_norm(std::span<const double> x) {
  CompensatedSum s;
  for (double v : x) s.add(v * v);
  return std::sqrt(s.value());
}

WaveFunction::WaveFunction(std::vector<double> amplitudes)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw InvalidArgument("wave function is empty");
  const double norm = euclidean_norm(amplitudes_);
  if (!(std::abs(norm - 1.0) <= kNormTolerance)) {
    throw InvalidArgument("wave function is not normalized (norm = " +
                          std::to_string(norm) + ")");
  }
}

WaveFunction WaveFunction::normalize(std::vector<double> scratch) {
  const double norm = euclidean_norm(scratch);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidArgument("cannot normalize a zero or non-finite vector");
  }
  for (double& v : scratch) v /= norm;
  return WaveFunction(std::move(scratch));
}

bool WaveFunction::nonnegative() const {
  for (double v : amplitudes_) {
    if (v < 0.0) return false;
  }
  return true;
}

EnergyBreakdown energy_terms(std::span<const double> phi,
                             std::span<const double> potential, double g_n) {
  if (phi.size() != potential.size()) {
    throw DimensionMismatch("state has " + std::to_string(phi.size()) +
                            " sites, potential has " +
                            std::to_string(potential.size()));
  }
  CompensatedSum kinetic, pot, quartic;
  double previous = 0.0;
  for (std::size_t x = 0; x < phi.size(); ++x) {
    const double d = phi[x] - previous;
    kinetic.add(d * d);
    const double sq = phi[x] * phi[x];
    pot.add(potential[x] * sq);
    quartic.add(sq * sq);
    previous = phi[x];
  }
  kinetic.add(previous * previous);

  EnergyBreakdown out;
  out.kinetic = kinetic.value();
  out.potential = pot.value();
  out.interaction = 0.5 * g_n * quartic.value();
  out.total = out.kinetic + out.potential + out.interaction;
  return out;
}

EnergyBreakdown evaluate_energy(const WaveFunction& phi,
                                std::span<const double> potential,
                                Coupling coupling) {
  return energy_terms(phi.amplitudes(), potential, coupling.g_n);
}

EnergyBreakdown evaluate_energy(const WaveFunction& phi,
                                const PotentialRealization& potential,
                                Coupling coupling) {
  return evaluate_energy(phi, potential.values(), coupling);
}

std::vector<double> energy_gradient(std::span<const double> phi,
                                    std::span<const double> potential,
                                    Coupling coupling) {
  if (phi.size() != potential.size()) {
    throw DimensionMismatch("gradient: state and potential lengths differ");
  }
  const std::size_t n = phi.size();
  std::vector<double> grad(n);
  for (std::size_t x = 0; x < n; ++x) {
    const double left = x > 0 ? phi[x - 1] : 0.0;
    const double right = x + 1 < n ? phi[x + 1] : 0.0;
    const double laplacian = 2.0 * phi[x] - left - right;
    grad[x] = 2.0 * (laplacian + potential[x] * phi[x] +
                     coupling.g_n * phi[x] * phi[x] * phi[x]);
  }
  return grad;
}

double tangential_gradient_norm(std::span<const double> phi,
                                std::span<const double> gradient) {
  CompensatedSum dot;
  for (std::size_t i = 0; i < phi.size(); ++i) dot.add(phi[i] * gradient[i]);
  const double radial = dot.value();
  CompensatedSum s;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double t = gradient[i] - radial * phi[i];
    s.add(t * t);
  }
  return std::sqrt(s.value());
}

double interaction_minimum(double norm_sq, std::size_t site_count, double g_n) {
  if (site_count == 0) throw InvalidArgument("site_count must be positive");
  return 0.5 * g_n * norm_sq * norm_sq / static_cast<double>(site_count);
}

double segment_kinetic(std::span<const double> phi, std::size_t start,
                       std::size_t length) {
  if (length == 0 || start + length > phi.size()) {
    throw InvalidArgument("segment out of range");
  }
  CompensatedSum s;
  double previous = start > 0 ? phi[start - 1] : 0.0;
  for (std::size_t x = start; x < start + length; ++x) {
    const double d = phi[x] - previous;
    s.add(d * d);
    previous = phi[x];
  }
  const double right = start + length < phi.size() ? phi[start + length] : 0.0;
  s.add((right - previous) * (right - previous));
  return s.value();
}

}  // namespace gpb

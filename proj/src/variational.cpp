#include "gpb/variational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gpb/error.hpp"

namespace gpb {

double log_base(double y, double p) { return std::log(y) / std::log(p); }

double cutoff_length(double g_rho, double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("p must lie in (0, 1)");
  if (!(g_rho > 0.0 && g_rho < 1.0)) {
    throw OutOfRegime("g_rho must lie in (0, 1), got " + std::to_string(g_rho));
  }
  const double outer = log_base(g_rho, p);
  if (!(outer > 1.0)) {
    throw OutOfRegime("log_p(g_rho) = " + std::to_string(outer) +
                      " must exceed 1");
  }
  return outer + log_base(outer, p);
}

std::size_t mass_above(const LakeDecomposition& decomposition,
                       double threshold) {
  std::size_t s = 0;
  for (const auto& lake : decomposition.lakes) {
    if (static_cast<double>(lake.length) > threshold) s += lake.length;
  }
  return s;
}

namespace {

std::size_t contributing_mass(const LakeDecomposition& decomposition,
                              double cutoff) {
  const auto s = mass_above(decomposition, cutoff);
  if (s == 0) {
    throw OutOfRegime("no lake longer than the cutoff " +
                      std::to_string(cutoff));
  }
  return s;
}

}  // namespace

WaveFunction build_test_function(const LakeDecomposition& decomposition,
                                 double g_rho, double p) {
  const double cutoff = cutoff_length(g_rho, p);
  const double s = static_cast<double>(contributing_mass(decomposition, cutoff));
  std::vector<double> amplitudes(decomposition.total_length, 0.0);
  for (const auto& lake : decomposition.lakes) {
    const double len = static_cast<double>(lake.length);
    if (len <= cutoff) continue;
    const double m = std::sqrt(len / s);
    const double scale = m * std::sqrt(2.0 / (len + 1.0));
    for (std::size_t x = 1; x <= lake.length; ++x) {
      amplitudes[lake.start + x - 1] =
          scale * std::sin(std::numbers::pi * static_cast<double>(x) / (len + 1.0));
    }
  }
  return WaveFunction::normalize(std::move(amplitudes));
}

double upper_bound_energy(const LakeDecomposition& decomposition, double g_rho,
                          double p) {
  const double cutoff = cutoff_length(g_rho, p);
  const double s = static_cast<double>(contributing_mass(decomposition, cutoff));
  const double g_n = g_rho * static_cast<double>(decomposition.total_length);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return 3.0 * g_n / (4.0 * s) + pi2 / ((cutoff + 1.0) * (cutoff + 1.0));
}

double upper_bound_energy_sharp(const LakeDecomposition& decomposition,
                                double g_rho, double p) {
  const double cutoff = cutoff_length(g_rho, p);
  const double s = static_cast<double>(contributing_mass(decomposition, cutoff));
  const double g_n = g_rho * static_cast<double>(decomposition.total_length);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  CompensatedSum kinetic;
  for (const auto& lake : decomposition.lakes) {
    const double len = static_cast<double>(lake.length);
    if (len <= cutoff) continue;
    kinetic.add(len / s * pi2 / ((len + 1.0) * (len + 1.0)));
  }
  return 3.0 * g_n / (4.0 * s) + kinetic.value();
}

namespace {

double allocated_mass(const std::vector<double>& lengths, double g_n,
                      double lambda) {
  const double k2pi2 = kHeavyKappa * kHeavyKappa * std::numbers::pi *
                       std::numbers::pi;
  CompensatedSum s;
  for (double len : lengths) {
    const double m = len / g_n * (lambda - k2pi2 / (len * len));
    if (m > 0.0) s.add(m);
  }
  return s.value();
}

}  // namespace

MassAllocation water_fill(const LakeDecomposition& decomposition, double g_rho,
                          std::size_t total_length, double norm_target) {
  if (decomposition.lakes.empty()) throw InvalidArgument("no lakes to fill");
  if (!(g_rho > 0.0)) throw InvalidArgument("g_rho must be positive");
  if (!(norm_target > 0.0 && norm_target <= 1.0)) {
    throw InvalidArgument("norm_target must lie in (0, 1]");
  }
  if (total_length == 0) throw InvalidArgument("total_length must be positive");
  const double g_n = g_rho * static_cast<double>(total_length);
  std::vector<double> lengths;
  lengths.reserve(decomposition.lakes.size());
  for (const auto& lake : decomposition.lakes) {
    lengths.push_back(static_cast<double>(lake.length));
  }

  // allocated_mass is continuous, nondecreasing, zero at lambda = 0.
  double lo = 0.0;
  double hi = 1.0;
  std::size_t steps = 0;
  while (allocated_mass(lengths, g_n, hi) < norm_target) {
    lo = hi;
    hi *= 2.0;
    if (++steps > 2000 || !std::isfinite(hi)) {
      throw NumericalFailure("water_fill: cannot bracket lambda (lo = " +
                             std::to_string(lo) + ")");
    }
  }
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    ++steps;
    if (allocated_mass(lengths, g_n, mid) < norm_target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  // Pick the bracket end whose sum is closer to the target.
  const double f_lo = allocated_mass(lengths, g_n, lo);
  const double f_hi = allocated_mass(lengths, g_n, hi);
  const double lambda =
      std::abs(f_lo - norm_target) <= std::abs(f_hi - norm_target) ? lo : hi;
  if (!(lambda > 0.0)) {
    throw NumericalFailure("water_fill: bisection collapsed to lambda = 0");
  }

  MassAllocation out;
  out.lambda = lambda;
  out.cutoff = kHeavyKappa * std::numbers::pi / std::sqrt(lambda);
  out.bisection_steps = steps;
  const double k2pi2 = kHeavyKappa * kHeavyKappa * std::numbers::pi *
                       std::numbers::pi;
  out.masses.reserve(lengths.size());
  for (double len : lengths) {
    out.masses.push_back(std::max(0.0, len / g_n * (lambda - k2pi2 / (len * len))));
  }
  return out;
}

double water_fill_objective(const LakeDecomposition& decomposition, double g_n,
                            const std::vector<double>& masses) {
  if (masses.size() != decomposition.lakes.size()) {
    throw DimensionMismatch("one mass per lake required");
  }
  const double k2pi2 = kHeavyKappa * kHeavyKappa * std::numbers::pi *
                       std::numbers::pi;
  CompensatedSum s;
  for (std::size_t i = 0; i < masses.size(); ++i) {
    const double len = static_cast<double>(decomposition.lakes[i].length);
    s.add(g_n * masses[i] * masses[i] / (2.0 * len) +
          masses[i] * k2pi2 / (len * len));
  }
  return s.value();
}

double lambda_asymptotic(double g_rho, double p) {
  const double cutoff = cutoff_length(g_rho, p);
  const double root = kHeavyKappa * std::numbers::pi / cutoff;
  return root * root;
}

double lower_bound_energy(const LakeDecomposition& decomposition, double g_rho,
                          double p, double norm_target) {
  if (!(norm_target >= 0.0 && norm_target <= 1.0)) {
    throw InvalidArgument("norm_target must lie in [0, 1]");
  }
  const double cutoff = cutoff_length(g_rho, p);
  const auto s = mass_above(decomposition, cutoff);
  if (s == 0) throw OutOfRegime("no heavy-eligible sites beyond the cutoff");
  const double g_n = g_rho * static_cast<double>(decomposition.total_length);
  return norm_target * norm_target * g_n / (2.0 * static_cast<double>(s));
}

double lower_bound_energy_expected(double g_rho, double p, std::size_t n,
                                   double norm_target) {
  const double cutoff = cutoff_length(g_rho, p);
  const double q = 1.0 - p;
  const double length = static_cast<double>(n) / (p * q);
  const double s = expected_mass_above(cutoff, p, n);
  return norm_target * norm_target * g_rho * length / (2.0 * s);
}

}  // namespace gpb

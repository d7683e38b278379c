#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "gpb/energy.hpp"

namespace testing_helpers {

inline std::vector<double> random_state(std::mt19937_64& rng, std::size_t n,
                                        bool nonnegative = true) {
  std::normal_distribution<double> normal;
  std::vector<double> v(n);
  for (auto& x : v) x = nonnegative ? std::abs(normal(rng)) : normal(rng);
  return v;
}

inline std::vector<double> random_bernoulli(std::mt19937_64& rng, std::size_t n,
                                            double p, double b) {
  std::bernoulli_distribution lake(p);
  std::vector<double> v(n);
  for (auto& x : v) x = lake(rng) ? 0.0 : b;
  return v;
}

inline std::vector<double> half_sine(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t x = 1; x <= n; ++x) {
    v[x - 1] = std::sin(M_PI * static_cast<double>(x) / static_cast<double>(n + 1));
  }
  return v;
}

inline double dirichlet_ground(std::size_t n) {
  const double s = std::sin(M_PI / (2.0 * static_cast<double>(n + 1)));
  return 4.0 * s * s;
}

}  // namespace testing_helpers

#include <cmath>
#include <numbers>
#include <random>
#include <algorithm>

#include "doctest.h"
#include "gpb/disorder.hpp"
#include "gpb/error.hpp"
#include "gpb/solver.hpp"
#include "gpb/variational.hpp"

using namespace gpb;

namespace {

LakeDecomposition lakes_of(std::vector<std::size_t> lengths) {
  // Lakes separated by single barrier sites.
  LakeDecomposition d;
  std::size_t cursor = 0;
  for (auto l : lengths) {
    d.lakes.push_back({cursor, l});
    cursor += l;
    d.barriers.push_back({cursor, 1});
    cursor += 1;
  }
  d.total_length = cursor;
  return d;
}

double lake_mass(const WaveFunction& phi, const Interval& lake) {
  double s = 0.0;
  for (std::size_t x = lake.start; x < lake.start + lake.length; ++x) s += phi[x] * phi[x];
  return s;
}

const double k2pi2 = kHeavyKappa * kHeavyKappa * std::numbers::pi * std::numbers::pi;

}  // namespace

TEST_CASE("cutoff length") {
  // Frozen from tests/oracles/oracle_values.py (mpmath, 40 digits).
  CHECK(cutoff_length(std::pow(2.0, -20), 0.5) ==
        doctest::Approx(15.678071905112638).epsilon(1e-14));
  CHECK(log_base(std::pow(2.0, -20), 0.5) == doctest::Approx(20.0).epsilon(1e-15));
  CHECK(cutoff_length(1e-6, 0.3) == doctest::Approx(9.4481747108227278).epsilon(1e-14));
  CHECK_THROWS_AS(cutoff_length(0.5, 0.5), OutOfRegime);
  CHECK_THROWS_AS(cutoff_length(0.7, 0.5), OutOfRegime);
  CHECK_THROWS_AS(cutoff_length(1.5, 0.5), OutOfRegime);
  CHECK_THROWS_AS(cutoff_length(0.01, 1.0), InvalidArgument);
}

TEST_CASE("test function: symmetric lakes share the mass") {
  const auto d = lakes_of({8, 8});
  const auto phi = build_test_function(d, std::pow(2.0, -10), 0.5);  // cutoff ~6.68
  CHECK(lake_mass(phi, d.lakes[0]) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(lake_mass(phi, d.lakes[1]) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(phi.nonnegative());
}

TEST_CASE("test function: proportional allocation above the cutoff") {
  const auto d = lakes_of({20, 10, 2});
  const auto phi = build_test_function(d, std::pow(2.0, -12), 0.5);  // cutoff ~8.42
  CHECK(lake_mass(phi, d.lakes[0]) == doctest::Approx(20.0 / 30.0).epsilon(1e-14));
  CHECK(lake_mass(phi, d.lakes[1]) == doctest::Approx(10.0 / 30.0).epsilon(1e-14));
  CHECK(lake_mass(phi, d.lakes[2]) == 0.0);
  CHECK_THROWS_AS(build_test_function(lakes_of({2, 3}), std::pow(2.0, -12), 0.5), OutOfRegime);
}

TEST_CASE("single long lake: kinetic part of the bound") {
  const auto d = lakes_of({100});
  const double g_rho = 1e-12;
  const double cutoff = cutoff_length(g_rho, 0.5);
  const double upper = upper_bound_energy(d, g_rho, 0.5);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  CHECK(upper == doctest::Approx(pi2 / ((cutoff + 1) * (cutoff + 1))).epsilon(1e-9));
  CHECK(upper >= pi2 / (101.0 * 101.0));
  CHECK(upper_bound_energy_sharp(d, g_rho, 0.5) ==
        doctest::Approx(pi2 / (101.0 * 101.0)).epsilon(1e-9));
}

TEST_CASE("evaluated test function never exceeds either upper bound") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const double g_rho = std::pow(2.0, -6.0 - static_cast<double>(seed % 7));
    const auto v = sample_fixed_interval_count(2000, 0.5, 1.0, seed);
    const auto d = decompose_lakes(v);
    const auto phi = build_test_function(d, g_rho, 0.5);
    const double e = evaluate_energy(phi, v, Coupling::from_g_rho(g_rho, v.size())).total;
    const double sharp = upper_bound_energy_sharp(d, g_rho, 0.5);
    CHECK(e <= sharp * (1 + 1e-12));
    CHECK(sharp <= upper_bound_energy(d, g_rho, 0.5) * (1 + 1e-12));
  }
}

TEST_CASE("upper bound approaches its asymptotic constant from above") {
  // The scaled kinetic part pi^2 log^2 / (cutoff + 1)^2 decreases toward pi^2
  // only logarithmically; the bound stays above pi^2 at every finite g_rho.
  const auto d = decompose_lakes(sample_fixed_interval_count(1000000, 0.5, 1.0, 3));
  const double pi2 = std::numbers::pi * std::numbers::pi;
  double previous = INFINITY;
  for (int k : {12, 16, 20, 24}) {
    const double g_rho = std::pow(2.0, -k);
    const double lp = log_base(g_rho, 0.5);
    const double cutoff = cutoff_length(g_rho, 0.5);
    const double kinetic = pi2 * lp * lp / ((cutoff + 1) * (cutoff + 1));
    CHECK(kinetic > pi2);
    CHECK(kinetic < previous);
    previous = kinetic;
    CHECK(upper_bound_energy(d, g_rho, 0.5) * lp * lp > kinetic);
  }
}

TEST_CASE("water filling: single lake closed form") {
  for (std::size_t len : {1u, 5u, 40u}) {
    const auto d = lakes_of({len});
    const double g_rho = 0.01;
    const auto alloc = water_fill(d, g_rho, d.total_length, 1.0);
    const double l = static_cast<double>(len);
    const double g_n = g_rho * static_cast<double>(d.total_length);
    CHECK(alloc.lambda == doctest::Approx(g_n / l + k2pi2 / (l * l)).epsilon(1e-13));
    CHECK(alloc.masses[0] == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("water filling: stationarity, threshold and total mass") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto v = sample_fixed_interval_count(3000, 0.5, 1.0, seed);
    const auto d = decompose_lakes(v);
    const double g_rho = std::pow(2.0, -10.0 - static_cast<double>(seed % 8));
    const double target = seed % 2 ? 1.0 : 0.8;
    const auto alloc = water_fill(d, g_rho, v.size(), target);
    const double g_n = g_rho * static_cast<double>(v.size());
    double total = 0.0;
    for (std::size_t i = 0; i < d.lakes.size(); ++i) {
      const double l = static_cast<double>(d.lakes[i].length);
      const double m = alloc.masses[i];
      CHECK(m >= 0.0);
      total += m;
      CHECK((m > 0.0) == (l > alloc.cutoff));
      if (m > 0.0) {
        const double lhs = 2.0 * g_n * m / l + 2.0 * k2pi2 / (l * l);
        CHECK(std::abs(lhs - 2.0 * alloc.lambda) <= 1e-10 * alloc.lambda);
      }
    }
    CHECK(std::abs(total - target) < 1e-10);
  }
}

TEST_CASE("water filling minimises its objective") {
  const auto v = sample_fixed_interval_count(500, 0.5, 1.0, 4);
  const auto d = decompose_lakes(v);
  const double g_rho = std::pow(2.0, -12);
  const double g_n = g_rho * static_cast<double>(v.size());
  const auto alloc = water_fill(d, g_rho, v.size(), 1.0);
  const double best = water_fill_objective(d, g_n, alloc.masses);
  // Move mass between random pairs of lakes; the objective never improves.
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, d.lakes.size() - 1);
  for (int trial = 0; trial < 500; ++trial) {
    auto masses = alloc.masses;
    const auto i = pick(rng), j = pick(rng);
    const double delta = std::min(masses[i], 1e-3);
    masses[i] -= delta;
    masses[j] += delta;
    CHECK(water_fill_objective(d, g_n, masses) >= best - 1e-15);
  }
}

TEST_CASE("asymptotic lambda") {
  // Frozen from tests/oracles/oracle_values.py.
  CHECK(kHeavyKappa * std::numbers::pi == doctest::Approx(0.92015118451061011).epsilon(1e-15));
  CHECK(lambda_asymptotic(std::pow(2.0, -20), 0.5) ==
        doctest::Approx(0.0034445546156612867).epsilon(1e-13));
  double previous = INFINITY;
  for (int k = 3; k <= 60; ++k) {
    const double lambda = lambda_asymptotic(std::pow(2.0, -k), 0.5);
    CHECK(lambda < previous);
    previous = lambda;
  }
}

TEST_CASE("bisected and asymptotic lambda agree within a factor of two") {
  const auto v = sample_fixed_interval_count(10000, 0.5, 1.0, 6);
  const auto d = decompose_lakes(v);
  for (int k : {16, 18, 20, 24}) {
    const double g_rho = std::pow(2.0, -k);
    const double ratio = water_fill(d, g_rho, v.size(), 1.0).lambda / lambda_asymptotic(g_rho, 0.5);
    CHECK(ratio > 0.5);
    CHECK(ratio < 2.0);
  }
}

TEST_CASE("lower bound") {
  const auto d = decompose_lakes(sample_fixed_interval_count(100000, 0.5, 1.0, 7));
  const double g_rho = std::pow(2.0, -20);
  CHECK(lower_bound_energy(d, g_rho, 0.5, 0.0) == 0.0);
  // Expected-value form: gN / (2 S) with L = n/(pq) = 4n and
  // S = n p^k (k + 1/q), k = floor(cutoff) = 15, which is 1/272.
  CHECK(lower_bound_energy_expected(g_rho, 0.5, 100000, 1.0) ==
        doctest::Approx(1.0 / 272.0).epsilon(1e-13));
  const double realized = lower_bound_energy(d, g_rho, 0.5, 1.0);
  CHECK(realized == doctest::Approx(1.0 / 272.0).epsilon(0.15));
}

TEST_CASE("both bounds scale like 1/log^2 over four binary decades") {
  const auto v = sample_fixed_interval_count(1000000, 0.5, 1.0, 8);
  const auto d = decompose_lakes(v);
  std::vector<double> upper, lower;
  for (int k = 10; k <= 20; k += 2) {
    const double g_rho = std::pow(2.0, -k);
    const double l2 = static_cast<double>(k * k);
    upper.push_back(upper_bound_energy(d, g_rho, 0.5) * l2);
    lower.push_back(lower_bound_energy(d, g_rho, 0.5, 1.0) * l2);
  }
  auto spread = [](const std::vector<double>& x) {
    return *std::max_element(x.begin(), x.end()) / *std::min_element(x.begin(), x.end());
  };
  CHECK(spread(upper) < 3.0);
  CHECK(spread(lower) < 3.0);
}

TEST_CASE("sandwich on a few regime realizations") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const double g_rho = std::pow(2.0, seed % 2 ? -12.0 : -14.0);
    const auto v = sample_fixed_interval_count(seed % 2 ? 5000 : 10000, 0.5, 1.0, seed);
    const auto d = decompose_lakes(v);
    const auto r = ground_state(v, Coupling::from_g_rho(g_rho, v.size()));
    CHECK(r.converged);
    CHECK(lower_bound_energy(d, g_rho, 0.5, 1.0) <= r.energy.total);
    const auto phi = build_test_function(d, g_rho, 0.5);
    CHECK(r.energy.total <=
          evaluate_energy(phi, v, Coupling::from_g_rho(g_rho, v.size())).total);
    CHECK(r.energy.total <= 1.05 * upper_bound_energy(d, g_rho, 0.5));
  }
}

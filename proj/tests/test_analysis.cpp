#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gpb/analysis.hpp"
#include "gpb/disorder.hpp"
#include "gpb/error.hpp"
#include "gpb/variational.hpp"
#include "helpers.hpp"

using namespace gpb;
using namespace testing_helpers;

TEST_CASE("occupation set examples") {
  const std::size_t n = 100;
  CHECK(occupation_set(WaveFunction::normalize(std::vector<double>(n, 1.0)), 0.5)
            .occupied_count == n);
  std::vector<double> spike(n, 0.0);
  spike[37] = 1.0;
  CHECK(occupation_set(WaveFunction(spike), 0.5).occupied_count == 1);
  // Direct enumeration (tests/oracles/oracle_values.py): 77 sites of the
  // normalized half-sine on 99 sites exceed 0.5/sqrt(99).
  const auto report = occupation_set(WaveFunction::normalize(half_sine(99)), 0.5);
  CHECK(report.occupied_count == 77);
  CHECK(report.threshold == doctest::Approx(0.5 / std::sqrt(99.0)));
  CHECK_THROWS_AS(occupation_set(WaveFunction(spike), 1.0), InvalidArgument);
}

TEST_CASE("delocalization bound") {
  CHECK(delocalization_bound(1.0, std::sqrt(0.5), 1.0, 0.0) == doctest::Approx(0.125));
  CHECK(delocalization_bound(1.0, 1.0 - 1e-9, 1.0, 0.0) < 1e-17);
  CHECK(delocalization_bound(2.0, 0.5, 3.0, 1.0) ==
        doctest::Approx(2.0 * 0.75 * 0.75 / 4.0));
  CHECK_THROWS_AS(delocalization_bound(1.0, 0.5, 1.0, 1.0), InvalidArgument);
}

TEST_CASE("delocalization holds on ground states, test functions and random states") {
  std::mt19937_64 rng(31);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 100 + 50 * seed;
    const double g_rho = std::pow(2.0, -2.0 - static_cast<double>(seed % 20));
    const auto v = sample_fixed_length(n, 0.5, 1.0 + 9.0 * (seed % 2), seed);
    const auto c = Coupling::from_g_rho(g_rho, n);
    std::vector<WaveFunction> states;
    states.push_back(ground_state(v, c).state);
    states.push_back(WaveFunction::normalize(random_state(rng, n)));
    for (const auto& phi : states) {
      const double e = evaluate_energy(phi, v, c).total;
      for (double eps : {0.1, 0.5, 0.9}) {
        CHECK(*check_delocalization(phi, eps, c.g_n, e, 0.0).satisfied);
      }
      // Shifted potential: V + v_min with v_min > 0.
      const double v_min = 0.75;
      const auto shifted = v.shifted(v_min);
      const double e_shift = evaluate_energy(phi, shifted, c).total;
      for (double eps : {0.1, 0.5, 0.9}) {
        CHECK(*check_delocalization(phi, eps, c.g_n, e_shift, v_min).satisfied);
      }
    }
  }
}

TEST_CASE("heavy kinetic lower bound") {
  // kappa^2 pi^2 / 4, frozen from tests/oracles/oracle_values.py.
  CHECK(heavy_kinetic_lower_bound(1.0, 1) == doctest::Approx(0.21166955058906971).epsilon(1e-14));
  CHECK(heavy_kinetic_lower_bound(0.0, 7) == 0.0);
  CHECK_THROWS_AS(heavy_kinetic_lower_bound(1.0, 0), InvalidArgument);
}

namespace {

// Lake of length 4 at sites 1..4 flanked by barrier sites 0 and 5, padded
// with a long barrier; boundary amplitudes set the ratios directly.
WaveFunction bordered_lake(double delta_left, double delta_right) {
  std::vector<double> a(10, 0.0);
  for (std::size_t x = 1; x <= 4; ++x) a[x] = 0.5;  // m = 1 before scaling
  a[0] = delta_left;
  a[5] = delta_right;
  return WaveFunction::normalize(a);
}

LakeDecomposition bordered_decomposition() {
  LakeDecomposition d;
  d.lakes = {{1, 4}};
  d.barriers = {{0, 1}, {5, 5}};
  d.total_length = 10;
  return d;
}

}  // namespace

TEST_CASE("heavy and light classification") {
  const double g_rho = std::pow(2.0, -10);  // long threshold 10 > 4
  const auto d = bordered_decomposition();
  auto c = classify_intervals(bordered_lake(0.1, 0.1), d, g_rho, 0.5);
  REQUIRE(c.lakes.size() == 1);
  CHECK(*c.lakes[0].delta_left == doctest::Approx(0.1));
  CHECK(c.lakes[0].lake_class == LakeClass::heavy);
  c = classify_intervals(bordered_lake(0.3, 0.1), d, g_rho, 0.5);
  CHECK(c.lakes[0].lake_class == LakeClass::light);
  c = classify_intervals(bordered_lake(0.1, 0.3), d, g_rho, 0.5);
  CHECK(c.lakes[0].lake_class == LakeClass::light);
  // The same lake is long once the threshold drops below 4.
  c = classify_intervals(bordered_lake(0.3, 0.3), d, 0.1, 0.5);
  CHECK(c.lakes[0].lake_class == LakeClass::long_lake);
}

TEST_CASE("zero-mass lakes are heavy with undefined ratios") {
  std::vector<double> a(10, 0.0);
  a[7] = 1.0;
  const auto c = classify_intervals(WaveFunction(a), bordered_decomposition(),
                                    std::pow(2.0, -10), 0.5);
  CHECK(c.lakes[0].m == 0.0);
  CHECK_FALSE(c.lakes[0].delta_left.has_value());
  CHECK(c.lakes[0].lake_class == LakeClass::heavy);
  CHECK(c.barrier_norm_sq == doctest::Approx(1.0));
}

TEST_CASE("wall-side ratios are zero") {
  const PotentialRealization v({0, 0, 0, 1, 0, 0}, 1.0, 0.5, 0, SamplingMode::fixed_length);
  const auto d = decompose_lakes(v);
  const auto phi = WaveFunction::normalize({1, 1, 1, 1, 1, 1});
  const auto c = classify_intervals(phi, d, std::pow(2.0, -10), 0.5);
  CHECK(*c.lakes[0].delta_left == 0.0);
  CHECK(*c.lakes[1].delta_right == 0.0);
  // The single shared barrier site feeds both neighbours.
  CHECK(*c.lakes[0].delta_right == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(*c.lakes[1].delta_left == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("classification ignores a global sign flip") {
  const auto v = sample_fixed_length(400, 0.5, 1.0, 12);
  const auto d = decompose_lakes(v);
  std::mt19937_64 rng(12);
  auto raw = random_state(rng, 400);
  auto flipped = raw;
  for (auto& x : flipped) x = -x;
  const auto a = classify_intervals(WaveFunction::normalize(raw), d, 1e-4, 0.5);
  const auto b = classify_intervals(WaveFunction::normalize(flipped), d, 1e-4, 0.5);
  for (std::size_t i = 0; i < a.lakes.size(); ++i) {
    CHECK(a.lakes[i].lake_class == b.lakes[i].lake_class);
  }
}

TEST_CASE("norm decomposition is a partition of unity") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 5 + trial;
    const auto v = sample_fixed_length(n, 0.6, 1.0, trial);
    const auto phi = WaveFunction::normalize(random_state(rng, n, trial % 2));
    const auto c = classify_intervals(phi, decompose_lakes(v), 1e-3, 0.6);
    const auto f = norm_decomposition(phi, c);
    CHECK(std::abs(f.sum() - 1.0) < 1e-10);
    double lake_mass = 0.0;
    for (const auto& rec : c.lakes) lake_mass += rec.m * rec.m;
    CHECK(std::abs(lake_mass + c.barrier_norm_sq - 1.0) < 1e-10);
  }
}

TEST_CASE("a state on one long lake is all long") {
  std::vector<double> v(40, 1.0);
  for (std::size_t x = 5; x < 35; ++x) v[x] = 0.0;
  const PotentialRealization pot(v, 1.0, 0.5, 0, SamplingMode::fixed_length);
  std::vector<double> a(40, 0.0);
  for (std::size_t x = 5; x < 35; ++x) a[x] = std::sin(M_PI * (x - 4) / 31.0);
  const auto phi = WaveFunction::normalize(a);
  const auto f = norm_decomposition(phi, classify_intervals(phi, decompose_lakes(pot), 1e-3, 0.5));
  CHECK(f.barrier == 0.0);
  CHECK(f.long_lakes == doctest::Approx(1.0));
  CHECK(f.light == 0.0);
  CHECK(f.heavy == 0.0);
}

TEST_CASE("heavy lakes of ground states satisfy the kinetic bound") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const double g_rho = std::pow(2.0, -12.0 - static_cast<double>(seed % 3) * 4.0);
    const auto v = sample_fixed_interval_count(3000, 0.5, 1.0, seed);
    const auto phi = ground_state(v, Coupling::from_g_rho(g_rho, v.size())).state;
    const auto check =
        check_heavy_kinetic(phi, classify_intervals(phi, decompose_lakes(v), g_rho, 0.5));
    CHECK(check.violations == 0);
  }
}

TEST_CASE("subadditivity") {
  std::mt19937_64 rng(14);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const std::size_t n = 20 + 10 * seed;
    const auto v = sample_fixed_length(n, 0.5, 1.0, seed);
    const auto split = 1 + rng() % (n - 1);
    const auto s = check_subadditivity(v, split, 0.01 * static_cast<double>(seed % 4));
    CHECK(s.converged);
    CHECK(s.holds);
  }
  CHECK_THROWS_AS(check_subadditivity(sample_fixed_length(5, 0.5, 1.0, 0), 0, 0.1),
                  InvalidArgument);
  CHECK_THROWS_AS(check_subadditivity(sample_fixed_length(5, 0.5, 1.0, 0), 5, 0.1),
                  InvalidArgument);
}

TEST_CASE("subadditivity on a free box") {
  const std::size_t n = 40;
  const PotentialRealization v(std::vector<double>(n, 0.0), 1.0, 1.0, 0,
                               SamplingMode::fixed_length);
  const auto whole = check_subadditivity(v, 20, 0.0);
  CHECK(whole.x_0l == doctest::Approx(n * dirichlet_ground(n)).epsilon(1e-10));
  CHECK(whole.x_0m + whole.x_ml > whole.x_0l);
  const auto edge = check_subadditivity(v, 1, 0.0);
  CHECK(edge.x_0m == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("one-site segment carries the one-site minimum") {
  const auto v = sample_fixed_length(30, 0.5, 2.0, 3);
  const double g_rho = 0.2;
  const auto s = check_subadditivity(v, 1, g_rho);
  CHECK(s.x_0m == doctest::Approx(2.0 + v[0] + g_rho / 2.0).epsilon(1e-14));
}

TEST_CASE("convergence study without disorder") {
  ConvergenceStudyConfig config;
  config.p = 1.0;
  config.g_rho = 0.0;
  config.sizes = {8, 16, 32, 64};
  config.seeds_per_size = 3;
  const auto rows = convergence_study(config);
  REQUIRE(rows.size() == 4);
  for (const auto& row : rows) {
    CHECK(row.mean == doctest::Approx(dirichlet_ground(row.length)).epsilon(1e-10));
    CHECK(row.stddev < 1e-12);
    CHECK(row.converged == 3);
  }
}

TEST_CASE("scaling sweep rows") {
  ScalingSweepConfig config;
  config.g_rho_values = {std::pow(2.0, -12), 0.6};
  config.n = 1000;
  config.seeds = 3;
  config.threads = 2;
  const auto rows = scaling_sweep(config);
  REQUIRE(rows.size() == 6);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(rows[i].in_regime);
    CHECK(rows[i].converged);
    CHECK(rows[i].scaled(rows[i].e0) > 0.0);
    CHECK(rows[i].lower <= rows[i].e0);
    CHECK(rows[i].e0 <= rows[i].test_energy);
    CHECK(std::abs(rows[i].fractions.sum() - 1.0) < 1e-10);
  }
  for (std::size_t i = 3; i < 6; ++i) {
    CHECK_FALSE(rows[i].in_regime);
    CHECK_FALSE(rows[i].regime_note.empty());
    CHECK(rows[i].e0 > 0.0);
  }
  // Realizations are shared across couplings.
  CHECK(rows[0].length == rows[3].length);
  const auto summary = summarize(rows);
  REQUIRE(summary.size() == 2);
  CHECK(summary[0].rows == 3);
}

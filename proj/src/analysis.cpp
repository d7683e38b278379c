#include "gpb/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gpb/error.hpp"
#include "gpb/parallel.hpp"
#include "gpb/variational.hpp"

namespace gpb {

OccupationReport occupation_set(const WaveFunction& phi, double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidArgument("epsilon must lie in (0, 1)");
  }
  OccupationReport out;
  out.epsilon = epsilon;
  out.threshold = epsilon / std::sqrt(static_cast<double>(phi.size()));
  out.occupied_count = static_cast<std::size_t>(
      std::count_if(phi.amplitudes().begin(), phi.amplitudes().end(),
                    [&](double a) { return std::abs(a) > out.threshold; }));
  return out;
}

double delocalization_bound(double g_n, double epsilon, double energy,
                            double v_min) {
  if (!(energy > v_min)) {
    throw InvalidArgument("energy must exceed v_min");
  }
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw InvalidArgument("epsilon must lie in (0, 1)");
  }
  const double s = 1.0 - epsilon * epsilon;
  return g_n * s * s / (2.0 * (energy - v_min));
}

OccupationReport check_delocalization(const WaveFunction& phi, double epsilon,
                                      double g_n, double energy, double v_min) {
  auto report = occupation_set(phi, epsilon);
  report.bound = delocalization_bound(g_n, epsilon, energy, v_min);
  report.satisfied = static_cast<double>(report.occupied_count) >= *report.bound;
  return report;
}

std::string_view to_string(LakeClass c) {
  switch (c) {
    case LakeClass::long_lake:
      return "long";
    case LakeClass::heavy:
      return "heavy";
    case LakeClass::light:
      return "light";
  }
  return "unknown";
}

IntervalClassification classify_intervals(const WaveFunction& phi,
                                          const LakeDecomposition& decomposition,
                                          double g_rho, double p) {
  if (phi.size() != decomposition.total_length) {
    throw DimensionMismatch("state and decomposition lengths differ");
  }
  if (!(g_rho > 0.0 && g_rho < 1.0) || !(p > 0.0 && p < 1.0)) {
    throw InvalidArgument("classification needs g_rho and p in (0, 1)");
  }
  const auto a = phi.amplitudes();
  IntervalClassification out;
  out.long_threshold = log_base(g_rho, p);

  CompensatedSum barrier;
  for (const auto& interval : decomposition.barriers) {
    for (std::size_t x = interval.start; x < interval.start + interval.length; ++x) {
      barrier.add(a[x] * a[x]);
    }
  }
  out.barrier_norm_sq = barrier.value();

  out.lakes.reserve(decomposition.lakes.size());
  for (std::size_t i = 0; i < decomposition.lakes.size(); ++i) {
    const auto& lake = decomposition.lakes[i];
    LakeRecord rec;
    rec.lake_index = i;
    rec.interval = lake;
    CompensatedSum mass;
    for (std::size_t x = lake.start; x < lake.start + lake.length; ++x) {
      mass.add(a[x] * a[x]);
    }
    rec.m = std::sqrt(mass.value());
    const double len = static_cast<double>(lake.length);
    if (rec.m > 0.0) {
      const double left = lake.start > 0 ? std::abs(a[lake.start - 1]) : 0.0;
      const std::size_t end = lake.start + lake.length;
      const double right = end < a.size() ? std::abs(a[end]) : 0.0;
      rec.delta_left = left / rec.m;
      rec.delta_right = right / rec.m;
    }
    if (len > out.long_threshold) {
      rec.lake_class = LakeClass::long_lake;
    } else if (!rec.delta_left) {
      rec.lake_class = LakeClass::heavy;
    } else {
      const double worst = std::max(*rec.delta_left, *rec.delta_right);
      rec.lake_class = worst <= 1.0 / (2.0 * std::sqrt(len)) ? LakeClass::heavy
                                                             : LakeClass::light;
    }
    out.lakes.push_back(rec);
  }
  return out;
}

double heavy_kinetic_lower_bound(double m_sq, std::size_t lake_length) {
  if (lake_length == 0) throw InvalidArgument("lake_length must be >= 1");
  if (!(m_sq >= 0.0)) throw InvalidArgument("m_sq must be >= 0");
  const double l1 = static_cast<double>(lake_length) + 1.0;
  return m_sq * kHeavyKappa * kHeavyKappa * std::numbers::pi *
         std::numbers::pi / (l1 * l1);
}

NormDecomposition norm_decomposition(
    const WaveFunction& phi, const IntervalClassification& classification) {
  const auto a = phi.amplitudes();
  CompensatedSum barrier, longs, light, heavy;
  std::size_t cursor = 0;
  for (const auto& rec : classification.lakes) {
    const auto& lake = rec.interval;
    if (lake.start + lake.length > a.size() || lake.start < cursor) {
      throw DimensionMismatch("classification does not match the state");
    }
    for (; cursor < lake.start; ++cursor) barrier.add(a[cursor] * a[cursor]);
    CompensatedSum m2;
    for (; cursor < lake.start + lake.length; ++cursor) m2.add(a[cursor] * a[cursor]);
    switch (rec.lake_class) {
      case LakeClass::long_lake:
        longs.add(m2.value());
        break;
      case LakeClass::light:
        light.add(m2.value());
        break;
      case LakeClass::heavy:
        heavy.add(m2.value());
        break;
    }
  }
  for (; cursor < a.size(); ++cursor) barrier.add(a[cursor] * a[cursor]);
  return {barrier.value(), longs.value(), light.value(), heavy.value()};
}

HeavyKineticCheck check_heavy_kinetic(
    const WaveFunction& phi, const IntervalClassification& classification) {
  HeavyKineticCheck out;
  out.worst_ratio = std::numeric_limits<double>::infinity();
  for (const auto& rec : classification.lakes) {
    if (rec.lake_class != LakeClass::heavy) continue;
    ++out.heavy_lakes;
    const double bound = heavy_kinetic_lower_bound(rec.m * rec.m, rec.interval.length);
    const double kinetic =
        segment_kinetic(phi.amplitudes(), rec.interval.start, rec.interval.length);
    if (kinetic < bound) ++out.violations;
    if (bound > 0.0) out.worst_ratio = std::min(out.worst_ratio, kinetic / bound);
  }
  return out;
}

double unnormalized_minimum(std::span<const double> potential, double g_rho,
                            const SolverConfig& config, bool* converged) {
  const auto result =
      ground_state(potential, Coupling::from_g_rho(g_rho, potential.size()), config);
  if (converged) *converged = result.converged;
  return static_cast<double>(potential.size()) * result.energy.total;
}

SubadditivityCheck check_subadditivity(const PotentialRealization& potential,
                                       std::size_t split, double g_rho,
                                       const SolverConfig& config) {
  const std::size_t n = potential.size();
  if (split < 1 || split >= n) {
    throw InvalidArgument("split must satisfy 1 <= split < L");
  }
  const auto v = potential.values();
  SubadditivityCheck out;
  bool c0 = false, c1 = false, c2 = false;
  out.x_0l = unnormalized_minimum(v, g_rho, config, &c0);
  out.x_0m = unnormalized_minimum(v.first(split), g_rho, config, &c1);
  out.x_ml = unnormalized_minimum(v.subspan(split), g_rho, config, &c2);
  out.converged = c0 && c1 && c2;
  out.holds = out.x_0m + out.x_ml >= out.x_0l - kSubadditivityTolerance;
  return out;
}

std::vector<ConvergenceRow> convergence_study(const ConvergenceStudyConfig& config) {
  if (config.seeds_per_size == 0) throw InvalidArgument("need >= 1 seed");
  for (std::size_t i = 1; i < config.sizes.size(); ++i) {
    if (config.sizes[i] <= config.sizes[i - 1]) {
      throw InvalidArgument("sizes must be strictly increasing");
    }
  }
  struct Task {
    std::size_t size_index;
    std::uint64_t seed;
  };
  std::vector<Task> tasks;
  for (std::size_t i = 0; i < config.sizes.size(); ++i) {
    for (std::size_t k = 0; k < config.seeds_per_size; ++k) {
      tasks.push_back({i, config.first_seed + k});
    }
  }
  struct Outcome {
    double energy;
    bool converged;
  };
  const auto outcomes = parallel_map(tasks.size(), config.threads, [&](std::size_t t) {
    const auto& task = tasks[t];
    const std::size_t length = config.sizes[task.size_index];
    const auto potential = sample_fixed_length(length, config.p, config.b, task.seed);
    const auto result = ground_state(
        potential, Coupling::from_g_rho(config.g_rho, length), config.solver);
    return Outcome{result.energy.total, result.converged};
  });

  std::vector<ConvergenceRow> rows;
  for (std::size_t i = 0; i < config.sizes.size(); ++i) {
    ConvergenceRow row;
    row.length = config.sizes[i];
    CompensatedSum sum;
    for (std::size_t t = 0; t < tasks.size(); ++t) {
      if (tasks[t].size_index != i) continue;
      row.seeds.push_back(tasks[t].seed);
      row.energies.push_back(outcomes[t].energy);
      if (outcomes[t].converged) ++row.converged;
      sum.add(outcomes[t].energy);
    }
    const double count = static_cast<double>(row.energies.size());
    row.mean = sum.value() / count;
    CompensatedSum sq;
    for (double e : row.energies) sq.add((e - row.mean) * (e - row.mean));
    row.stddev = count > 1 ? std::sqrt(sq.value() / (count - 1.0)) : 0.0;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ScalingRow> scaling_sweep(const ScalingSweepConfig& config) {
  if (config.seeds == 0) throw InvalidArgument("need >= 1 seed");
  for (double g : config.g_rho_values) {
    if (!(g > 0.0 && g < 1.0)) {
      throw InvalidArgument("sweep g_rho values must lie in (0, 1)");
    }
  }
  const std::size_t per_g = config.seeds;
  return parallel_map(config.g_rho_values.size() * per_g, config.threads,
                      [&](std::size_t t) {
    ScalingRow row;
    row.g_rho = config.g_rho_values[t / per_g];
    row.seed = config.first_seed + t % per_g;
    row.n = config.n;
    const auto potential =
        sample_fixed_interval_count(config.n, config.p, config.b, row.seed);
    const auto decomposition = decompose_lakes(potential);
    row.length = potential.size();
    row.log_p = log_base(row.g_rho, config.p);
    const auto coupling = Coupling::from_g_rho(row.g_rho, row.length);
    const auto result = ground_state(potential, coupling, config.solver);
    row.e0 = result.energy.total;
    row.converged = result.converged;
    row.residual = result.residual;
    const auto classification =
        classify_intervals(result.state, decomposition, row.g_rho, config.p);
    row.fractions = norm_decomposition(result.state, classification);
    row.heavy_kinetic = check_heavy_kinetic(result.state, classification);
    row.cutoff = std::numeric_limits<double>::quiet_NaN();
    try {
      row.cutoff = cutoff_length(row.g_rho, config.p);
      row.upper = upper_bound_energy(decomposition, row.g_rho, config.p);
      row.upper_sharp = upper_bound_energy_sharp(decomposition, row.g_rho, config.p);
      row.lower = lower_bound_energy(decomposition, row.g_rho, config.p,
                                     config.norm_target);
      const auto test = build_test_function(decomposition, row.g_rho, config.p);
      row.test_energy = evaluate_energy(test, potential, coupling).total;
      row.in_regime = true;
    } catch (const OutOfRegime& e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.upper = row.upper_sharp = row.lower = row.test_energy = nan;
      row.in_regime = false;
      row.regime_note = e.what();
    }
    return row;
  });
}

std::vector<ScalingSummary> summarize(const std::vector<ScalingRow>& rows) {
  std::vector<ScalingSummary> out;
  struct Acc {
    CompensatedSum e0, upper, lower, barrier, longs, light, heavy;
    std::size_t all = 0, regime = 0;
  };
  std::vector<Acc> acc;
  for (const auto& row : rows) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const ScalingSummary& s) { return s.g_rho == row.g_rho; });
    if (it == out.end()) {
      out.push_back({row.g_rho, 0, 0.0, 0.0, 0.0, {}});
      acc.emplace_back();
      it = out.end() - 1;
    }
    auto& a = acc[static_cast<std::size_t>(it - out.begin())];
    ++a.all;
    a.e0.add(row.scaled(row.e0));
    a.barrier.add(row.fractions.barrier);
    a.longs.add(row.fractions.long_lakes);
    a.light.add(row.fractions.light);
    a.heavy.add(row.fractions.heavy);
    if (row.in_regime) {
      ++a.regime;
      a.upper.add(row.scaled(row.upper));
      a.lower.add(row.scaled(row.lower));
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto& a = acc[i];
    const double all = static_cast<double>(a.all);
    out[i].rows = a.all;
    out[i].mean_e0_scaled = a.e0.value() / all;
    out[i].mean_fractions = {a.barrier.value() / all, a.longs.value() / all,
                             a.light.value() / all, a.heavy.value() / all};
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out[i].mean_upper_scaled =
        a.regime ? a.upper.value() / static_cast<double>(a.regime) : nan;
    out[i].mean_lower_scaled =
        a.regime ? a.lower.value() / static_cast<double>(a.regime) : nan;
  }
  return out;
}

}  // namespace gpb

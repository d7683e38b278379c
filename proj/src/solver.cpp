#include "gpb/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gpb/error.hpp"
#include "gpb/tridiagonal.hpp"

namespace gpb {

std::string_view to_string(InitialState s) {
  switch (s) {
    case InitialState::automatic:
      return "automatic";
    case InitialState::uniform:
      return "uniform";
    case InitialState::linear_ground_state:
      return "linear_ground_state";
    case InitialState::supplied:
      return "supplied";
  }
  return "unknown";
}

InitialState initial_state_from_string(std::string_view name) {
  if (name == "automatic") return InitialState::automatic;
  if (name == "uniform") return InitialState::uniform;
  if (name == "linear_ground_state") return InitialState::linear_ground_state;
  if (name == "supplied") return InitialState::supplied;
  throw InvalidArgument("unknown initial state '" + std::string(name) + "'");
}

void SolverConfig::validate() const {
  if (!(tol_gradient > 0.0)) throw InvalidArgument("tol_gradient must be > 0");
  if (!(tol_energy > 0.0)) throw InvalidArgument("tol_energy must be > 0");
  if (max_iterations == 0) throw InvalidArgument("max_iterations must be > 0");
  if (!(line_search_shrink > 0.0 && line_search_shrink < 1.0)) {
    throw InvalidArgument("line_search_shrink must lie in (0, 1)");
  }
}

namespace {

constexpr double kAmplitudeFloor = 1e-300;
constexpr int kMaxBacktracks = 40;
constexpr int kMaxNewtonBacktracks = 6;

// Positive representative of a candidate followed by renormalization.
// Returns false if the candidate is degenerate.
bool make_positive_unit(std::vector<double>& v) {
  for (double& x : v) x = std::max(std::abs(x), kAmplitudeFloor);
  const double norm = euclidean_norm(v);
  if (!(norm > 0.0) || !std::isfinite(norm)) return false;
  for (double& x : v) x /= norm;
  return true;
}

double dot(std::span<const double> a, std::span<const double> b) {
  CompensatedSum s;
  for (std::size_t i = 0; i < a.size(); ++i) s.add(a[i] * b[i]);
  return s.value();
}

class Descent {
 public:
  Descent(std::span<const double> potential, double g_n,
          const SolverConfig& config)
      : potential_(potential), g_n_(g_n), config_(config) {}

  void reset(std::vector<double> phi) {
    phi_ = std::move(phi);
    energy_ = energy_terms(phi_, potential_, g_n_).total;
    refresh_residual();
  }

  const std::vector<double>& phi() const { return phi_; }
  double energy() const { return energy_; }
  double residual() const { return residual_; }

  // Sobolev step with backtracking; returns the energy decrease achieved or
  // a negative value when no decreasing step was found.
  double sobolev_step() {
    SymTridiagonal h = SymTridiagonal::schrodinger(potential_);
    for (std::size_t i = 0; i < phi_.size(); ++i) {
      h.diag[i] += g_n_ * phi_[i] * phi_[i];
    }
    auto w = solve(h, phi_);
    if (!w) return -1.0;
    const double gamma = 1.0 / dot(phi_, *w);
    double tau = std::min(1.0, step_ / config_.line_search_shrink);
    std::vector<double> trial(phi_.size());
    for (int k = 0; k < kMaxBacktracks; ++k, tau *= config_.line_search_shrink) {
      for (std::size_t i = 0; i < phi_.size(); ++i) {
        trial[i] = (1.0 - tau) * phi_[i] + tau * gamma * (*w)[i];
      }
      if (!make_positive_unit(trial)) continue;
      const double e = energy_terms(trial, potential_, g_n_).total;
      if (e < energy_) {
        const double decrease = energy_ - e;
        step_ = tau;
        phi_.swap(trial);
        energy_ = e;
        refresh_residual();
        return decrease;
      }
    }
    return -1.0;
  }

  // Newton step on F(phi, mu) = H_phi phi - mu phi, tangent to the sphere.
  // Accepted only if the energy does not rise beyond rounding and the
  // residual drops. Returns the (possibly zero) decrease, or a negative
  // value on rejection.
  double newton_step() {
    const std::size_t n = phi_.size();
    SymTridiagonal h = SymTridiagonal::schrodinger(potential_);
    for (std::size_t i = 0; i < n; ++i) h.diag[i] += g_n_ * phi_[i] * phi_[i];
    const auto h_phi = h.multiply(phi_);
    const double mu = dot(phi_, h_phi);
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = h_phi[i] - mu * phi_[i];

    SymTridiagonal jac = std::move(h);
    for (std::size_t i = 0; i < n; ++i) {
      jac.diag[i] += 2.0 * g_n_ * phi_[i] * phi_[i] - mu;
    }
    const auto x = solve(jac, f);
    const auto y = solve(jac, phi_);
    if (!x || !y) return -1.0;
    const double denom = dot(phi_, *y);
    if (!(std::abs(denom) > 0.0) || !std::isfinite(denom)) return -1.0;
    const double dmu = dot(phi_, *x) / denom;
    std::vector<double> delta(n);
    for (std::size_t i = 0; i < n; ++i) delta[i] = -(*x)[i] + dmu * (*y)[i];

    const double slack =
        8.0 * std::numeric_limits<double>::epsilon() * std::abs(energy_);
    std::vector<double> trial(n);
    double t = 1.0;
    for (int k = 0; k < kMaxNewtonBacktracks; ++k, t *= 0.5) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = phi_[i] + t * delta[i];
      if (!make_positive_unit(trial)) continue;
      const double e = energy_terms(trial, potential_, g_n_).total;
      if (!(e <= energy_ + slack)) continue;
      const double r = residual_of(trial);
      if (!(r < residual_)) continue;
      const double decrease = std::max(0.0, energy_ - e);
      phi_.swap(trial);
      energy_ = std::min(e, energy_);
      residual_ = r;
      return decrease;
    }
    return -1.0;
  }

  // Spectral certificate: mu(phi) - lambda_min(H_phi) >= 0, zero exactly at
  // the minimizer (the minimizer is the positive ground state of its own
  // mean-field operator). Stores the eigenvector for mixing_step().
  double spectral_gap() {
    SymTridiagonal h = SymTridiagonal::schrodinger(potential_);
    for (std::size_t i = 0; i < phi_.size(); ++i) {
      h.diag[i] += g_n_ * phi_[i] * phi_[i];
    }
    const double mu = dot(phi_, h.multiply(phi_));
    double scale = 0.0;
    for (double d : h.diag) scale = std::max(scale, std::abs(d) + 2.0);
    gap_floor_ = 64.0 * std::numeric_limits<double>::epsilon() * scale;
    lowest_ = smallest_eigenpair(h);
    return mu - lowest_.value;
  }
  double gap_floor() const { return gap_floor_; }

  // Damped self-consistent step in density variables:
  // u(t) = (1-t) phi^2 + t v^2 with v the lowest eigenvector of H_phi.
  // The functional is convex in u, so E(u(t)) is convex in t; t is found by
  // golden-section search on [0, 1].
  double mixing_step() {
    const std::size_t n = phi_.size();
    std::vector<double> trial(n);
    const auto& v = lowest_.vector;
    auto at = [&](double t) {
      for (std::size_t i = 0; i < n; ++i) {
        trial[i] = std::sqrt((1.0 - t) * phi_[i] * phi_[i] + t * v[i] * v[i]);
      }
      make_positive_unit(trial);
      return energy_terms(trial, potential_, g_n_).total;
    };
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = 0.0, b = 1.0;
    double c = b - ratio * (b - a), d = a + ratio * (b - a);
    double fc = at(c), fd = at(d);
    while (b - a > 1e-10) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - ratio * (b - a);
        fc = at(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + ratio * (b - a);
        fd = at(d);
      }
    }
    double best_t = fc < fd ? c : d;
    if (at(1.0) < std::min(fc, fd)) best_t = 1.0;
    const double e = at(best_t);
    if (!(e < energy_)) return -1.0;
    const double decrease = energy_ - e;
    phi_.swap(trial);
    energy_ = e;
    refresh_residual();
    step_ = 1.0;
    return decrease;
  }

 private:
  double residual_of(std::span<const double> phi) const {
    const auto g = energy_gradient(phi, potential_, Coupling{g_n_});
    return tangential_gradient_norm(phi, g);
  }
  void refresh_residual() { residual_ = residual_of(phi_); }

  std::span<const double> potential_;
  double g_n_;
  const SolverConfig& config_;
  std::vector<double> phi_;
  double energy_ = 0.0;
  double residual_ = 0.0;
  double step_ = 1.0;
  Eigenpair lowest_;
  double gap_floor_ = 0.0;
};

std::vector<double> initial_amplitudes(std::span<const double> potential,
                                       double g_n, const SolverConfig& config) {
  const std::size_t n = potential.size();
  InitialState kind = config.initial_state;
  if (kind == InitialState::automatic) {
    kind = g_n <= 1.0 ? InitialState::linear_ground_state : InitialState::uniform;
  }
  switch (kind) {
    case InitialState::uniform:
      return std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n)));
    case InitialState::linear_ground_state: {
      const auto lin = linear_ground_state(potential);
      return {lin.state.amplitudes().begin(), lin.state.amplitudes().end()};
    }
    case InitialState::supplied:
      if (config.supplied_state.size() != n) {
        throw DimensionMismatch("supplied initial state has wrong length");
      }
      return config.supplied_state;
    case InitialState::automatic:
      break;
  }
  throw InvalidArgument("unresolved initial state");
}

}  // namespace

GroundStateResult ground_state(std::span<const double> potential,
                               Coupling coupling, const SolverConfig& config) {
  config.validate();
  if (potential.empty()) throw InvalidArgument("empty potential");
  if (!(coupling.g_n >= 0.0)) throw InvalidArgument("coupling must be >= 0");

  auto start = initial_amplitudes(potential, coupling.g_n, config);
  if (!make_positive_unit(start)) {
    throw InvalidArgument("initial state is zero or not finite");
  }
  Descent descent(potential, coupling.g_n, config);
  descent.reset(std::move(start));
  const double initial_energy = descent.energy();

  std::size_t iterations = 0;
  std::size_t newton_steps = 0;
  std::size_t newton_cooldown = 0;
  std::size_t newton_backoff = 1;
  double last_decrease = std::numeric_limits<double>::infinity();
  bool converged = false;

  while (true) {
    const bool locally_stationary = descent.residual() <= config.tol_gradient &&
                                    last_decrease <= config.tol_energy;
    bool stalled = false;
    if (!locally_stationary && iterations < config.max_iterations) {
      ++iterations;
      double decrease = -1.0;
      if (iterations > 1 && newton_cooldown == 0) {
        decrease = descent.newton_step();
        if (decrease >= 0.0) {
          ++newton_steps;
          newton_backoff = 1;
        } else {
          newton_backoff = std::min<std::size_t>(2 * newton_backoff, 64);
          newton_cooldown = newton_backoff;
        }
      } else if (newton_cooldown > 0) {
        --newton_cooldown;
      }
      if (decrease < 0.0) decrease = descent.sobolev_step();
      if (decrease < 0.0) {
        decrease = descent.newton_step();
        if (decrease >= 0.0) ++newton_steps;
      }
      if (decrease >= 0.0) {
        last_decrease = decrease;
        continue;
      }
      // No local step lowers the energy: stationary up to rounding.
      last_decrease = 0.0;
      stalled = true;
    }
    if (!locally_stationary && !stalled) break;  // iteration budget spent

    // Locally stationary: certify globally or move mass between lakes.
    const double gap = descent.spectral_gap();
    if (gap <= std::max(config.tol_gradient, descent.gap_floor())) {
      converged = descent.residual() <= config.tol_gradient;
      break;
    }
    if (iterations >= config.max_iterations) break;
    ++iterations;
    const double decrease = descent.mixing_step();
    if (decrease < 0.0) break;
    last_decrease = decrease;
    newton_cooldown = 0;
    newton_backoff = 1;
  }

  WaveFunction state(descent.phi());
  const auto energy = evaluate_energy(state, potential, coupling);
  return GroundStateResult{std::move(state), energy,       iterations,
                           descent.residual(), converged, initial_energy,
                           newton_steps};
}

GroundStateResult ground_state(const PotentialRealization& potential,
                               Coupling coupling, const SolverConfig& config) {
  return ground_state(potential.values(), coupling, config);
}

LinearGroundState linear_ground_state(std::span<const double> potential) {
  if (potential.empty()) throw InvalidArgument("empty potential");
  auto pair = smallest_eigenpair(SymTridiagonal::schrodinger(potential));
  for (double& x : pair.vector) x = std::max(x, 0.0);
  return {pair.value, WaveFunction::normalize(std::move(pair.vector))};
}

LinearGroundState linear_ground_state(const PotentialRealization& potential) {
  return linear_ground_state(potential.values());
}

namespace {

// Unit vector on the nonnegative orthant from L-1 angles in [0, pi/2].
void angles_to_state(std::span<const double> theta, std::span<double> phi) {
  double prefix = 1.0;
  for (std::size_t k = 0; k < theta.size(); ++k) {
    phi[k] = prefix * std::cos(theta[k]);
    prefix *= std::sin(theta[k]);
  }
  phi[theta.size()] = prefix;
}

}  // namespace

double brute_force_minimum(std::span<const double> potential, Coupling coupling,
                           std::size_t grid_points_per_axis) {
  const std::size_t n = potential.size();
  if (n == 0) throw InvalidArgument("empty potential");
  if (n > kBruteForceMaxSites) {
    throw InvalidArgument("brute_force_minimum supports at most " +
                          std::to_string(kBruteForceMaxSites) + " sites");
  }
  if (grid_points_per_axis < 2) {
    throw InvalidArgument("need at least 2 grid points per axis");
  }
  const std::size_t dims = n - 1;
  std::vector<double> phi(n);
  auto value = [&](std::span<const double> theta) {
    angles_to_state(theta, phi);
    return energy_terms(phi, potential, coupling.g_n).total;
  };
  std::vector<double> theta(dims, 0.0);
  if (dims == 0) return value(theta);

  const double half_pi = std::acos(0.0);
  const double spacing =
      half_pi / static_cast<double>(grid_points_per_axis - 1);
  std::vector<std::size_t> index(dims, 0);
  std::vector<double> best_theta(dims, 0.0);
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    for (std::size_t k = 0; k < dims; ++k) {
      theta[k] = spacing * static_cast<double>(index[k]);
    }
    const double e = value(theta);
    if (e < best) {
      best = e;
      best_theta = theta;
    }
    std::size_t k = 0;
    while (k < dims && ++index[k] == grid_points_per_axis) index[k++] = 0;
    if (k == dims) break;
  }

  // Compass search polish.
  theta = best_theta;
  double step = spacing;
  while (step > 1e-12) {
    bool improved = false;
    for (std::size_t k = 0; k < dims; ++k) {
      for (double sign : {1.0, -1.0}) {
        const double old = theta[k];
        theta[k] = std::clamp(old + sign * step, 0.0, half_pi);
        const double e = value(theta);
        if (e < best) {
          best = e;
          improved = true;
        } else {
          theta[k] = old;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return best;
}

double brute_force_minimum(const PotentialRealization& potential,
                           Coupling coupling, std::size_t grid_points_per_axis) {
  return brute_force_minimum(potential.values(), coupling,
                             grid_points_per_axis);
}

}  // namespace gpb

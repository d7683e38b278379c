#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "gpb/disorder.hpp"
#include "gpb/energy.hpp"

namespace gpb {

enum class InitialState {
  automatic,            // linear ground state when gN <= 1, uniform otherwise
  uniform,
  linear_ground_state,
  supplied,
};

std::string_view to_string(InitialState s);
InitialState initial_state_from_string(std::string_view name);

struct SolverConfig {
  double tol_gradient = 1e-10;
  double tol_energy = 1e-14;
  std::size_t max_iterations = 1'000'000;
  InitialState initial_state = InitialState::automatic;
  /// Starting amplitudes when initial_state == supplied (any nonzero vector).
  std::vector<double> supplied_state;
  double line_search_shrink = 0.5;

  void validate() const;
};

struct GroundStateResult {
  WaveFunction state;
  EnergyBreakdown energy;
  std::size_t iterations = 0;
  /// Final tangential gradient norm.
  double residual = 0.0;
  bool converged = false;

  double initial_energy = 0.0;
  std::size_t newton_steps = 0;
};

/// Minimizes the functional over normalized states. Descent runs on the
/// unit sphere; each accepted step lowers the energy. Steps are either a
/// Sobolev-preconditioned gradient step (phi <- (1-t) phi + t gamma
/// H_phi^{-1} phi with H_phi = -Lap + V + gN phi^2) or, once that is
/// accepted near the minimum, a Newton step on the Euler-Lagrange system.
/// Iterates are kept entrywise positive: |phi| with a floor of 1e-300.
/// Convergence needs both the tangential gradient norm <= tol_gradient and
/// the last energy decrease <= tol_energy. On non-convergence the last
/// iterate is returned with converged = false.
GroundStateResult ground_state(std::span<const double> potential,
                               Coupling coupling,
                               const SolverConfig& config = {});
GroundStateResult ground_state(const PotentialRealization& potential,
                               Coupling coupling,
                               const SolverConfig& config = {});

struct LinearGroundState {
  double energy = 0.0;
  WaveFunction state;
};

/// Smallest eigenpair of -Lap + V with Dirichlet walls; state nonnegative.
LinearGroundState linear_ground_state(std::span<const double> potential);
LinearGroundState linear_ground_state(const PotentialRealization& potential);

/// Largest lattice accepted by brute_force_minimum.
inline constexpr std::size_t kBruteForceMaxSites = 6;

/// Minimum over a uniform grid of hyperspherical angles covering the
/// nonnegative part of the unit sphere, followed by a compass-search
/// polish from the best grid point. Upper-bounds the true minimum.
double brute_force_minimum(std::span<const double> potential, Coupling coupling,
                           std::size_t grid_points_per_axis);
double brute_force_minimum(const PotentialRealization& potential,
                           Coupling coupling, std::size_t grid_points_per_axis);

}  // namespace gpb

#pragma once

#include "boxdual/problem.hpp"

#include <vector>

namespace boxdual::oracle {

// Reference solvers for min { Psi(x) : A x = y, x in box } at desk scale.
// Neither shares code with the dual solver or with the entropy kernels, so
// their answers can certify it.

struct OracleResult {
  Vector best_point;
  double best_value = 0.0;  // Psi(best_point)
  double grid_step = 0.0;   // largest grid spacing; 0 for penalty descent
  double feasibility_tolerance = 0.0;
};

inline constexpr Index kMaxGridDimension = 6;
inline constexpr int kMaxGridPoints = 200;

/// Enumerates the regular grid with `grid_points_per_dim` points per
/// coordinate (bounds included), keeps points with ||A x - y||_inf within
/// `feasibility_tolerance`, and returns the one with the smallest Psi. Ties go
/// to the lexicographically first grid index. Infeasible branches of the
/// enumeration are pruned with interval bounds, which never drops a feasible
/// point.
///
/// Throws kTooLarge when N > 6 or more than 200 points per coordinate are
/// requested, and kNoFeasibleGridPoint when nothing passes the tolerance.
OracleResult brute_force_solve(const InverseProblem& problem,
                               int grid_points_per_dim,
                               double feasibility_tolerance);

struct PenaltyOptions {
  std::vector<double> weights;  // one entry per outer round
  int sweeps_per_weight = 30;
  double feasibility_tolerance = 1e-9;
};

/// 1, 3, 10, 30, then 100 repeated up to 400 rounds. Converges slowly when
/// A has a tiny singular value, as for nearly square ill-conditioned systems.
PenaltyOptions default_penalty_options();

/// Minimises Psi(x) + mu^T r + w ||r||^2, r = A x - y, by exact cyclic
/// coordinate descent, raising w along the schedule and shifting the
/// multiplier estimate mu by 2 w r after each round. Throws
/// kOracleNotConverged if the final residual exceeds the options' tolerance.
OracleResult penalty_descent_solve(const InverseProblem& problem,
                                   const PenaltyOptions& options =
                                       default_penalty_options());

}  // namespace boxdual::oracle

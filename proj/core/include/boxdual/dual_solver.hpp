#pragma once

#include "boxdual/problem.hpp"

#include <string_view>
#include <vector>

namespace boxdual {

enum class SolveStatus {
  kConverged,
  kInfeasible,     // multiplier diverged: y is not inside A applied to the box
  kMaxIterations,
  kStalled,        // no ascent step could be found before reaching tolerance
};

std::string_view to_string(SolveStatus status);

/// Result of maximising the dual entropy Sigma(y, lambda) = <lambda, y> -
/// M(A^T lambda). The primal point is the mean map of the dual coordinates,
/// so it is inside the box whatever the status.
///
/// Values are those of the last iterate when the status is not kConverged.
/// When the box has degenerate coordinates, dual_value, primal_value and gap
/// refer to the reduced problem over the free coordinates; the vectors and the
/// residual are always full length.
struct Solution {
  Vector multiplier;   // lambda, length M
  Vector dual_coords;  // A^T lambda, length N
  Vector primal;       // x, length N
  double dual_value = 0.0;
  double primal_value = 0.0;
  double gap = 0.0;
  double residual = 0.0;  // ||A x - y||_inf
  int iterations = 0;
  int gradient_steps = 0;  // iterations without a full-rank Newton step
  SolveStatus status = SolveStatus::kMaxIterations;
  std::vector<double> trace;  // dual value at every iterate, starting at 0

  bool converged() const noexcept { return status == SolveStatus::kConverged; }
};

/// Sigma(y, lambda); concave in lambda. Requires a box with no degenerate
/// coordinates.
double dual_objective(const Vector& lambda, const InverseProblem& problem);

/// y - A mean_map(A^T lambda).
Vector dual_gradient(const Vector& lambda, const InverseProblem& problem);

/// -A diag(C) A^T with C the curvature weights at A^T lambda.
Matrix dual_hessian(const Vector& lambda, const InverseProblem& problem);

/// Duality gap allowance used for convergence: max(1e-8, 1e3 eps N).
double gap_tolerance(Index columns);

/// Damped Newton ascent on Sigma from lambda = 0, with Armijo backtracking.
/// Singular Newton systems fall back to a minimum-norm step or to gradient
/// ascent. Once the predicted ascent is below round-off in the dual value, a
/// full Newton step is taken whenever it shrinks the gradient, so the trace is
/// non-decreasing only up to that round-off. Degenerate coordinates are fixed
/// at their value and eliminated before iterating.
Solution solve(const InverseProblem& problem, const SolverOptions& options = {});

struct NoisySolution {
  Solution joint;  // over z = (x, noise) for the augmented problem
  Vector primal;   // x
  Vector noise;    // e, recovered directly from the multiplier
};

/// Solves A x + e = y by solving the augmented problem [A I] z = y.
NoisySolution solve_noisy(const NoisyInverseProblem& problem,
                          const SolverOptions& options = {});

}  // namespace boxdual

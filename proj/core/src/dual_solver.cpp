#include "boxdual/dual_solver.hpp"

#include "boxdual/entropy.hpp"
#include "boxdual/error.hpp"
#include "boxdual/sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace boxdual {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 60;
constexpr double kNewtonRcond = 1e-13;
constexpr double kRankThreshold = 1e-12;
constexpr double kMinAscentCosine = 1e-10;
constexpr double kRoundoffFactor = 1e3;

double norm_inf(const Vector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

struct Iterate {
  Vector lambda;
  Vector tau;
  Vector xi;
  Vector gradient;
  double value = 0.0;
};

Iterate evaluate(const InverseProblem& problem, Vector lambda) {
  Iterate it;
  it.tau = problem.matrix().transpose() * lambda;
  it.xi = mean_map(it.tau, problem.domain());
  it.gradient = problem.data() - problem.matrix() * it.xi;
  it.value = lambda.dot(problem.data()) - log_mgf(it.tau, problem.domain());
  it.lambda = std::move(lambda);
  return it;
}

// Solves (A C A^T) d = g. Returns false when the system is singular and the
// minimum-norm solution is not a usable ascent direction either.
bool newton_direction(const InverseProblem& problem, const Iterate& it,
                      Vector& direction, bool& full_rank) {
  const Vector weights = curvature_weights(it.tau, problem.domain());
  const Matrix& a = problem.matrix();
  const Matrix normal = a * weights.asDiagonal() * a.transpose();

  Eigen::LLT<Matrix> llt(normal);
  if (llt.info() == Eigen::Success && llt.rcond() > kNewtonRcond) {
    direction = llt.solve(it.gradient);
    full_rank = true;
    if (direction.allFinite()) return true;
  }
  full_rank = false;

  Eigen::CompleteOrthogonalDecomposition<Matrix> cod;
  cod.setThreshold(kRankThreshold);
  cod.compute(normal);
  direction = cod.solve(it.gradient);
  const double norms = it.gradient.norm() * direction.norm();
  return direction.allFinite() && norms > 0.0 &&
         it.gradient.dot(direction) >= kMinAscentCosine * norms;
}

// Armijo backtracking from `step`. On success `it` is replaced by the
// accepted iterate.
bool backtrack(const InverseProblem& problem, const Vector& direction,
               double step, double shrink, Iterate& it) {
  const double slope = it.gradient.dot(direction);
  for (int k = 0; k < kMaxBacktracks; ++k, step *= shrink) {
    Iterate candidate = evaluate(problem, it.lambda + step * direction);
    if (candidate.value >= it.value + kArmijo * step * slope) {
      it = std::move(candidate);
      return true;
    }
  }
  return false;
}

}  // namespace

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kConverged: return "converged";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kMaxIterations: return "max-iterations";
    case SolveStatus::kStalled: return "stalled";
  }
  return "unknown";
}

double dual_objective(const Vector& lambda, const InverseProblem& problem) {
  const Vector tau = problem.matrix().transpose() * lambda;
  return lambda.dot(problem.data()) - log_mgf(tau, problem.domain());
}

Vector dual_gradient(const Vector& lambda, const InverseProblem& problem) {
  const Vector tau = problem.matrix().transpose() * lambda;
  return problem.data() - problem.matrix() * mean_map(tau, problem.domain());
}

Matrix dual_hessian(const Vector& lambda, const InverseProblem& problem) {
  const Vector tau = problem.matrix().transpose() * lambda;
  const Vector weights = curvature_weights(tau, problem.domain());
  const Matrix& a = problem.matrix();
  return -(a * weights.asDiagonal() * a.transpose());
}

double gap_tolerance(Index columns) {
  return std::max(1e-8, 1e3 * std::numeric_limits<double>::epsilon() *
                            static_cast<double>(columns));
}

Solution solve(const InverseProblem& problem, const SolverOptions& options) {
  options.validate();
  const ReducedProblem reduction = eliminate_degenerate(problem);
  const InverseProblem& reduced = reduction.reduced;
  const double gap_allowance = gap_tolerance(reduced.cols());

  Solution solution;
  Iterate it = evaluate(reduced, Vector::Zero(reduced.rows()));
  solution.trace.push_back(it.value);

  double potential = dual_potential(it.xi, reduced.domain());
  for (;;) {
    const double gradient_norm = norm_inf(it.gradient);
    if (gradient_norm <= options.tolerance &&
        std::abs(potential - it.value) <= gap_allowance) {
      solution.status = SolveStatus::kConverged;
      break;
    }
    if (norm_inf(it.lambda) > options.divergence_threshold) {
      solution.status = SolveStatus::kInfeasible;
      break;
    }
    if (solution.iterations >= options.max_iterations) {
      solution.status = SolveStatus::kMaxIterations;
      break;
    }

    Vector direction;
    bool full_rank = false;
    bool accepted = false;
    if (newton_direction(reduced, it, direction, full_rank)) {
      // Below round-off in the dual value the line search cannot tell steps
      // apart; take the full step if it shrinks the gradient.
      const double predicted = 0.5 * it.gradient.dot(direction);
      const double noise = kRoundoffFactor *
                           std::numeric_limits<double>::epsilon() *
                           std::max(1.0, std::abs(it.value));
      if (predicted <= noise) {
        Iterate candidate = evaluate(reduced, it.lambda + direction);
        if (norm_inf(candidate.gradient) < gradient_norm) {
          it = std::move(candidate);
          accepted = true;
        }
      }
      if (!accepted) {
        accepted = backtrack(reduced, direction, 1.0,
                             options.line_search_shrink, it);
      }
    }
    if (!accepted) {
      // Gradient ascent, first trying a step that doubles the multiplier
      // scale so that an unbounded dual escapes quickly.
      full_rank = false;
      const double step =
          std::max(1.0, norm_inf(it.lambda)) / std::max(gradient_norm, 1e-300);
      accepted = backtrack(reduced, it.gradient, step,
                           options.line_search_shrink, it);
    }
    if (!accepted) {
      solution.status = SolveStatus::kStalled;
      break;
    }
    if (!full_rank) ++solution.gradient_steps;
    ++solution.iterations;
    solution.trace.push_back(it.value);
    potential = dual_potential(it.xi, reduced.domain());
  }

  solution.multiplier = it.lambda;
  solution.dual_coords = problem.matrix().transpose() * it.lambda;
  solution.primal = reduction.expand(it.xi);
  solution.dual_value = it.value;
  solution.primal_value = potential;
  solution.gap = std::abs(potential - it.value);
  solution.residual = norm_inf(problem.matrix() * solution.primal -
                               problem.data());
  return solution;
}

NoisySolution solve_noisy(const NoisyInverseProblem& problem,
                          const SolverOptions& options) {
  const InverseProblem joint_problem = augment(problem);
  NoisySolution result;
  result.joint = solve(joint_problem, options);

  const Index n = problem.base().cols();
  const Index m = problem.base().rows();
  result.primal = result.joint.primal.head(n);

  // The identity block makes the noise dual coordinates equal the multiplier.
  const BoxDomain& noise_box = problem.noise_domain();
  result.noise = noise_box.lower();
  std::vector<Index> free;
  for (Index j = 0; j < m; ++j) {
    if (!noise_box.is_degenerate(j)) free.push_back(j);
  }
  Vector free_multiplier(static_cast<Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    free_multiplier[static_cast<Index>(k)] = result.joint.multiplier[free[k]];
  }
  const Vector free_noise = mean_map(free_multiplier, noise_box.select(free));
  for (std::size_t k = 0; k < free.size(); ++k) {
    result.noise[free[k]] = free_noise[static_cast<Index>(k)];
  }
  return result;
}

}  // namespace boxdual

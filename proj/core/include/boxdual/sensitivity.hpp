#pragma once

#include "boxdual/dual_solver.hpp"
#include "boxdual/problem.hpp"

namespace boxdual {

/// Second derivative of the log-MGF, coordinate by coordinate:
/// C_j = (D_j / (exp(D_j tau_j / 2) + exp(-D_j tau_j / 2)))^2, in (0, D_j^2/4].
Vector curvature_weights(const Vector& tau, const BoxDomain& domain);

/// Above this condition estimate the normal matrix A C A^T is treated as
/// singular.
inline constexpr double kMaxNormalCondition = 1e12;

struct SensitivityReport {
  Vector weights;              // C at the solution; 0 on degenerate coordinates
  Matrix multiplier_jacobian;  // d lambda / d y, M x M
  Matrix primal_jacobian;      // d x / d y, N x M
  double conditioning = 0.0;   // eigenvalue ratio of A C A^T
};

/// d lambda / d y = (A C A^T)^{-1} at a converged solution.
///
/// Differentiating A mean_map(A^T lambda(y)) = y gives
/// (A C A^T) d lambda / d y = I. Throws kNotConverged for a solution that
/// did not converge and kSingularNormalMatrix (with the condition estimate in
/// the message) when A C A^T is numerically singular.
Matrix multiplier_jacobian(const Solution& solution,
                           const InverseProblem& problem);

/// d x / d y = C A^T (A C A^T)^{-1}; satisfies A (d x / d y) = I.
Matrix primal_jacobian(const Solution& solution, const InverseProblem& problem);

SensitivityReport analyze_sensitivity(const Solution& solution,
                                      const InverseProblem& problem);

/// The two monotonicity forms for solutions of the same matrix and box at
/// different data:
///   multiplier_form = (lambda1 - lambda2)^T (y1 - y2)
///   primal_form     = (A^T lambda1 - A^T lambda2)^T (x1 - x2)
/// Both are nonnegative, and they agree whenever A x_i = y_i.
struct LeChatelierForms {
  double multiplier_form = 0.0;
  double primal_form = 0.0;
};

LeChatelierForms le_chatelier_forms(const Solution& first,
                                    const InverseProblem& first_problem,
                                    const Solution& second,
                                    const InverseProblem& second_problem);

}  // namespace boxdual

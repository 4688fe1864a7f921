#include "boxdual/sensitivity.hpp"

#include "boxdual/entropy.hpp"
#include "boxdual/error.hpp"

#include <limits>
#include <sstream>
#include <string>

namespace boxdual {

namespace {

void require_converged(const Solution& solution) {
  if (!solution.converged()) {
    throw Error(ErrorCode::kNotConverged,
                "sensitivity needs a converged solution, got status " +
                    std::string(to_string(solution.status)));
  }
}

Vector weights_at(const Solution& solution, const InverseProblem& problem) {
  if (solution.dual_coords.size() != problem.cols() ||
      solution.multiplier.size() != problem.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "solution does not match the problem dimensions");
  }
  const BoxDomain& domain = problem.domain();
  Vector weights = Vector::Zero(problem.cols());
  for (Index j = 0; j < problem.cols(); ++j) {
    if (domain.is_degenerate(j)) continue;
    const double d = domain.widths()[j];
    const double u = d * solution.dual_coords[j];
    weights[j] = d * d * logistic(u) * logistic(-u);
  }
  return weights;
}

struct NormalInverse {
  Matrix inverse;
  double condition = 0.0;
};

NormalInverse invert_normal(const Matrix& a, const Vector& weights) {
  const Matrix normal = a * weights.asDiagonal() * a.transpose();
  Eigen::SelfAdjointEigenSolver<Matrix> eigen(normal);
  const Vector& values = eigen.eigenvalues();
  double condition = std::numeric_limits<double>::infinity();
  if (values.size() > 0 && values[0] > 0.0) {
    condition = values[values.size() - 1] / values[0];
  }
  if (!(condition <= kMaxNormalCondition)) {
    std::ostringstream message;
    message << "A C A^T is numerically singular (condition estimate "
            << condition << ")";
    throw Error(ErrorCode::kSingularNormalMatrix, message.str());
  }
  Eigen::LLT<Matrix> llt(normal);
  return {llt.solve(Matrix::Identity(normal.rows(), normal.cols())), condition};
}

}  // namespace

Vector curvature_weights(const Vector& tau, const BoxDomain& domain) {
  if (tau.size() != domain.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "tau length does not match the box dimension");
  }
  if (domain.has_degenerate()) {
    throw Error(ErrorCode::kDegenerateCoordinate,
                "coordinate " +
                    std::to_string(domain.degenerate_indices().front()) +
                    " has zero width");
  }
  Vector weights(tau.size());
  for (Index j = 0; j < tau.size(); ++j) {
    const double d = domain.widths()[j];
    const double u = d * tau[j];
    // D^2 / (e^{u/2} + e^{-u/2})^2 == D^2 logistic(u) logistic(-u)
    weights[j] = d * d * logistic(u) * logistic(-u);
  }
  return weights;
}

Matrix multiplier_jacobian(const Solution& solution,
                           const InverseProblem& problem) {
  require_converged(solution);
  return invert_normal(problem.matrix(), weights_at(solution, problem)).inverse;
}

Matrix primal_jacobian(const Solution& solution, const InverseProblem& problem) {
  require_converged(solution);
  const Vector weights = weights_at(solution, problem);
  const Matrix inverse = invert_normal(problem.matrix(), weights).inverse;
  return weights.asDiagonal() * problem.matrix().transpose() * inverse;
}

SensitivityReport analyze_sensitivity(const Solution& solution,
                                      const InverseProblem& problem) {
  require_converged(solution);
  SensitivityReport report;
  report.weights = weights_at(solution, problem);
  NormalInverse normal = invert_normal(problem.matrix(), report.weights);
  report.conditioning = normal.condition;
  report.primal_jacobian =
      report.weights.asDiagonal() * problem.matrix().transpose() *
      normal.inverse;
  report.multiplier_jacobian = std::move(normal.inverse);
  return report;
}

LeChatelierForms le_chatelier_forms(const Solution& first,
                                    const InverseProblem& first_problem,
                                    const Solution& second,
                                    const InverseProblem& second_problem) {
  require_converged(first);
  require_converged(second);
  if (first_problem.matrix() != second_problem.matrix() ||
      !(first_problem.domain() == second_problem.domain())) {
    throw Error(ErrorCode::kInvalidArgument,
                "monotonicity forms compare data changes for one matrix and box");
  }
  const Vector multiplier_change = first.multiplier - second.multiplier;
  LeChatelierForms forms;
  forms.multiplier_form =
      multiplier_change.dot(first_problem.data() - second_problem.data());
  forms.primal_form = (first.dual_coords - second.dual_coords)
                          .dot(first.primal - second.primal);
  return forms;
}

}  // namespace boxdual

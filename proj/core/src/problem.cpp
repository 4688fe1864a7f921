#include "boxdual/problem.hpp"

#include "boxdual/error.hpp"

#include <string>
#include <utility>

namespace boxdual {

namespace {

template <typename Derived>
void require_finite(const Eigen::DenseBase<Derived>& values, const char* what) {
  if (!values.allFinite()) {
    throw Error(ErrorCode::kNonFiniteEntry,
                std::string(what) + " contains a non-finite entry");
  }
}

}  // namespace

BoxDomain::BoxDomain(Vector lower, Vector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "box has " + std::to_string(lower_.size()) +
                    " lower bounds but " + std::to_string(upper_.size()) +
                    " upper bounds");
  }
  require_finite(lower_, "lower bound");
  require_finite(upper_, "upper bound");
  for (Index j = 0; j < lower_.size(); ++j) {
    if (lower_[j] > upper_[j]) {
      throw Error(ErrorCode::kInvertedBounds,
                  "coordinate " + std::to_string(j) +
                      " has lower bound above upper bound");
    }
  }
  widths_ = upper_ - lower_;
  for (Index j = 0; j < widths_.size(); ++j) {
    if (widths_[j] == 0.0) degenerate_.push_back(j);
  }
}

BoxDomain BoxDomain::uniform(Index n, double lower, double upper) {
  return BoxDomain(Vector::Constant(n, lower), Vector::Constant(n, upper));
}

bool BoxDomain::contains(const Vector& x) const {
  if (x.size() != size()) return false;
  return ((x - lower_).array() >= 0.0).all() &&
         ((upper_ - x).array() >= 0.0).all();
}

bool BoxDomain::contains_strictly(const Vector& x) const {
  if (x.size() != size()) return false;
  return ((x - lower_).array() > 0.0).all() &&
         ((upper_ - x).array() > 0.0).all();
}

BoxDomain BoxDomain::concat(const BoxDomain& tail) const {
  Vector lo(size() + tail.size());
  Vector hi(size() + tail.size());
  lo << lower_, tail.lower_;
  hi << upper_, tail.upper_;
  return BoxDomain(std::move(lo), std::move(hi));
}

BoxDomain BoxDomain::select(const std::vector<Index>& indices) const {
  Vector lo(static_cast<Index>(indices.size()));
  Vector hi(static_cast<Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const Index j = indices[k];
    if (j < 0 || j >= size()) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "box index " + std::to_string(j) + " out of range");
    }
    lo[static_cast<Index>(k)] = lower_[j];
    hi[static_cast<Index>(k)] = upper_[j];
  }
  return BoxDomain(std::move(lo), std::move(hi));
}

InverseProblem::InverseProblem(Matrix matrix, Vector data, BoxDomain domain)
    : matrix_(std::move(matrix)),
      data_(std::move(data)),
      domain_(std::move(domain)) {
  if (matrix_.rows() != data_.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix has " + std::to_string(matrix_.rows()) +
                    " rows but data has length " +
                    std::to_string(data_.size()));
  }
  if (matrix_.cols() != domain_.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix has " + std::to_string(matrix_.cols()) +
                    " columns but the box has dimension " +
                    std::to_string(domain_.size()));
  }
  require_finite(matrix_, "matrix");
  require_finite(data_, "data");
}

NoisyInverseProblem::NoisyInverseProblem(InverseProblem base,
                                         BoxDomain noise_domain)
    : base_(std::move(base)), noise_domain_(std::move(noise_domain)) {
  if (noise_domain_.size() != base_.rows()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "noise box has dimension " +
                    std::to_string(noise_domain_.size()) +
                    " but data has length " + std::to_string(base_.rows()));
  }
}

void SolverOptions::validate() const {
  if (!(tolerance > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  }
  if (max_iterations <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "max_iterations must be positive");
  }
  if (!(line_search_shrink > 0.0 && line_search_shrink < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "line_search_shrink must lie in (0, 1)");
  }
  if (!(divergence_threshold > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "divergence_threshold must be positive");
  }
}

InverseProblem validate(const InverseProblem& problem) {
  BoxDomain domain(problem.domain().lower(), problem.domain().upper());
  return InverseProblem(problem.matrix(), problem.data(), std::move(domain));
}

InverseProblem augment(const NoisyInverseProblem& problem) {
  const InverseProblem& base = problem.base();
  const Index m = base.rows();
  const Index n = base.cols();
  Matrix stacked(m, n + m);
  stacked << base.matrix(), Matrix::Identity(m, m);
  return InverseProblem(std::move(stacked), base.data(),
                        base.domain().concat(problem.noise_domain()));
}

Vector ReducedProblem::expand(const Vector& reduced_point) const {
  Vector full = fixed_values;
  for (std::size_t k = 0; k < free_indices.size(); ++k) {
    full[free_indices[k]] = reduced_point[static_cast<Index>(k)];
  }
  return full;
}

ReducedProblem eliminate_degenerate(const InverseProblem& problem) {
  const BoxDomain& domain = problem.domain();
  const Index n = problem.cols();

  std::vector<Index> free;
  free.reserve(static_cast<std::size_t>(n));
  Vector fixed = Vector::Zero(n);
  for (Index j = 0; j < n; ++j) {
    if (domain.is_degenerate(j)) {
      fixed[j] = domain.lower()[j];
    } else {
      free.push_back(j);
    }
  }

  Matrix columns(problem.rows(), static_cast<Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) {
    columns.col(static_cast<Index>(k)) = problem.matrix().col(free[k]);
  }
  Vector shifted = problem.data() - problem.matrix() * fixed;

  return ReducedProblem{
      InverseProblem(std::move(columns), std::move(shifted),
                     domain.select(free)),
      std::move(free), std::move(fixed)};
}

}  // namespace boxdual

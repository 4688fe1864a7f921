#pragma once

#include <Eigen/Dense>

#include <vector>

namespace boxdual {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Product of closed intervals [lower_j, upper_j]. A coordinate with
/// lower_j == upper_j is degenerate: it admits a single value.
class BoxDomain {
 public:
  BoxDomain() = default;
  BoxDomain(Vector lower, Vector upper);

  static BoxDomain uniform(Index n, double lower, double upper);

  Index size() const noexcept { return lower_.size(); }
  const Vector& lower() const noexcept { return lower_; }
  const Vector& upper() const noexcept { return upper_; }
  const Vector& widths() const noexcept { return widths_; }

  bool is_degenerate(Index j) const { return widths_[j] == 0.0; }
  bool has_degenerate() const noexcept { return !degenerate_.empty(); }
  const std::vector<Index>& degenerate_indices() const noexcept {
    return degenerate_;
  }

  Vector midpoint() const { return 0.5 * (lower_ + upper_); }

  bool contains(const Vector& x) const;
  bool contains_strictly(const Vector& x) const;

  /// This domain followed by `tail`.
  BoxDomain concat(const BoxDomain& tail) const;
  BoxDomain select(const std::vector<Index>& indices) const;

  friend bool operator==(const BoxDomain& l, const BoxDomain& r) {
    return l.lower_ == r.lower_ && l.upper_ == r.upper_;
  }

 private:
  Vector lower_;
  Vector upper_;
  Vector widths_;
  std::vector<Index> degenerate_;
};

/// A x = y with x restricted to a box. Dimensions and finiteness are checked
/// on construction, so every live instance is valid.
class InverseProblem {
 public:
  InverseProblem(Matrix matrix, Vector data, BoxDomain domain);

  const Matrix& matrix() const noexcept { return matrix_; }
  const Vector& data() const noexcept { return data_; }
  const BoxDomain& domain() const noexcept { return domain_; }

  Index rows() const noexcept { return matrix_.rows(); }
  Index cols() const noexcept { return matrix_.cols(); }

  friend bool operator==(const InverseProblem& l, const InverseProblem& r) {
    return l.matrix_ == r.matrix_ && l.data_ == r.data_ &&
           l.domain_ == r.domain_;
  }

 private:
  Matrix matrix_;
  Vector data_;
  BoxDomain domain_;
};

/// A x + e = y with x in the solution box and e in the noise box.
class NoisyInverseProblem {
 public:
  NoisyInverseProblem(InverseProblem base, BoxDomain noise_domain);

  const InverseProblem& base() const noexcept { return base_; }
  const BoxDomain& noise_domain() const noexcept { return noise_domain_; }

  friend bool operator==(const NoisyInverseProblem& l,
                         const NoisyInverseProblem& r) {
    return l.base_ == r.base_ && l.noise_domain_ == r.noise_domain_;
  }

 private:
  InverseProblem base_;
  BoxDomain noise_domain_;
};

struct SolverOptions {
  double tolerance = 1e-10;  // sup-norm of the dual gradient
  int max_iterations = 500;
  double line_search_shrink = 0.5;
  double divergence_threshold = 1e6;

  void validate() const;
};

/// Re-runs every construction check. Idempotent.
InverseProblem validate(const InverseProblem& problem);

/// Rewrites A x + e = y as [A I] z = y over the concatenated box.
InverseProblem augment(const NoisyInverseProblem& problem);

/// A problem with its degenerate coordinates removed: the fixed values are
/// moved to the right-hand side and the remaining columns kept in order.
struct ReducedProblem {
  InverseProblem reduced;
  std::vector<Index> free_indices;
  Vector fixed_values;  // full length; meaningful at degenerate indices

  /// Re-inserts the fixed coordinates around a reduced-space point.
  Vector expand(const Vector& reduced_point) const;
};

ReducedProblem eliminate_degenerate(const InverseProblem& problem);

}  // namespace boxdual

#include "boxdual/oracle.hpp"

#include "boxdual/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

namespace boxdual::oracle {

namespace {

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Psi summed over non-degenerate coordinates; a fixed coordinate contributes 0.
double potential(const Vector& x, const BoxDomain& box) {
  double total = 0.0;
  for (Index j = 0; j < x.size(); ++j) {
    const double d = box.widths()[j];
    if (d == 0.0) continue;
    const double p = std::clamp((x[j] - box.lower()[j]) / d, 0.0, 1.0);
    total += xlogx(p) + xlogx(1.0 - p);
  }
  return total;
}

class GridSearch {
 public:
  GridSearch(const InverseProblem& problem, int points, double tolerance)
      : a_(problem.matrix()),
        y_(problem.data()),
        box_(problem.domain()),
        points_(points),
        tolerance_(tolerance),
        n_(problem.cols()),
        m_(problem.rows()),
        suffix_low_(Matrix::Zero(m_, n_ + 1)),
        suffix_high_(Matrix::Zero(m_, n_ + 1)),
        point_(n_),
        partial_(Matrix::Zero(m_, n_ + 1)) {
    // suffix_low_(i, j) / suffix_high_(i, j): range of sum_{k >= j} A_ik x_k.
    for (Index j = n_ - 1; j >= 0; --j) {
      for (Index i = 0; i < m_; ++i) {
        const double lo = a_(i, j) * box_.lower()[j];
        const double hi = a_(i, j) * box_.upper()[j];
        suffix_low_(i, j) = suffix_low_(i, j + 1) + std::min(lo, hi);
        suffix_high_(i, j) = suffix_high_(i, j + 1) + std::max(lo, hi);
      }
    }
  }

  void run() { visit(0); }

  bool found() const { return found_; }
  const Vector& best_point() const { return best_point_; }
  double best_value() const { return best_value_; }

 private:
  double coordinate(Index j, int k) const {
    if (box_.is_degenerate(j)) return box_.lower()[j];
    if (k == points_ - 1) return box_.upper()[j];
    return box_.lower()[j] +
           box_.widths()[j] * static_cast<double>(k) /
               static_cast<double>(points_ - 1);
  }

  bool reachable(Index depth) const {
    for (Index i = 0; i < m_; ++i) {
      const double remaining = y_[i] - partial_(i, depth);
      if (remaining < suffix_low_(i, depth) - tolerance_ ||
          remaining > suffix_high_(i, depth) + tolerance_) {
        return false;
      }
    }
    return true;
  }

  void visit(Index depth) {
    if (!reachable(depth)) return;
    if (depth == n_) {
      const double value = potential(point_, box_);
      if (!found_ || value < best_value_) {
        found_ = true;
        best_value_ = value;
        best_point_ = point_;
      }
      return;
    }
    const int count = box_.is_degenerate(depth) ? 1 : points_;
    for (int k = 0; k < count; ++k) {
      point_[depth] = coordinate(depth, k);
      partial_.col(depth + 1) =
          partial_.col(depth) + a_.col(depth) * point_[depth];
      visit(depth + 1);
    }
  }

  const Matrix& a_;
  const Vector& y_;
  const BoxDomain& box_;
  int points_;
  double tolerance_;
  Index n_;
  Index m_;
  Matrix suffix_low_;
  Matrix suffix_high_;
  Vector point_;
  Matrix partial_;  // column j: sum_{k < j} A_:k x_k

  bool found_ = false;
  Vector best_point_;
  double best_value_ = std::numeric_limits<double>::infinity();
};

// Root of  ln((t - a) / (b - t)) / d + offset + slope * t  on (a, b); the left
// side increases from -inf to +inf.
double coordinate_minimizer(double a, double b, double offset, double slope,
                            double start) {
  const double d = b - a;
  double lo = a;
  double hi = b;
  double t = (start > a && start < b) ? start : 0.5 * (a + b);
  for (int iter = 0; iter < 200; ++iter) {
    const double below = t - a;
    const double above = b - t;
    const double f =
        (std::log(below) - std::log(above)) / d + offset + slope * t;
    if (f > 0.0) {
      hi = t;
    } else if (f < 0.0) {
      lo = t;
    } else {
      return t;
    }
    const double fprime = (1.0 / below + 1.0 / above) / d + slope;
    double next = t - f / fprime;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - t) <= 1e-16 * d || next == lo || next == hi) {
      return next;
    }
    t = next;
  }
  return t;
}

}  // namespace

OracleResult brute_force_solve(const InverseProblem& problem,
                               int grid_points_per_dim,
                               double feasibility_tolerance) {
  if (problem.cols() > kMaxGridDimension ||
      grid_points_per_dim > kMaxGridPoints) {
    throw Error(ErrorCode::kTooLarge,
                "grid oracle is limited to N <= 6 and 200 points per "
                "coordinate");
  }
  if (grid_points_per_dim < 2 || !(feasibility_tolerance >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument,
                "grid oracle needs at least 2 points per coordinate and a "
                "nonnegative tolerance");
  }

  GridSearch search(problem, grid_points_per_dim, feasibility_tolerance);
  search.run();
  if (!search.found()) {
    throw Error(ErrorCode::kNoFeasibleGridPoint,
                "no grid point satisfies the constraints within tolerance");
  }

  OracleResult result;
  result.best_point = search.best_point();
  result.best_value = search.best_value();
  result.grid_step =
      problem.cols() == 0
          ? 0.0
          : problem.domain().widths().maxCoeff() /
                static_cast<double>(grid_points_per_dim - 1);
  result.feasibility_tolerance = feasibility_tolerance;
  return result;
}

PenaltyOptions default_penalty_options() {
  PenaltyOptions options;
  options.weights = {1.0, 3.0, 10.0, 30.0};
  options.weights.resize(400, 100.0);
  return options;
}

OracleResult penalty_descent_solve(const InverseProblem& problem,
                                   const PenaltyOptions& options) {
  if (options.weights.empty() || options.sweeps_per_weight <= 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "penalty descent needs a weight schedule and positive sweeps");
  }
  const Matrix& a = problem.matrix();
  const Vector& y = problem.data();
  const BoxDomain& box = problem.domain();
  const Index n = problem.cols();

  Vector x = box.midpoint();
  Vector shift = Vector::Zero(problem.rows());
  Vector residual = a * x - y;
  const Vector column_norms = a.colwise().squaredNorm().transpose();

  for (const double weight : options.weights) {
    if (!(weight > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "penalty weights must be positive");
    }
    double largest_move = 0.0;
    for (int sweep = 0; sweep < options.sweeps_per_weight; ++sweep) {
      largest_move = 0.0;
      for (Index j = 0; j < n; ++j) {
        if (box.is_degenerate(j)) continue;
        // Residual with coordinate j removed.
        const Vector others = residual - a.col(j) * x[j];
        const double offset = a.col(j).dot(shift + 2.0 * weight * others);
        const double slope = 2.0 * weight * column_norms[j];
        const double next = coordinate_minimizer(
            box.lower()[j], box.upper()[j], offset, slope, x[j]);
        largest_move = std::max(largest_move, std::abs(next - x[j]));
        residual = others + a.col(j) * next;
        x[j] = next;
      }
      if (largest_move <= 1e-15) break;
    }
    shift += 2.0 * weight * residual;
    residual = a * x - y;
    if (largest_move <= 1e-15 && residual.cwiseAbs().maxCoeff() <= 1e-13) {
      break;
    }
  }

  const double achieved =
      residual.size() == 0 ? 0.0 : residual.cwiseAbs().maxCoeff();
  if (!(achieved <= options.feasibility_tolerance)) {
    std::ostringstream message;
    message << "penalty descent ended with residual " << achieved;
    throw Error(ErrorCode::kOracleNotConverged, message.str());
  }

  OracleResult result;
  result.best_point = x;
  result.best_value = potential(x, box);
  result.feasibility_tolerance = achieved;
  return result;
}

}  // namespace boxdual::oracle

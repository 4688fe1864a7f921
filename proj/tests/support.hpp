#pragma once

#include "boxdual/problem.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <random>

namespace boxdual::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Index uniform_index(Rng& rng, Index lo, Index hi) {
  return std::uniform_int_distribution<Index>(lo, hi)(rng);
}

inline Vector uniform_vector(Rng& rng, Index n, double lo, double hi) {
  Vector v(n);
  for (Index j = 0; j < n; ++j) v[j] = uniform(rng, lo, hi);
  return v;
}

/// Box with lower bounds in [-2, 1] and widths in [0.2, 3].
inline BoxDomain random_box(Rng& rng, Index n) {
  Vector lower = uniform_vector(rng, n, -2.0, 1.0);
  Vector upper = lower + uniform_vector(rng, n, 0.2, 3.0);
  return BoxDomain(std::move(lower), std::move(upper));
}

/// Point whose normalised coordinates lie in [margin, 1 - margin].
inline Vector random_interior(Rng& rng, const BoxDomain& box,
                              double margin = 0.05) {
  Vector x(box.size());
  for (Index j = 0; j < box.size(); ++j) {
    x[j] = box.lower()[j] + box.widths()[j] * uniform(rng, margin, 1.0 - margin);
  }
  return x;
}

/// A with entries in [-1, 1], random box, y = A x0 for an interior x0.
inline InverseProblem random_feasible(Rng& rng, Index m, Index n,
                                      Vector* planted = nullptr) {
  Matrix a = Matrix::NullaryExpr(m, n, [&] { return uniform(rng, -1.0, 1.0); });
  BoxDomain box = random_box(rng, n);
  Vector x0 = random_interior(rng, box);
  Vector y = a * x0;
  if (planted != nullptr) *planted = x0;
  return InverseProblem(std::move(a), std::move(y), std::move(box));
}

/// Common box [lo, lo + w]^n, small nonzero integer rows and y = A g for a
/// grid point g of the `points`-per-dimension grid, kept away from the faces.
inline InverseProblem random_grid_aligned(Rng& rng, Index m, Index n,
                                          int points, Vector* planted = nullptr) {
  const double lo = uniform(rng, -1.0, 0.5);
  const double width = uniform(rng, 0.5, 2.0);
  Matrix a(m, n);
  for (Index i = 0; i < m; ++i) {
    do {
      for (Index j = 0; j < n; ++j) {
        a(i, j) = static_cast<double>(uniform_index(rng, -2, 2));
      }
    } while (a.row(i).cwiseAbs().sum() == 0.0);
  }
  Vector g(n);
  const int margin = points / 10;
  for (Index j = 0; j < n; ++j) {
    const auto k = uniform_index(rng, margin, points - 1 - margin);
    g[j] = lo + width * static_cast<double>(k) / static_cast<double>(points - 1);
  }
  if (planted != nullptr) *planted = g;
  Vector y = a * g;
  return InverseProblem(std::move(a), std::move(y),
                        BoxDomain::uniform(n, lo, lo + width));
}

/// Central-difference gradient of a scalar function.
inline Vector fd_gradient(const std::function<double(const Vector&)>& f,
                          const Vector& at, double h) {
  Vector g(at.size());
  for (Index k = 0; k < at.size(); ++k) {
    Vector plus = at;
    Vector minus = at;
    plus[k] += h;
    minus[k] -= h;
    g[k] = (f(plus) - f(minus)) / (2.0 * h);
  }
  return g;
}

/// Central-difference Jacobian of a vector function; column k is d f / d x_k.
inline Matrix fd_jacobian(const std::function<Vector(const Vector&)>& f,
                          const Vector& at, double h) {
  Matrix j;
  for (Index k = 0; k < at.size(); ++k) {
    Vector plus = at;
    Vector minus = at;
    plus[k] += h;
    minus[k] -= h;
    const Vector column = (f(plus) - f(minus)) / (2.0 * h);
    if (k == 0) j.resize(column.size(), at.size());
    j.col(k) = column;
  }
  return j;
}

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// max |a - b| / max(1, max |b|)
inline double relative_error(const Matrix& a, const Matrix& b) {
  return max_abs(a - b) / std::max(1.0, max_abs(b));
}

}  // namespace boxdual::testing

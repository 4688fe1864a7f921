#include "boxdual/entropy.hpp"

#include "boxdual/error.hpp"

#include <cmath>
#include <string>

namespace boxdual {

namespace {

void require_size(const Vector& v, const BoxDomain& domain, const char* what) {
  if (v.size() != domain.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::string(what) + " has length " + std::to_string(v.size()) +
                    " but the box has dimension " +
                    std::to_string(domain.size()));
  }
}

void require_nondegenerate(const BoxDomain& domain) {
  if (domain.has_degenerate()) {
    throw Error(ErrorCode::kDegenerateCoordinate,
                "coordinate " +
                    std::to_string(domain.degenerate_indices().front()) +
                    " has zero width");
  }
}

void require_closed(const Vector& x, const BoxDomain& domain, const char* what) {
  for (Index j = 0; j < x.size(); ++j) {
    if (!(x[j] >= domain.lower()[j] && x[j] <= domain.upper()[j])) {
      throw Error(ErrorCode::kOutOfBox, std::string(what) + " coordinate " +
                                            std::to_string(j) +
                                            " lies outside the box");
    }
  }
}

void require_open(const Vector& x, const BoxDomain& domain, const char* what) {
  for (Index j = 0; j < x.size(); ++j) {
    if (!(x[j] > domain.lower()[j] && x[j] < domain.upper()[j])) {
      throw Error(ErrorCode::kBoundaryPoint,
                  std::string(what) + " coordinate " + std::to_string(j) +
                      " is not strictly inside the box");
    }
  }
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// (1 + u) ln(1 + u) - u for u >= -1; vanishes to second order at 0.
double relative_entropy_term(double u) {
  if (u == -1.0) return 1.0;
  return (1.0 + u) * std::log1p(u) - u;
}

}  // namespace

double softplus(double u) noexcept {
  return u > 0.0 ? u + std::log1p(std::exp(-u)) : std::log1p(std::exp(u));
}

double logistic(double u) noexcept {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

double log_mgf(const Vector& tau, const BoxDomain& domain) {
  require_size(tau, domain, "tau");
  require_nondegenerate(domain);
  const Vector& a = domain.lower();
  const Vector& b = domain.upper();
  const Vector& d = domain.widths();
  double total = 0.0;
  for (Index j = 0; j < tau.size(); ++j) {
    // Factor out the dominant exponential.
    const double u = d[j] * tau[j];
    total += u >= 0.0 ? b[j] * tau[j] + std::log1p(std::exp(-u))
                      : a[j] * tau[j] + std::log1p(std::exp(u));
  }
  return total;
}

Vector mean_map(const Vector& tau, const BoxDomain& domain) {
  require_size(tau, domain, "tau");
  require_nondegenerate(domain);
  const Vector& a = domain.lower();
  const Vector& b = domain.upper();
  const Vector& d = domain.widths();
  Vector xi(tau.size());
  for (Index j = 0; j < tau.size(); ++j) {
    const double u = d[j] * tau[j];
    // Measure from the nearer endpoint to keep the small gap accurate.
    xi[j] = u >= 0.0 ? b[j] - d[j] * logistic(-u) : a[j] + d[j] * logistic(u);
  }
  return xi;
}

Vector inverse_mean_map(const Vector& xi, const BoxDomain& domain) {
  require_size(xi, domain, "xi");
  require_nondegenerate(domain);
  require_open(xi, domain, "xi");
  const Vector& a = domain.lower();
  const Vector& b = domain.upper();
  const Vector& d = domain.widths();
  Vector tau(xi.size());
  for (Index j = 0; j < xi.size(); ++j) {
    tau[j] = (std::log(xi[j] - a[j]) - std::log(b[j] - xi[j])) / d[j];
  }
  return tau;
}

double dual_potential(const Vector& xi, const BoxDomain& domain) {
  require_size(xi, domain, "xi");
  require_nondegenerate(domain);
  require_closed(xi, domain, "xi");
  const Vector& a = domain.lower();
  const Vector& b = domain.upper();
  const Vector& d = domain.widths();
  double total = 0.0;
  for (Index j = 0; j < xi.size(); ++j) {
    total += xlogx((xi[j] - a[j]) / d[j]) + xlogx((b[j] - xi[j]) / d[j]);
  }
  return total;
}

double bregman_divergence(const Vector& xi, const Vector& eta,
                          const BoxDomain& domain) {
  require_size(xi, domain, "xi");
  require_size(eta, domain, "eta");
  require_nondegenerate(domain);
  require_closed(xi, domain, "xi");
  require_open(eta, domain, "eta");
  const Vector& a = domain.lower();
  const Vector& b = domain.upper();
  const Vector& d = domain.widths();
  double total = 0.0;
  for (Index j = 0; j < xi.size(); ++j) {
    // p ln(p/p') + q ln(q/q') with the first-order terms, which cancel
    // exactly, removed from each side.
    const double below = eta[j] - a[j];
    const double above = b[j] - eta[j];
    const double step = xi[j] - eta[j];
    total += (below / d[j]) * relative_entropy_term(step / below) +
             (above / d[j]) * relative_entropy_term(-step / above);
  }
  return total;
}

double divergence_lower_bound(const Vector& xi, const Vector& eta,
                              const BoxDomain& domain) {
  require_size(xi, domain, "xi");
  require_size(eta, domain, "eta");
  require_nondegenerate(domain);
  require_closed(xi, domain, "xi");
  require_closed(eta, domain, "eta");
  return 2.0 * ((eta - xi).array() / domain.widths().array()).square().sum();
}

double divergence_upper_bound(const Vector& xi, const Vector& eta,
                              const BoxDomain& domain) {
  require_size(xi, domain, "xi");
  require_size(eta, domain, "eta");
  require_nondegenerate(domain);
  require_open(xi, domain, "xi");
  require_open(eta, domain, "eta");
  const Vector& a = domain.lower();
  const Vector& b = domain.upper();
  const Vector& d = domain.widths();
  auto phi = [&](double x, Index j) {
    return std::log(x - a[j]) - std::log(b[j] - x);
  };
  double total = 0.0;
  for (Index j = 0; j < xi.size(); ++j) {
    total += ((eta[j] - xi[j]) / d[j]) * (phi(eta[j], j) - phi(xi[j], j));
  }
  return total;
}

}  // namespace boxdual

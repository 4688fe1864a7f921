#pragma once

#include "boxdual/problem.hpp"

namespace boxdual {

// Kernels built on the two-point endpoint measure of each box coordinate.
//
// The log-moment-generating function is separable,
//     M(tau) = sum_j ln(exp(a_j tau_j) + exp(b_j tau_j)),
// its gradient (the mean map) sends R^n onto the open box, and its convex
// conjugate Psi is a binary entropy in the normalised coordinate
// p_j = (xi_j - a_j) / D_j.  All kernels reject degenerate coordinates
// (D_j = 0); callers eliminate those first.

/// ln(1 + e^u) without overflow.
double softplus(double u) noexcept;
/// 1 / (1 + e^-u) without overflow.
double logistic(double u) noexcept;

double log_mgf(const Vector& tau, const BoxDomain& domain);

/// Gradient of log_mgf: xi_j = a_j + D_j logistic(D_j tau_j). The result is in
/// the open box in exact arithmetic; in double precision a coordinate
/// saturates onto its bound once |D_j tau_j| exceeds roughly 37.
Vector mean_map(const Vector& tau, const BoxDomain& domain);

/// tau_j = ln((xi_j - a_j) / (b_j - xi_j)) / D_j. Throws kBoundaryPoint unless
/// xi is strictly inside the box; no clamping is done.
Vector inverse_mean_map(const Vector& xi, const BoxDomain& domain);

/// Psi(xi), defined on the closed box with 0 ln 0 = 0. Ranges from
/// -n ln 2 (at the midpoint) to 0 (at the vertices).
double dual_potential(const Vector& xi, const BoxDomain& domain);

/// Psi(xi) - Psi(eta) - <xi - eta, grad Psi(eta)>, with xi in the closed box
/// and eta strictly inside. Evaluated as a sum of nonnegative terms, so the
/// result is never negative.
double bregman_divergence(const Vector& xi, const Vector& eta,
                          const BoxDomain& domain);

/// 2 sum_j ((eta_j - xi_j) / D_j)^2; never exceeds the divergence.
double divergence_lower_bound(const Vector& xi, const Vector& eta,
                              const BoxDomain& domain);

/// sum_j ((eta_j - xi_j) / D_j) (phi_j(eta_j) - phi_j(xi_j)) with
/// phi_j(x) = ln((x - a_j) / (b_j - x)); both points strictly inside.
double divergence_upper_bound(const Vector& xi, const Vector& eta,
                              const BoxDomain& domain);

}  // namespace boxdual

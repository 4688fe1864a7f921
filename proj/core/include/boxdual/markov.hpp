#pragma once

#include "boxdual/dual_solver.hpp"
#include "boxdual/problem.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace boxdual::markov {

// Recovering a bounded initial observable f of a finite Markov chain from a
// few entries of P f. State and row indices are 0-based.

enum class ChainKind { kReflectingRandomWalk, kUniformSmoother, kCustom };

std::string_view to_string(ChainKind kind);
std::optional<ChainKind> parse_chain_kind(std::string_view name);

struct ChainSpec {
  ChainKind kind = ChainKind::kCustom;
  Matrix transition;  // row-stochastic

  Index states() const noexcept { return transition.rows(); }
};

/// Reflecting walk: 1/2 to each neighbour, reflected at both ends.
/// Uniform smoother: every entry 1/n. Throws kBadSize for n < 2; custom chains
/// go through custom_chain().
ChainSpec build_chain(Index n, ChainKind kind);

/// Checks square shape, nonnegative entries and unit row sums (1e-12).
ChainSpec custom_chain(Matrix transition);

/// g_i = (P f)_{rows_i}.
Vector forward_observe(const ChainSpec& chain, const Vector& f,
                       const std::vector<Index>& rows);

/// m distinct rows spread evenly over 0..n-1, centred in equal strata.
std::vector<Index> evenly_spaced_rows(Index n, Index m);

/// A smooth profile strictly inside (0, bound): bound (1/2 + 0.35 sin(2 pi j/n)).
Vector smooth_profile(Index n, double bound);

struct ReconstructionCase {
  ChainSpec chain;
  std::vector<Index> observed_rows;
  double bound = 1.0;  // box is [0, bound] in every coordinate
  std::optional<Vector> true_f;
  Vector g;

  void validate() const;
};

/// Case with g generated from a known profile.
ReconstructionCase make_case(ChainSpec chain, std::vector<Index> rows,
                             double bound, Vector true_f);

struct Reconstruction {
  InverseProblem problem;  // rows of P, box [0, bound]^N, data g
  Solution solution;
  Vector f;                    // solver primal
  Vector closed_form;          // bound / (1 + exp(-bound (A^T lambda)_j))
  double closed_form_deviation = 0.0;  // sup |f - closed_form|
  // Diagnostics against true_f, reported only; the problem is
  // underdetermined and recovery is not expected.
  std::optional<double> sup_error;
  std::optional<double> divergence_to_truth;
};

Reconstruction reconstruct_initial(const ReconstructionCase& reconstruction_case,
                                   const SolverOptions& options = {});

}  // namespace boxdual::markov

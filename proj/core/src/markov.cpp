#include "boxdual/markov.hpp"

#include "boxdual/entropy.hpp"
#include "boxdual/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>
#include <utility>

namespace boxdual::markov {

namespace {

constexpr double kStochasticTolerance = 1e-12;

void check_rows(const std::vector<Index>& rows, Index n) {
  std::set<Index> seen;
  for (const Index r : rows) {
    if (r < 0 || r >= n) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  "observed row " + std::to_string(r) + " outside 0.." +
                      std::to_string(n - 1));
    }
    if (!seen.insert(r).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "observed row " + std::to_string(r) + " listed twice");
    }
  }
}

Matrix observed_block(const ChainSpec& chain, const std::vector<Index>& rows) {
  Matrix block(static_cast<Index>(rows.size()), chain.states());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    block.row(static_cast<Index>(i)) = chain.transition.row(rows[i]);
  }
  return block;
}

}  // namespace

std::string_view to_string(ChainKind kind) {
  switch (kind) {
    case ChainKind::kReflectingRandomWalk: return "reflecting_random_walk";
    case ChainKind::kUniformSmoother: return "uniform_smoother";
    case ChainKind::kCustom: return "custom";
  }
  return "custom";
}

std::optional<ChainKind> parse_chain_kind(std::string_view name) {
  for (const ChainKind kind :
       {ChainKind::kReflectingRandomWalk, ChainKind::kUniformSmoother,
        ChainKind::kCustom}) {
    if (name == to_string(kind)) return kind;
  }
  return std::nullopt;
}

ChainSpec build_chain(Index n, ChainKind kind) {
  if (n < 2) {
    throw Error(ErrorCode::kBadSize, "a chain needs at least 2 states");
  }
  ChainSpec chain;
  chain.kind = kind;
  switch (kind) {
    case ChainKind::kReflectingRandomWalk:
      chain.transition = Matrix::Zero(n, n);
      chain.transition(0, 1) = 1.0;
      chain.transition(n - 1, n - 2) = 1.0;
      for (Index i = 1; i + 1 < n; ++i) {
        chain.transition(i, i - 1) = 0.5;
        chain.transition(i, i + 1) = 0.5;
      }
      break;
    case ChainKind::kUniformSmoother:
      chain.transition = Matrix::Constant(n, n, 1.0 / static_cast<double>(n));
      break;
    case ChainKind::kCustom:
      throw Error(ErrorCode::kInvalidArgument,
                  "custom chains are built from a matrix with custom_chain()");
  }
  return chain;
}

ChainSpec custom_chain(Matrix transition) {
  if (transition.rows() != transition.cols() || transition.rows() < 2) {
    throw Error(ErrorCode::kBadSize,
                "transition matrix must be square with at least 2 states");
  }
  if (!transition.allFinite() || (transition.array() < 0.0).any()) {
    throw Error(ErrorCode::kInvalidArgument,
                "transition matrix entries must be finite and nonnegative");
  }
  const Vector sums = transition.rowwise().sum();
  if (((sums.array() - 1.0).abs() > kStochasticTolerance).any()) {
    throw Error(ErrorCode::kInvalidArgument,
                "transition matrix rows must sum to 1");
  }
  return ChainSpec{ChainKind::kCustom, std::move(transition)};
}

Vector forward_observe(const ChainSpec& chain, const Vector& f,
                       const std::vector<Index>& rows) {
  if (f.size() != chain.states()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "observable length does not match the number of states");
  }
  check_rows(rows, chain.states());
  return observed_block(chain, rows) * f;
}

std::vector<Index> evenly_spaced_rows(Index n, Index m) {
  if (m < 1 || m > n) {
    throw Error(ErrorCode::kBadSize,
                "need between 1 and " + std::to_string(n) + " observed rows");
  }
  std::vector<Index> rows;
  rows.reserve(static_cast<std::size_t>(m));
  for (Index i = 0; i < m; ++i) rows.push_back((2 * i + 1) * n / (2 * m));
  return rows;
}

Vector smooth_profile(Index n, double bound) {
  Vector f(n);
  for (Index j = 0; j < n; ++j) {
    const double phase =
        2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
    f[j] = bound * (0.5 + 0.35 * std::sin(phase));
  }
  return f;
}

void ReconstructionCase::validate() const {
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw Error(ErrorCode::kInvalidArgument, "bound must be positive");
  }
  check_rows(observed_rows, chain.states());
  if (g.size() != static_cast<Index>(observed_rows.size())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "observation vector length does not match the observed rows");
  }
  if (true_f) {
    if (true_f->size() != chain.states()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "true observable length does not match the states");
    }
    if ((true_f->array() < 0.0).any() || (true_f->array() > bound).any()) {
      throw Error(ErrorCode::kOutOfBox, "true observable leaves [0, bound]");
    }
  }
}

ReconstructionCase make_case(ChainSpec chain, std::vector<Index> rows,
                             double bound, Vector true_f) {
  ReconstructionCase result;
  result.g = forward_observe(chain, true_f, rows);
  result.chain = std::move(chain);
  result.observed_rows = std::move(rows);
  result.bound = bound;
  result.true_f = std::move(true_f);
  result.validate();
  return result;
}

Reconstruction reconstruct_initial(const ReconstructionCase& reconstruction_case,
                                   const SolverOptions& options) {
  reconstruction_case.validate();
  const double bound = reconstruction_case.bound;
  const Index n = reconstruction_case.chain.states();

  InverseProblem problem(
      observed_block(reconstruction_case.chain,
                     reconstruction_case.observed_rows),
      reconstruction_case.g, BoxDomain::uniform(n, 0.0, bound));
  Solution solution = solve(problem, options);

  Vector closed_form(n);
  for (Index j = 0; j < n; ++j) {
    closed_form[j] = bound / (1.0 + std::exp(-bound * solution.dual_coords[j]));
  }
  const double deviation = (solution.primal - closed_form).cwiseAbs().maxCoeff();

  Reconstruction result{std::move(problem), std::move(solution), Vector(),
                        std::move(closed_form), deviation, std::nullopt,
                        std::nullopt};
  result.f = result.solution.primal;
  if (reconstruction_case.true_f) {
    const Vector& truth = *reconstruction_case.true_f;
    result.sup_error = (result.f - truth).cwiseAbs().maxCoeff();
    const BoxDomain& box = result.problem.domain();
    if (box.contains_strictly(truth) && box.contains(result.f)) {
      result.divergence_to_truth = bregman_divergence(result.f, truth, box);
    }
  }
  return result;
}

}  // namespace boxdual::markov

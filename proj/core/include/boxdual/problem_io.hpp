#pragma once

#include "boxdual/dual_solver.hpp"
#include "boxdual/markov.hpp"
#include "boxdual/problem.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace boxdual::io {

// Problem file grammar (see docs/problem-format.md):
//
//   # comment                  '#' starts a comment anywhere on a line
//   dimensions <M> <N>         first statement
//   matrix                     M lines of N numbers (row-major)
//   bounds                     N lines "lower upper"
//   data                       M lines, one number each
//   noise_bounds               optional; M lines "lower upper"
//
// Blocks after `dimensions` may come in any order, each at most once. A block
// runs until the next keyword line or the end of the input.

using ParsedProblem = std::variant<InverseProblem, NoisyInverseProblem>;

/// Throws ParseError (with line and column) on malformed text; validation
/// failures of the parsed instance propagate as their own Error codes.
ParsedProblem parse_problem(std::string_view text);
ParsedProblem read_problem_file(const std::filesystem::path& path);

std::string render_problem(const InverseProblem& problem);
std::string render_problem(const NoisyInverseProblem& problem);

/// printf "%.17g": every double survives a render/parse round trip.
std::string format_number(double value);

enum class ReportFormat { kText, kDelimited };

std::optional<ReportFormat> parse_report_format(std::string_view name);

struct SensitivitySummary {
  Vector primal_jacobian_diagonal;  // (d x / d y)_kk, k < min(N, M)
  double conditioning = 0.0;
};

struct SolutionReport {
  Solution solution;
  Index primal_size = 0;        // leading entries of solution.primal that are x
  std::optional<Vector> noise;  // recovered noise for the augmented problem
  std::optional<SensitivitySummary> sensitivity;
  std::optional<std::string> sensitivity_unavailable;  // reason, when absent
};

/// Report for a plain solve: x is the whole primal vector.
SolutionReport make_report(const Solution& solution);
SolutionReport make_report(const NoisySolution& solution);

/// Renders stored values only; nothing is recomputed.
std::string render_report(const SolutionReport& report, ReportFormat format);

std::string render_reconstruction(const markov::ReconstructionCase& input,
                                  const markov::Reconstruction& result,
                                  ReportFormat format);

}  // namespace boxdual::io

#include "cli.hpp"

#include "boxdual/boxdual.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <variant>

namespace boxdual::cli {

namespace {

struct Settings {
  double tolerance = SolverOptions{}.tolerance;
  int max_iterations = SolverOptions{}.max_iterations;
  std::string output;
  std::string format = "text";

  SolverOptions solver() const {
    SolverOptions options;
    options.tolerance = tolerance;
    options.max_iterations = max_iterations;
    return options;
  }
  io::ReportFormat report_format() const {
    return io::parse_report_format(format).value_or(io::ReportFormat::kText);
  }
};

struct DemoSettings {
  Index states = 50;
  Index observed = 10;
  double bound = 1.0;
  std::string kind = "reflecting_random_walk";
};

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::kConverged: return kExitOk;
    case SolveStatus::kInfeasible: return kExitInfeasible;
    case SolveStatus::kMaxIterations:
    case SolveStatus::kStalled: return kExitNotConverged;
  }
  return kExitNotConverged;
}

void explain_status(const Solution& solution, std::ostream& err) {
  switch (solution.status) {
    case SolveStatus::kConverged: return;
    case SolveStatus::kInfeasible:
      err << "error: problem is infeasible: the data cannot be reached from "
             "the box (multiplier norm exceeded the divergence threshold)\n";
      return;
    case SolveStatus::kMaxIterations:
      err << "error: solver did not converge within " << solution.iterations
          << " iterations (residual " << io::format_number(solution.residual)
          << ")\n";
      return;
    case SolveStatus::kStalled:
      err << "error: solver stalled after " << solution.iterations
          << " iterations (residual " << io::format_number(solution.residual)
          << ")\n";
      return;
  }
}

void emit(const Settings& settings, const std::string& text, std::ostream& out) {
  if (settings.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(settings.output, std::ios::binary);
  if (!file) {
    throw Error(ErrorCode::kInvalidArgument,
                "cannot write output file '" + settings.output + "'");
  }
  file << text;
}

// The problem solved by the command: the clean problem itself, or the
// augmented [A I] problem for a noisy file.
InverseProblem working_problem(const io::ParsedProblem& parsed) {
  if (const auto* noisy = std::get_if<NoisyInverseProblem>(&parsed)) {
    return augment(*noisy);
  }
  return std::get<InverseProblem>(parsed);
}

void attach_sensitivity(io::SolutionReport& report,
                        const InverseProblem& problem) {
  if (!report.solution.converged()) return;
  try {
    const SensitivityReport sensitivity =
        analyze_sensitivity(report.solution, problem);
    const Index k = std::min(report.primal_size, problem.rows());
    report.sensitivity = io::SensitivitySummary{
        sensitivity.primal_jacobian.diagonal().head(k),
        sensitivity.conditioning};
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSingularNormalMatrix) throw;
    report.sensitivity_unavailable = e.what();
  }
}

int run_solve(const Settings& settings, const std::string& path, bool noisy,
              bool with_sensitivity, std::ostream& out, std::ostream& err) {
  const io::ParsedProblem parsed = io::read_problem_file(path);
  const bool file_is_noisy = std::holds_alternative<NoisyInverseProblem>(parsed);
  if (noisy && !file_is_noisy) {
    err << "error: '" << path << "' has no noise_bounds block\n";
    return kExitInputError;
  }
  if (!noisy && !with_sensitivity && file_is_noisy) {
    err << "error: '" << path
        << "' has a noise_bounds block; use solve-noisy\n";
    return kExitInputError;
  }

  io::SolutionReport report;
  if (file_is_noisy) {
    report = io::make_report(
        solve_noisy(std::get<NoisyInverseProblem>(parsed), settings.solver()));
  } else {
    report = io::make_report(
        solve(std::get<InverseProblem>(parsed), settings.solver()));
  }
  if (with_sensitivity) attach_sensitivity(report, working_problem(parsed));

  emit(settings, io::render_report(report, settings.report_format()), out);
  explain_status(report.solution, err);
  return exit_code(report.solution.status);
}

struct CheckLine {
  enum class Outcome { kPass, kFail, kSkip } outcome;
  std::string name;
  std::string detail;
};

std::string describe(double value, double limit) {
  return io::format_number(value) + " (limit " + io::format_number(limit) + ")";
}

std::vector<CheckLine> run_checks(const InverseProblem& problem,
                                  const Solution& solution) {
  using Outcome = CheckLine::Outcome;
  std::vector<CheckLine> lines;
  auto bound_check = [&](const std::string& name, double value, double limit) {
    lines.push_back({value <= limit ? Outcome::kPass : Outcome::kFail, name,
                     describe(value, limit)});
  };

  const ReducedProblem reduction = eliminate_degenerate(problem);
  const InverseProblem& reduced = reduction.reduced;
  Vector x(reduced.cols());
  Vector tau(reduced.cols());
  for (std::size_t k = 0; k < reduction.free_indices.size(); ++k) {
    x[static_cast<Index>(k)] = solution.primal[reduction.free_indices[k]];
    tau[static_cast<Index>(k)] = solution.dual_coords[reduction.free_indices[k]];
  }

  bound_check("residual", solution.residual, 1e-8);
  bound_check("duality_gap", solution.gap, gap_tolerance(reduced.cols()));

  const BoxDomain& box = reduced.domain();
  double margin = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < x.size(); ++j) {
    margin = std::min({margin, x[j] - box.lower()[j], box.upper()[j] - x[j]});
  }
  lines.push_back({margin > 0.0 ? Outcome::kPass : Outcome::kFail,
                   "strict_interiority",
                   "smallest distance to a bound " + io::format_number(margin)});

  const double mgf = log_mgf(tau, box);
  const double pairing = tau.dot(x);
  const double young = dual_potential(x, box) + mgf - pairing;
  bound_check("fenchel_young", std::abs(young),
              1e-10 * (1.0 + std::abs(mgf) + std::abs(pairing)));

  if (reduced.rows() <= reduced.cols()) {
    try {
      const Matrix jacobian = primal_jacobian(solution, problem);
      const Matrix product = problem.matrix() * jacobian;
      const double error =
          (product - Matrix::Identity(product.rows(), product.cols()))
              .cwiseAbs()
              .maxCoeff();
      bound_check("constraint_jacobian", error, 1e-8);
    } catch (const Error& e) {
      lines.push_back({Outcome::kSkip, "constraint_jacobian", e.what()});
    }
  } else {
    lines.push_back({Outcome::kSkip, "constraint_jacobian",
                     "more constraints than free coordinates"});
  }

  try {
    const oracle::OracleResult penalty = oracle::penalty_descent_solve(reduced);
    bound_check("penalty_oracle_agreement",
                (penalty.best_point - x).cwiseAbs().maxCoeff(), 1e-4);
  } catch (const Error& e) {
    lines.push_back({Outcome::kSkip, "penalty_oracle_agreement", e.what()});
  }

  if (reduced.cols() >= 1 && reduced.cols() <= 4) {
    constexpr int kGridPoints = 60;
    const double step =
        box.widths().maxCoeff() / static_cast<double>(kGridPoints - 1);
    const double tolerance =
        0.5 * step * reduced.matrix().cwiseAbs().rowwise().sum().maxCoeff();
    try {
      const oracle::OracleResult grid =
          oracle::brute_force_solve(reduced, kGridPoints, tolerance);
      // Weak duality: any grid point g with ||A g - y|| <= t has
      // Psi(g) >= Sigma(y, lambda) - ||lambda||_1 t.
      const double slack =
          solution.gap + solution.multiplier.lpNorm<1>() * tolerance + 1e-6;
      bound_check("grid_oracle_dominance",
                  solution.primal_value - grid.best_value, slack);
    } catch (const Error& e) {
      lines.push_back({Outcome::kSkip, "grid_oracle_dominance", e.what()});
    }
  } else {
    lines.push_back({Outcome::kSkip, "grid_oracle_dominance",
                     "more than 4 free coordinates"});
  }
  return lines;
}

int run_check(const Settings& settings, const std::string& path,
              std::ostream& out, std::ostream& err) {
  const io::ParsedProblem parsed = io::read_problem_file(path);
  const InverseProblem problem = working_problem(parsed);
  const Solution solution = solve(problem, settings.solver());

  std::ostringstream text;
  text << "solver: " << to_string(solution.status) << " after "
       << solution.iterations << " iterations\n";
  if (!solution.converged()) {
    emit(settings, text.str(), out);
    explain_status(solution, err);
    return exit_code(solution.status);
  }

  bool all_pass = true;
  for (const CheckLine& line : run_checks(problem, solution)) {
    const char* tag = line.outcome == CheckLine::Outcome::kPass   ? "PASS"
                      : line.outcome == CheckLine::Outcome::kFail ? "FAIL"
                                                                  : "SKIP";
    if (line.outcome == CheckLine::Outcome::kFail) all_pass = false;
    text << tag << ' ' << line.name << ": " << line.detail << '\n';
  }
  emit(settings, text.str(), out);
  return all_pass ? kExitOk : kExitCheckFailed;
}

int run_demo(const Settings& settings, const DemoSettings& demo,
             std::ostream& out, std::ostream& err) {
  const auto kind = markov::parse_chain_kind(demo.kind);
  if (!kind || *kind == markov::ChainKind::kCustom) {
    err << "error: --kind must be reflecting_random_walk or uniform_smoother\n";
    return kExitInputError;
  }
  markov::ChainSpec chain = markov::build_chain(demo.states, *kind);
  std::vector<Index> rows = markov::evenly_spaced_rows(demo.states, demo.observed);
  const markov::ReconstructionCase input = markov::make_case(
      std::move(chain), std::move(rows), demo.bound,
      markov::smooth_profile(demo.states, demo.bound));
  const markov::Reconstruction result =
      markov::reconstruct_initial(input, settings.solver());

  emit(settings,
       io::render_reconstruction(input, result, settings.report_format()), out);
  explain_status(result.solution, err);
  return exit_code(result.solution.status);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Box-constrained linear inverse problems solved through the "
               "dual entropy",
               "boxdual"};
  app.fallthrough();
  app.require_subcommand(1);

  Settings settings;
  app.add_option("--tol", settings.tolerance,
                 "Dual gradient sup-norm at which the solve stops")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-iter", settings.max_iterations, "Iteration limit")
      ->check(CLI::PositiveNumber);
  app.add_option("--output", settings.output, "Write the report to this file");
  app.add_option("--format", settings.format, "Report format")
      ->check(CLI::IsMember({"text", "delimited"}));

  std::string path;
  auto* solve_cmd = app.add_subcommand("solve", "Solve A x = y over the box");
  solve_cmd->add_option("file", path, "Problem file")->required();
  auto* noisy_cmd =
      app.add_subcommand("solve-noisy", "Solve A x + e = y with a noise box");
  noisy_cmd->add_option("file", path, "Problem file")->required();
  auto* sensitivity_cmd = app.add_subcommand(
      "sensitivity", "Solve and report the data sensitivity of the solution");
  sensitivity_cmd->add_option("file", path, "Problem file")->required();
  auto* check_cmd = app.add_subcommand(
      "check", "Solve and verify optimality, duality and oracle agreement");
  check_cmd->add_option("file", path, "Problem file")->required();

  DemoSettings demo;
  auto* demo_cmd = app.add_subcommand(
      "demo-markov", "Reconstruct a Markov chain's initial observable");
  demo_cmd->add_option("--n", demo.states, "Number of states")
      ->check(CLI::Range(Index{2}, Index{100000}));
  demo_cmd->add_option("--m", demo.observed, "Number of observed states")
      ->check(CLI::PositiveNumber);
  demo_cmd->add_option("--bound", demo.bound, "Upper bound b of f")
      ->check(CLI::PositiveNumber);
  demo_cmd->add_option("--kind", demo.kind, "Chain kind")
      ->check(CLI::IsMember({"reflecting_random_walk", "uniform_smoother"}));

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (solve_cmd->parsed()) {
      return run_solve(settings, path, false, false, out, err);
    }
    if (noisy_cmd->parsed()) {
      return run_solve(settings, path, true, false, out, err);
    }
    if (sensitivity_cmd->parsed()) {
      return run_solve(settings, path, false, true, out, err);
    }
    if (check_cmd->parsed()) return run_check(settings, path, out, err);
    if (demo_cmd->parsed()) {
      if (demo.observed > demo.states) {
        err << "error: --m cannot exceed --n\n";
        return kExitInputError;
      }
      return run_demo(settings, demo, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace boxdual::cli

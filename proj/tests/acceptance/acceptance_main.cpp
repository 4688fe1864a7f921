// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include "boxdual/boxdual.hpp"
#include "support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

namespace boxdual {
namespace {

using testing::Rng;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* format, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, format, value);
  return buffer;
}

std::string sci(double value) { return fmt("%.3g", value); }

InverseProblem with_data(const InverseProblem& p, const Vector& y) {
  return InverseProblem(p.matrix(), y, p.domain());
}

double smallest_margin(const Vector& x, const BoxDomain& box) {
  double margin = std::numeric_limits<double>::infinity();
  for (Index j = 0; j < x.size(); ++j) {
    if (box.is_degenerate(j)) continue;
    margin = std::min({margin, x[j] - box.lower()[j], box.upper()[j] - x[j]});
  }
  return margin;
}

struct Suite {
  std::vector<InverseProblem> problems;
  std::vector<Solution> solutions;
  double seconds = 0.0;
};

Suite duality_suite() {
  Rng rng(20240601);
  Suite suite;
  for (int i = 0; i < 200; ++i) {
    const Index m = testing::uniform_index(rng, 1, 10);
    const Index n = testing::uniform_index(rng, 2, 50);
    suite.problems.push_back(testing::random_feasible(rng, m, n));
  }
  const Stopwatch clock;
  for (const InverseProblem& p : suite.problems) suite.solutions.push_back(solve(p));
  suite.seconds = clock.seconds();
  return suite;
}

Outcome duality_equality(const Suite& suite) {
  int converged = 0;
  double gap = 0.0;
  double residual = 0.0;
  for (std::size_t k = 0; k < suite.problems.size(); ++k) {
    const Solution& s = suite.solutions[k];
    if (s.converged()) ++converged;
    const double psi = dual_potential(s.primal, suite.problems[k].domain());
    gap = std::max(gap, std::abs(psi - dual_objective(s.multiplier, suite.problems[k])));
    residual = std::max(residual, s.residual);
  }
  Outcome o;
  o.pass = converged == 200 && gap <= 1e-8 && residual <= 1e-8 && suite.seconds < 10.0;
  o.detail = std::to_string(converged) + "/200 converged, max gap " + sci(gap) +
             " (limit 1e-08), max residual " + sci(residual) +
             " (limit 1e-08), " + fmt("%.2f", suite.seconds) + " s (limit 10 s)";
  return o;
}

Outcome strict_interiority(const Suite& suite) {
  double margin = std::numeric_limits<double>::infinity();
  int checked = 0;
  for (std::size_t k = 0; k < suite.problems.size(); ++k) {
    if (!suite.solutions[k].converged()) continue;
    ++checked;
    margin = std::min(margin, smallest_margin(suite.solutions[k].primal,
                                              suite.problems[k].domain()));
  }
  Outcome o;
  o.pass = checked == 200 && margin > 1e-12;
  o.detail = std::to_string(checked) + " converged solutions, smallest distance to a bound " +
             sci(margin) + " (limit 1e-12)";
  return o;
}

Outcome conjugate_identities() {
  Rng rng(7);
  double young = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Index n = testing::uniform_index(rng, 1, 6);
    const BoxDomain box = testing::random_box(rng, n);
    const Vector tau = testing::uniform_vector(rng, n, -10.0, 10.0);
    const Vector xi = mean_map(tau, box);
    const double inner = tau.dot(xi);
    const double value = dual_potential(xi, box) + log_mgf(tau, box) - inner;
    young = std::max(young, std::abs(value) / std::max(1.0, std::abs(inner)));
  }

  double gradient = 0.0;
  double hessian = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Index m = testing::uniform_index(rng, 1, 5);
    const InverseProblem p =
        testing::random_feasible(rng, m, testing::uniform_index(rng, 2, 12));
    const Vector lambda = testing::uniform_vector(rng, m, -2.0, 2.0);
    const Vector fd_g = testing::fd_gradient(
        [&](const Vector& l) { return dual_objective(l, p); }, lambda, 1e-5);
    gradient = std::max(gradient,
                        testing::relative_error(fd_g, dual_gradient(lambda, p)));
    const Matrix fd_h = testing::fd_jacobian(
        [&](const Vector& l) { return dual_gradient(l, p); }, lambda, 1e-5);
    hessian = std::max(hessian,
                       testing::relative_error(fd_h, dual_hessian(lambda, p)));
  }
  Outcome o;
  o.pass = young <= 1e-10 && gradient <= 1e-6 && hessian <= 1e-5;
  o.detail = "Fenchel-Young " + sci(young) + " (limit 1e-10, 1000 tau), gradient " +
             sci(gradient) + " (limit 1e-06), Hessian " + sci(hessian) +
             " (limit 1e-05)";
  return o;
}

Outcome divergence_sandwich() {
  Rng rng(11);
  double worst = 0.0;
  int pairs = 0;
  for (int b = 0; b < 10; ++b) {
    const BoxDomain box = testing::random_box(rng, testing::uniform_index(rng, 1, 8));
    for (int i = 0; i < 1000; ++i, ++pairs) {
      const Vector xi = testing::random_interior(rng, box, 1e-6);
      const Vector eta = testing::random_interior(rng, box, 1e-6);
      const double d = bregman_divergence(xi, eta, box);
      worst = std::max({worst, divergence_lower_bound(xi, eta, box) - d,
                        d - divergence_upper_bound(xi, eta, box)});
    }
  }
  Outcome o;
  o.pass = worst <= 1e-12;
  o.detail = std::to_string(pairs) + " pairs over 10 boxes, largest violation " +
             sci(worst) + " (limit 1e-12)";
  return o;
}

Outcome oracle_equivalence() {
  Rng rng(3);
  constexpr int kPoints = 100;
  const Stopwatch clock;
  double dominance = -std::numeric_limits<double>::infinity();
  double distance = 0.0;
  double penalty = 0.0;
  int converged = 0;
  for (int i = 0; i < 30; ++i) {
    const Index m = testing::uniform_index(rng, 1, 2);
    const Index n = testing::uniform_index(rng, m + 1, 4);
    const InverseProblem p = testing::random_grid_aligned(rng, m, n, kPoints);
    const Solution s = solve(p);
    if (s.converged()) ++converged;
    const oracle::OracleResult grid = oracle::brute_force_solve(p, kPoints, 1e-9);
    dominance = std::max(dominance, s.primal_value - grid.best_value);
    distance = std::max(distance,
                        testing::max_abs(grid.best_point - s.primal) / grid.grid_step);
    const oracle::OracleResult descent = oracle::penalty_descent_solve(p);
    penalty = std::max(penalty, testing::max_abs(descent.best_point - s.primal));
  }
  const double seconds = clock.seconds();
  Outcome o;
  o.pass = converged == 30 && dominance <= 1e-6 && distance <= 2.0 &&
           penalty <= 1e-4 && seconds < 60.0;
  o.detail = "30 instances, max Psi(x*) - grid min " + sci(dominance) +
             " (limit 1e-06), max distance " + fmt("%.2f", distance) +
             " grid steps (limit 2), penalty descent " + sci(penalty) +
             " (limit 1e-04), " + fmt("%.2f", seconds) + " s (limit 60 s)";
  return o;
}

Outcome sensitivity() {
  Rng rng(5);
  double fd = 0.0;
  double identity = 0.0;
  double symmetry = 0.0;
  int converged = 0;
  for (int i = 0; i < 20; ++i) {
    const Index m = testing::uniform_index(rng, 1, 3);
    const InverseProblem p =
        testing::random_feasible(rng, m, testing::uniform_index(rng, m + 1, 8));
    const Solution s = solve(p);
    if (!s.converged()) continue;
    const SensitivityReport r = analyze_sensitivity(s, p);

    Matrix numeric(m, m);
    bool resolved = true;
    for (Index k = 0; k < m; ++k) {
      const double h = 1e-5 * (1.0 + std::abs(p.data()[k]));
      Vector up = p.data();
      Vector down = p.data();
      up[k] += h;
      down[k] -= h;
      const Solution su = solve(with_data(p, up));
      const Solution sd = solve(with_data(p, down));
      resolved = resolved && su.converged() && sd.converged();
      numeric.col(k) = (su.multiplier - sd.multiplier) / (2.0 * h);
    }
    if (!resolved) continue;
    ++converged;
    fd = std::max(fd, testing::relative_error(numeric, r.multiplier_jacobian));
    identity = std::max(identity, testing::max_abs(p.matrix() * r.primal_jacobian -
                                                   Matrix::Identity(m, m)));
    symmetry = std::max(symmetry,
                        testing::max_abs(r.multiplier_jacobian -
                                         r.multiplier_jacobian.transpose()) /
                            testing::max_abs(r.multiplier_jacobian));
  }
  Outcome o;
  o.pass = converged == 20 && fd <= 1e-4 && identity <= 1e-8 && symmetry <= 1e-10;
  o.detail = std::to_string(converged) + "/20 instances, finite differences " +
             sci(fd) + " (limit 1e-04), A dx/dy - I " + sci(identity) +
             " (limit 1e-08), asymmetry " + sci(symmetry) + " (limit 1e-10)";
  return o;
}

Outcome monotonicity() {
  Rng rng(9);
  double lowest = std::numeric_limits<double>::infinity();
  double mismatch = 0.0;
  int pairs = 0;
  int total = 0;
  for (int t = 0; t < 3; ++t) {
    const InverseProblem base = testing::random_feasible(rng, 2, 4);
    for (int i = 0; i < 100; ++i, ++total) {
      const InverseProblem p1 = with_data(
          base, base.matrix() * testing::random_interior(rng, base.domain(), 0.02));
      const InverseProblem p2 = with_data(
          base, base.matrix() * testing::random_interior(rng, base.domain(), 0.02));
      const Solution s1 = solve(p1);
      const Solution s2 = solve(p2);
      if (!s1.converged() || !s2.converged()) continue;
      ++pairs;
      const LeChatelierForms f = le_chatelier_forms(s1, p1, s2, p2);
      lowest = std::min({lowest, f.multiplier_form, f.primal_form});
      mismatch = std::max(mismatch, std::abs(f.multiplier_form - f.primal_form));
    }
  }
  Outcome o;
  o.pass = pairs == total && lowest >= -1e-10 && mismatch <= 1e-8;
  o.detail = std::to_string(pairs) + "/" + std::to_string(total) +
             " pairs over 3 templates, smallest form " + sci(lowest) +
             " (limit -1e-10), form mismatch " + sci(mismatch) + " (limit 1e-08)";
  return o;
}

Outcome markov_demo() {
  const markov::ChainSpec chain =
      markov::build_chain(50, markov::ChainKind::kReflectingRandomWalk);
  const markov::ReconstructionCase input = markov::make_case(
      chain, markov::evenly_spaced_rows(50, 10), 1.0, markov::smooth_profile(50, 1.0));
  const Stopwatch clock;
  const markov::Reconstruction r = markov::reconstruct_initial(input);
  const double seconds = clock.seconds();
  const bool inside = r.f.minCoeff() > 0.0 && r.f.maxCoeff() < 1.0;
  Outcome o;
  o.pass = r.solution.converged() && seconds < 1.0 && r.solution.residual <= 1e-8 &&
           r.closed_form_deviation <= 1e-10 && inside;
  o.detail = std::string(to_string(r.solution.status)) + " in " +
             fmt("%.4f", seconds) + " s (limit 1 s), residual " +
             sci(r.solution.residual) + " (limit 1e-08), closed form " +
             sci(r.closed_form_deviation) + " (limit 1e-10), " +
             (inside ? "strictly inside (0,1)^50" : "touches the bounds");
  return o;
}

Outcome noisy_variant() {
  Rng rng(13);
  double reproduction = 0.0;
  bool zero_converged = true;
  for (int i = 0; i < 20; ++i) {
    const Index m = testing::uniform_index(rng, 1, 4);
    const InverseProblem base =
        testing::random_feasible(rng, m, testing::uniform_index(rng, m + 1, 10));
    const Solution clean = solve(base);
    const NoisySolution noisy =
        solve_noisy(NoisyInverseProblem(base, BoxDomain::uniform(m, 0.0, 0.0)));
    zero_converged = zero_converged && clean.converged() && noisy.joint.converged();
    reproduction = std::max(reproduction, testing::max_abs(noisy.primal - clean.primal));
  }

  int absorbed = 0;
  double residual = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Index m = 2;
    const Index n = 4;
    const InverseProblem template_problem = testing::random_feasible(rng, m, n);
    const Matrix a = template_problem.matrix().cwiseAbs();
    const BoxDomain& box = template_problem.domain();
    Vector y = a * box.upper();
    y[testing::uniform_index(rng, 0, m - 1)] += 0.1;
    const InverseProblem base(a, y, box);
    const double reach = a.cwiseAbs().rowwise().sum().maxCoeff() * box.widths().maxCoeff();
    const BoxDomain noise = BoxDomain::uniform(m, -reach - 1.0, reach + 1.0);
    const bool clean_infeasible = solve(base).status == SolveStatus::kInfeasible;
    const NoisySolution s = solve_noisy(NoisyInverseProblem(base, noise));
    const double r = testing::max_abs(a * s.primal + s.noise - y);
    residual = std::max(residual, r);
    if (clean_infeasible && s.joint.converged() && r <= 1e-8 &&
        box.contains_strictly(s.primal) && noise.contains_strictly(s.noise)) {
      ++absorbed;
    }
  }
  Outcome o;
  o.pass = zero_converged && reproduction <= 1e-10 && absorbed == 20;
  o.detail = "zero-width noise reproduces clean x to " + sci(reproduction) +
             " (limit 1e-10); " + std::to_string(absorbed) +
             "/20 data outside A(box) absorbed, max residual " + sci(residual) +
             " (limit 1e-08)";
  return o;
}

Outcome infeasibility() {
  const InverseProblem p(Matrix::Ones(1, 2), Vector::Constant(1, 2.5),
                         BoxDomain::uniform(2, 0.0, 1.0));
  const Stopwatch clock;
  const Solution s = solve(p);
  const double seconds = clock.seconds();
  Outcome o;
  o.pass = s.status == SolveStatus::kInfeasible && !s.converged();
  o.detail = "A=[1 1], y=2.5: " + std::string(to_string(s.status)) + " after " +
             std::to_string(s.iterations) + " iterations, |lambda| " +
             sci(s.multiplier.lpNorm<Eigen::Infinity>()) + ", " +
             fmt("%.4f", seconds) + " s";
  return o;
}

}  // namespace
}  // namespace boxdual

int main() {
  using namespace boxdual;
  const Suite suite = duality_suite();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"duality_equality", [&] { return duality_equality(suite); }},
      {"strict_interiority", [&] { return strict_interiority(suite); }},
      {"conjugate_identities", conjugate_identities},
      {"divergence_sandwich", divergence_sandwich},
      {"oracle_equivalence", oracle_equivalence},
      {"sensitivity", sensitivity},
      {"monotonicity", monotonicity},
      {"markov_demo", markov_demo},
      {"noisy_variant", noisy_variant},
      {"infeasibility", infeasibility},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("%s %s: %s\n", outcome.pass ? "PASS" : "FAIL", name.c_str(),
                outcome.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lievar/io.hpp"
#include "lievar/studies.hpp"

// Exit codes: 0 success / converged, 1 configuration or usage error,
// 2 solver ran but did not meet its target (outputs are still written).

namespace {

using namespace lievar;

int cmd_solve(const std::string& config_path, const std::string& output_path,
              const std::string& report_path, const std::optional<std::string>& retraction,
              const std::optional<double>& tol, const std::optional<int>& max_iter) {
  ProblemConfig cfg = load_config(config_path);
  for (const std::string& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
  if (retraction) {
    cfg.rigid.retraction = *retraction;
    cfg.rod.retraction = *retraction;
  }
  if (tol) cfg.newton.tol = *tol;
  if (max_iter) cfg.newton.max_iter = *max_iter;

  if (cfg.kind == ProblemKind::VectorSpace) {
    throw ConfigError("'solve' expects a rigid-body or rod problem; use 'integrate'");
  }

  bool converged = false;
  if (cfg.kind == ProblemKind::RigidBody) {
    const RigidBodySolution sol = solve_rigid_body(cfg.rigid, cfg.newton);
    write_rigid_trajectory_csv(output_path, sol);
    if (!report_path.empty()) {
      write_text_file(report_path, solve_report_json(sol.report, sol.cost, cfg.kind));
    }
    converged = sol.report.converged;
    std::cout << (converged ? "converged" : "not converged") << " in " << sol.report.iterations
              << " iterations, residual " << sol.report.residual << ", cost " << sol.cost << "\n";
  } else {
    const RodSolution sol = solve_rod(cfg.rod, cfg.newton);
    write_rod_trajectory_csv(output_path, sol);
    if (!report_path.empty()) {
      write_text_file(report_path, solve_report_json(sol.report, sol.cost, cfg.kind));
    }
    converged = sol.report.converged;
    std::cout << (converged ? "converged" : "not converged") << " in " << sol.report.iterations
              << " iterations, residual " << sol.report.residual << ", cost " << sol.cost << "\n";
  }
  return converged ? 0 : 2;
}

int cmd_integrate(const std::string& config_path, const std::string& output_path) {
  const ProblemConfig cfg = load_config(config_path);
  if (cfg.kind != ProblemKind::VectorSpace) {
    throw ConfigError("'integrate' expects a vector-space problem");
  }
  const VectorSpaceProblem& p = cfg.vecspace;
  const auto qs = integrate_vector_space(p.M, p.A, p.b, p.q0, p.q1, p.N, p.h);
  write_vector_trajectory_csv(output_path, qs, p.h);
  std::cout << "integrated " << p.N << " steps\n";
  return 0;
}

int cmd_check(const std::string& study, const std::string& output_path, unsigned seed) {
  StudyResult result;
  try {
    result = run_study(study, seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  nlohmann::json j;
  j["study"] = result.name;
  j["pass"] = result.pass;
  j["seed"] = seed;
  j["details"] = nlohmann::json::parse(result.details_json);
  const std::string text = j.dump(2) + "\n";
  if (!output_path.empty()) {
    write_text_file(output_path, text);
  }
  std::cout << result.name << ": " << (result.pass ? "pass" : "FAIL") << "\n";
  return result.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Variational integrators and optimal control on matrix Lie groups"};
  app.require_subcommand(1);

  std::string config_path, output_path, report_path, study;
  std::optional<std::string> retraction;
  std::optional<double> tol;
  std::optional<int> max_iter;
  unsigned seed = 0;

  CLI::App* solve = app.add_subcommand("solve", "solve an optimal-control problem");
  solve->add_option("--config", config_path, "problem configuration (JSON)")->required();
  solve->add_option("--output", output_path, "trajectory output (CSV)")->required();
  solve->add_option("--report", report_path, "solve report output (JSON)");
  solve->add_option("--retraction", retraction, "override the configured retraction");
  solve->add_option("--tol", tol, "override the Newton tolerance");
  solve->add_option("--max-iter", max_iter, "override the Newton iteration cap");

  CLI::App* integrate = app.add_subcommand("integrate", "step the discrete Newton-law recurrence");
  integrate->add_option("--config", config_path, "problem configuration (JSON)")->required();
  integrate->add_option("--output", output_path, "trajectory output (CSV)")->required();

  CLI::App* check = app.add_subcommand("check", "run a validation study");
  check->add_option("--study", study, "study name")->required();
  check->add_option("--output", output_path, "report output (JSON)");
  check->add_option("--seed", seed, "seed for randomized studies");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      return cmd_solve(config_path, output_path, report_path, retraction, tol, max_iter);
    }
    if (integrate->parsed()) return cmd_integrate(config_path, output_path);
    if (check->parsed()) return cmd_check(study, output_path, seed);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

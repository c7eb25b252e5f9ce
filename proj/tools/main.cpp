#include <iostream>

#include <CLI11.hpp>

#include <shellbreak/errors.hpp>

#include "commands.hpp"
#include "output.hpp"

namespace {

void check_config(const cli::RunConfig& cfg) {
  using shellbreak::ParameterError;
  if (cfg.format != "csv" && cfg.format != "json") throw ParameterError("--format must be csv or json");
  if (cfg.n < 16) throw ParameterError("--n must be at least 16");
  if (cfg.solve.threads < 1) throw ParameterError("--threads must be positive");
  if (cfg.solve.extra_random_starts < 0) throw ParameterError("--starts must be nonnegative");
  if (cfg.solve.quad_order < 1 || cfg.solve.quad_order > 10) throw ParameterError("--quad-order must lie in [1, 10]");
  if (cfg.endpoint != 0.0 && cfg.endpoint != 1.0) throw ParameterError("--endpoint must be 0 or 1");
  if (cfg.command == "constants" || cfg.command == "verify") return;
  if (cfg.command == "sobolev") {
    if (cfg.params.N < 1) throw ParameterError("N must be >= 1");
    return;
  }
  shellbreak::ProblemParams p = cfg.params;
  if (p.p == 0.0) p.p = cli::default_p(p.N);
  if (cfg.command == "moving-shell") p.R = 0.0;
  p.validate();
  for (double a : cfg.alphas) {
    if (!(a >= 0.0)) throw ParameterError("alphas must be nonnegative");
  }
  for (double R : cfg.R_list) {
    if (!(R >= 0.0 && R <= 1.0)) throw ParameterError("R values must lie in [0, 1]");
  }
  if (cfg.command == "moving-shell" && !(cfg.delta > 0.0)) throw ParameterError("--delta must be positive");
}

}  // namespace

int main(int argc, char** argv) {
  cli::RunConfig cfg;
  CLI::App app{"Groundstates of -Δu = V(|x|) u^p in the unit ball with a vanishing shell weight"};
  app.set_config("--config", "", "Flat key = value configuration file");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--N", cfg.params.N, "Space dimension");
  app.add_option("--p", cfg.params.p, "Exponent (default: 2 for N = 3, else 3)");
  app.add_option("--R", cfg.params.R, "Shell radius in [0, 1]");
  app.add_option("--alpha", cfg.params.alpha, "Weight exponent");
  app.add_option("--alphas", cfg.alphas, "Comma-separated alpha values")->delimiter(',');
  app.add_option("--Rs", cfg.R_list, "Comma-separated shell radii (continuity)")->delimiter(',');
  app.add_option("--ps", cfg.p_list, "Comma-separated exponents (sobolev)")->delimiter(',');
  app.add_option("--delta", cfg.delta, "Moving-shell decay R = alpha^-delta");
  app.add_option("--endpoint", cfg.endpoint, "Continuity endpoint, 0 or 1");
  app.add_option("--S", cfg.sobolev, "Sobolev constant used for R0 (constants)");
  app.add_option("--n", cfg.n, "Radial nodes for solve-radial and sobolev");
  app.add_option("--n-r", cfg.grids.n_r, "Radial intervals of the axisymmetric grid");
  app.add_option("--n-theta", cfg.grids.n_theta, "Angular intervals of the axisymmetric grid");
  app.add_option("--grading", cfg.grids.grading_strength, "Node clustering strength (0 = uniform)");
  app.add_option("--max-iter", cfg.solve.max_iter, "Iteration cap per start");
  app.add_option("--rel-change-tol", cfg.solve.rel_change_tol, "Relative quotient change stopping tolerance");
  app.add_option("--grad-tol", cfg.solve.grad_tol, "Projected gradient stopping tolerance");
  app.add_option("--quad-order", cfg.solve.quad_order, "Gauss points per element");
  app.add_option("--starts", cfg.solve.extra_random_starts, "Extra seeded random starts");
  app.add_option("--seed", cfg.solve.seed, "Seed of the random starts");
  app.add_option("--threads", cfg.solve.threads, "Worker threads");
  app.add_option("--out", cfg.out, "Output file (default: stdout)");
  app.add_option("--field", cfg.field, "CSV file for the computed profile/field (solve-*)");
  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--result", cfg.result, "verify: re-check the diagnostics stored in a result JSON");

  struct Command {
    const char* name;
    const char* help;
    cli::CommandOutput (*run)(const cli::RunConfig&);
  };
  const Command commands[] = {
      {"constants", "Closed-form constants for (N, p)", cli::cmd_constants},
      {"solve-radial", "Radial groundstate and diagnostics", cli::cmd_solve_radial},
      {"solve-ball", "Axisymmetric groundstate and symmetry gap", cli::cmd_solve_ball},
      {"sweep", "Both solvers over a list of alpha", cli::cmd_sweep},
      {"sobolev", "Best subcritical Sobolev constants of the ball", cli::cmd_sobolev},
      {"moving-shell", "Sweep with R = alpha^-delta", cli::cmd_moving_shell},
      {"continuity", "S_full as R approaches 0 or 1", cli::cmd_continuity},
      {"verify", "Invariant suite, or a result round trip with --result", cli::cmd_verify},
  };
  for (const auto& c : commands) app.add_subcommand(c.name, c.help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const Command* chosen = nullptr;
  for (const auto& c : commands) {
    if (app.got_subcommand(c.name)) chosen = &c;
  }
  cfg.command = chosen->name;

  try {
    check_config(cfg);
  } catch (const std::exception& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return 2;
  }

  cli::CommandOutput result;
  try {
    result = chosen->run(cfg);
    cli::OutputSet files;
    if (!cfg.out.empty()) files.add(cfg.out, result.main);
    for (auto& [path, content] : result.extra) files.add(path, std::move(content));
    files.commit();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  if (cfg.out.empty()) std::cout << result.main;
  return result.ok ? 0 : 1;
}

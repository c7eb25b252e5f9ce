#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include <shellbreak/experiments.hpp>

namespace cli {

struct RunConfig {
  std::string command;
  shellbreak::ProblemParams params{3, 0.0, 0.0, 40.0};  ///< p = 0 means the per-dimension default
  std::vector<double> alphas{10, 20, 40, 80, 160, 320};
  std::vector<double> R_list;
  std::vector<double> p_list;
  double delta = 1.0;
  double endpoint = 0.0;
  std::optional<double> sobolev;
  int n = 800;
  shellbreak::GridSpec grids;
  shellbreak::SolveOptions solve;
  std::string out;
  std::string field;
  std::string format = "json";
  std::string result;  ///< verify: result file to re-check

  nlohmann::ordered_json echo() const;
};

/// Default p per dimension: 2 for N = 3, 3 otherwise.
double default_p(int N);

struct CommandOutput {
  std::string main;                                      ///< table or result in the requested format
  std::vector<std::pair<std::string, std::string>> extra;  ///< (path, content)
  bool ok = true;
};

CommandOutput cmd_constants(const RunConfig& cfg);
CommandOutput cmd_solve_radial(const RunConfig& cfg);
CommandOutput cmd_solve_ball(const RunConfig& cfg);
CommandOutput cmd_sweep(const RunConfig& cfg);
CommandOutput cmd_sobolev(const RunConfig& cfg);
CommandOutput cmd_moving_shell(const RunConfig& cfg);
CommandOutput cmd_continuity(const RunConfig& cfg);
CommandOutput cmd_verify(const RunConfig& cfg);

}  // namespace cli

#include "commands.hpp"

#include <cmath>
#include <limits>

#include <shellbreak/errors.hpp>
#include <shellbreak/special.hpp>

#include "output.hpp"

namespace cli {

using nlohmann::ordered_json;
using namespace shellbreak;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ordered_json params_json(const ProblemParams& p) {
  return {{"N", p.N}, {"p", p.p}, {"R", p.R}, {"alpha", p.alpha}};
}

ordered_json report_json(const DiagnosticReport& d) {
  return {{"nehari_residual", num(d.nehari_residual)},
          {"pohozaev_residual", num(d.pohozaev_residual)},
          {"ni_violation", num(d.ni_violation)},
          {"boundary_flux", num(d.boundary_flux)},
          {"lemma1_slack", num(d.lemma1_slack)},
          {"lemma2_slack", num(d.lemma2_slack)},
          {"lemma3_slack", num(d.lemma3_slack)},
          {"A_alpha", num(d.A_alpha)},
          {"B_alpha", num(d.B_alpha)},
          {"planar_eps", num(d.planar_eps)}};
}

ordered_json radial_json(const RadialResult& r) {
  ordered_json out;
  out["S_rad"] = num(r.S_rad);
  out["C_rad"] = num(r.C_rad);
  out["beta_peak"] = num(r.beta_peak);
  out["s_peak"] = num(r.s_peak);
  out["iterations"] = r.iterations;
  out["gradient_norm"] = num(r.gradient_norm);
  out["quad_order"] = r.quad_order;
  out["diagnostics"] = report_json(r.residuals);
  out["grid"] = {{"n", r.profile.grid.size()}, {"grading_strength", r.profile.grid.grading_strength}};
  out["profile"] = {{"r", r.profile.grid.nodes}, {"u", r.profile.values}};
  return out;
}

std::string profile_csv(const RadialProfile& prof) {
  CsvTable t({"r", "u"});
  for (std::size_t i = 0; i < prof.values.size(); ++i) t.add({fmt(prof.grid.nodes[i]), fmt(prof.values[i])});
  return t.str();
}

std::string field_csv(const AxisymField& f) {
  const AxisymGrid& g = f.grid;
  if (g.N == 1) {
    CsvTable t({"r", "u"});
    for (std::size_t i = 0; i < g.line.size(); ++i) t.add({fmt(g.line[i]), fmt(f.values[i])});
    return t.str();
  }
  CsvTable t({"r", "theta", "u"});
  for (int i = 0; i <= g.n_r(); ++i) {
    for (int j = 0; j <= g.n_theta(); ++j) t.add({fmt(g.radial.nodes[i]), fmt(g.theta[j]), fmt(f.at(i, j))});
  }
  return t.str();
}

// Flat key/value rendering of a result object for --format csv.
void flatten(const ordered_json& j, const std::string& prefix, CsvTable& t) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    const auto& v = it.value();
    if (v.is_object()) {
      flatten(v, key, t);
    } else if (v.is_array()) {
      continue;
    } else if (v.is_number_float()) {
      t.add({key, fmt(v.get<double>())});
    } else if (v.is_null()) {
      t.add({key, ""});
    } else if (v.is_string()) {
      t.add({key, v.get<std::string>()});
    } else {
      t.add({key, v.dump()});
    }
  }
}

std::string render_result(const RunConfig& cfg, const ordered_json& j) {
  if (cfg.format == "csv") {
    CsvTable t({"key", "value"});
    flatten(j, "", t);
    return t.str();
  }
  return j.dump(2) + "\n";
}

const std::vector<std::string> kRecordColumns = {
    "N", "p", "R", "alpha", "status", "S_rad", "S_full", "C_rad", "C_full", "gap", "broken", "s_peak", "beta_peak",
    "asym_index", "chosen_start", "scaled_S_full", "scaled_S_rad", "scaled_beta", "A_over_B", "nehari_residual",
    "pohozaev_residual", "lemma3_slack"};

std::vector<std::string> record_cells(const SweepRecord& r) {
  std::vector<std::string> c = {std::to_string(r.params.N), fmt(r.params.p), fmt(r.params.R), fmt(r.params.alpha),
                                r.status};
  if (!r.ok()) {
    c.resize(kRecordColumns.size());
    return c;
  }
  for (double x : {r.S_rad, r.S_full, r.C_rad, r.C_full, r.gap}) c.push_back(fmt(x));
  c.push_back(fmt(r.broken));
  for (double x : {r.s_peak, r.beta_peak, r.asym_index}) c.push_back(fmt(x));
  c.push_back(r.chosen_start);
  for (double x : {r.scaled_S_full, r.scaled_S_rad, r.scaled_beta, r.A_over_B, r.nehari_residual, r.pohozaev_residual,
                   r.lemma3_slack}) {
    c.push_back(fmt(x));
  }
  return c;
}

ordered_json record_json(const SweepRecord& r) {
  ordered_json j = params_json(r.params);
  j["status"] = r.status;
  const bool ok = r.ok();
  auto v = [&](double x) { return ok ? num(x) : ordered_json(nullptr); };
  j["S_rad"] = v(r.S_rad);
  j["S_full"] = v(r.S_full);
  j["C_rad"] = v(r.C_rad);
  j["C_full"] = v(r.C_full);
  j["gap"] = v(r.gap);
  j["broken"] = ok ? ordered_json(r.broken) : ordered_json(nullptr);
  j["s_peak"] = v(r.s_peak);
  j["beta_peak"] = v(r.beta_peak);
  j["asym_index"] = v(r.asym_index);
  j["chosen_start"] = r.chosen_start;
  j["scaled_S_full"] = v(r.scaled_S_full);
  j["scaled_S_rad"] = v(r.scaled_S_rad);
  j["scaled_beta"] = v(r.scaled_beta);
  j["A_over_B"] = v(r.A_over_B);
  j["nehari_residual"] = v(r.nehari_residual);
  j["pohozaev_residual"] = v(r.pohozaev_residual);
  j["lemma3_slack"] = v(r.lemma3_slack);
  return j;
}

std::string render_records(const RunConfig& cfg, const std::vector<SweepRecord>& records, ordered_json extra = {}) {
  if (cfg.format == "csv") {
    CsvTable t(kRecordColumns);
    for (const auto& r : records) t.add(record_cells(r));
    return t.str();
  }
  ordered_json j;
  j["command"] = cfg.command;
  j["config"] = cfg.echo();
  if (!extra.is_null()) {
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  }
  j["rows"] = ordered_json::array();
  for (const auto& r : records) j["rows"].push_back(record_json(r));
  return j.dump(2) + "\n";
}

bool all_ok(const std::vector<SweepRecord>& records) {
  for (const auto& r : records) {
    if (!r.ok()) return false;
  }
  return true;
}

ProblemParams effective(const RunConfig& cfg) {
  ProblemParams p = cfg.params;
  if (p.p == 0.0) p.p = default_p(p.N);
  return p;
}

}  // namespace

double default_p(int N) { return N == 3 ? 2.0 : 3.0; }

ordered_json RunConfig::echo() const {
  ordered_json j;
  j["command"] = command;
  ProblemParams eff = params;
  if (eff.p == 0.0) eff.p = default_p(eff.N);
  j["params"] = params_json(eff);
  j["alphas"] = alphas;
  j["R_list"] = R_list;
  j["p_list"] = p_list;
  j["delta"] = delta;
  j["endpoint"] = endpoint;
  j["sobolev"] = sobolev ? ordered_json(*sobolev) : ordered_json(nullptr);
  j["n"] = n;
  j["n_r"] = grids.n_r;
  j["n_theta"] = grids.n_theta;
  j["grading_strength"] = grids.grading_strength;
  j["max_iter"] = solve.max_iter;
  j["rel_change_tol"] = solve.rel_change_tol;
  j["change_window"] = solve.change_window;
  j["grad_tol"] = solve.grad_tol;
  j["quad_order"] = solve.quad_order;
  j["extra_random_starts"] = solve.extra_random_starts;
  j["seed"] = solve.seed;
  j["format"] = format;
  return j;
}

CommandOutput cmd_constants(const RunConfig& cfg) {
  const int N = cfg.params.N;
  const double p = effective(cfg).p;
  CsvTable t({"name", "value", "note"});
  auto add = [&](const std::string& name, auto&& f) {
    try {
      t.add({name, fmt(static_cast<double>(f())), ""});
    } catch (const std::exception& e) {
      t.add({name, "", e.what()});
    }
  };
  add("N", [&] { return N; });
  add("p", [&] { return p; });
  add("K", [&] { return constant_K(N, p); });
  add("K_star", [&] { return constant_K_star(N, p); });
  add("K_lower", [&] { return constant_K_lower(N, p); });
  if (N == 2) {
    const double eps = 1.0 / (p + 1.0);
    add("planar_eps", [&] { return eps; });
    add("K_lower_planar", [&] { return constant_K_lower_planar(p, eps); });
  }
  add("beta", [&] { return lower_beta_exp(N, p, 1.0 / (p + 1.0)); });
  add("sphere_area", [&] { return sphere_area(N); });
  add("sobolev_lower_bound", [&] { return sobolev_lower_bound(N, p); });
  if (cfg.sobolev) add("R0", [&] { return R0(N, p, *cfg.sobolev); });

  CommandOutput out;
  if (cfg.format == "csv") {
    out.main = t.str();
  } else {
    ordered_json j;
    j["command"] = cfg.command;
    j["config"] = cfg.echo();
    j["constants"] = t.to_json();
    out.main = j.dump(2) + "\n";
  }
  return out;
}

CommandOutput cmd_solve_radial(const RunConfig& cfg) {
  const ProblemParams params = effective(cfg);
  ordered_json j;
  j["command"] = cfg.command;
  j["config"] = cfg.echo();
  j["params"] = params_json(params);
  CommandOutput out;
  try {
    const RadialGrid grid = build_radial_grid(params, cfg.n, cfg.grids.grading_strength);
    const RadialResult r = minimize_radial_quotient(params, grid, cfg.solve);
    j["status"] = "ok";
    j["radial"] = radial_json(r);
    if (!cfg.field.empty()) out.extra.emplace_back(cfg.field, profile_csv(r.profile));
  } catch (const std::exception& e) {
    j["status"] = std::string("error: ") + e.what();
    out.ok = false;
  }
  out.main = render_result(cfg, j);
  return out;
}

CommandOutput cmd_solve_ball(const RunConfig& cfg) {
  const ProblemParams params = effective(cfg);
  ordered_json j;
  j["command"] = cfg.command;
  j["config"] = cfg.echo();
  j["params"] = params_json(params);
  CommandOutput out;
  try {
    const AxisymGrid grid = build_axisym_grid(params, cfg.grids.n_r, cfg.grids.n_theta, cfg.grids.grading_strength);
    SolveOptions serial = cfg.solve;
    serial.threads = 1;
    const RadialResult radial = minimize_radial_quotient(params, grid.radial, serial);
    const BallResult full = minimize_full_quotient(params, grid, cfg.solve);
    const SymmetryGap sg = symmetry_gap(radial, full);
    j["status"] = "ok";
    ordered_json b;
    b["S_full"] = num(full.S_full);
    b["C_full"] = num(full.C_full);
    b["s_peak"] = num(full.s_peak);
    b["beta_peak"] = num(full.beta_peak);
    b["asym_index"] = num(full.asym_index);
    b["chosen_start"] = full.chosen_start;
    b["quad_order"] = full.quad_order;
    b["gap"] = num(sg.gap);
    b["broken"] = sg.broken;
    b["grid"] = {{"n_r", grid.n_r()}, {"n_theta", grid.n_theta()}, {"nodes", grid.node_count()}};
    b["starts"] = ordered_json::array();
    for (const auto& s : full.starts) {
      b["starts"].push_back({{"label", s.label},
                             {"quotient", num(s.quotient)},
                             {"asym_index", num(s.asym_index)},
                             {"iterations", s.iterations},
                             {"gradient_norm", num(s.gradient_norm)}});
    }
    j["ball"] = std::move(b);
    j["radial"] = radial_json(radial);
    if (!cfg.field.empty()) out.extra.emplace_back(cfg.field, field_csv(full.field));
  } catch (const std::exception& e) {
    j["status"] = std::string("error: ") + e.what();
    out.ok = false;
  }
  out.main = render_result(cfg, j);
  return out;
}

CommandOutput cmd_sweep(const RunConfig& cfg) {
  const auto records = sweep_alpha(effective(cfg), cfg.alphas, cfg.grids, cfg.solve);
  CommandOutput out;
  out.ok = all_ok(records);
  out.main = render_records(cfg, records);
  return out;
}

CommandOutput cmd_sobolev(const RunConfig& cfg) {
  const int N = cfg.params.N;
  std::vector<double> ps = cfg.p_list;
  if (ps.empty()) ps = N == 3 ? std::vector<double>{1.5, 2.0, 3.0, 4.0} : std::vector<double>{default_p(N)};
  CsvTable t({"N", "p", "status", "S", "sobolev_lower_bound", "normalized_S"});
  CommandOutput out;
  for (double p : ps) {
    try {
      const double S = sobolev_constant(N, p, cfg.n, cfg.solve);
      double lb = kNaN;
      if (N >= 3) lb = sobolev_lower_bound(N, p);
      t.add({std::to_string(N), fmt(p), "ok", fmt(S), fmt(lb), fmt(S * std::pow(sphere_area(N), 2.0 / (p + 1.0)))});
    } catch (const std::exception& e) {
      t.add({std::to_string(N), fmt(p), e.what(), "", "", ""});
      out.ok = false;
    }
  }
  if (cfg.format == "csv") {
    out.main = t.str();
  } else {
    ordered_json j;
    j["command"] = cfg.command;
    j["config"] = cfg.echo();
    j["rows"] = t.to_json();
    out.main = j.dump(2) + "\n";
  }
  return out;
}

CommandOutput cmd_moving_shell(const RunConfig& cfg) {
  const auto res = moving_shell(cfg.delta, effective(cfg), cfg.alphas, cfg.grids, cfg.solve);
  ordered_json extra;
  extra["delta"] = res.delta;
  extra["first_broken"] = res.first_broken ? ordered_json(*res.first_broken) : ordered_json(nullptr);
  extra["broken_from"] = res.broken_from ? ordered_json(*res.broken_from) : ordered_json(nullptr);
  CommandOutput out;
  out.ok = all_ok(res.records);
  out.main = render_records(cfg, res.records, extra);
  return out;
}

CommandOutput cmd_continuity(const RunConfig& cfg) {
  std::vector<double> Rs = cfg.R_list;
  if (Rs.empty()) {
    Rs = cfg.endpoint == 0.0 ? std::vector<double>{0.1, 0.03, 0.01, 0.001}
                             : std::vector<double>{0.9, 0.97, 0.99, 0.999};
  }
  const auto table = continuity_in_R(effective(cfg), Rs, cfg.endpoint, cfg.grids, cfg.solve);
  std::vector<SweepRecord> records{table.endpoint};
  std::vector<double> dev{0.0};
  for (const auto& row : table.rows) {
    records.push_back(row.record);
    dev.push_back(row.deviation);
  }
  CommandOutput out;
  out.ok = all_ok(records);
  if (cfg.format == "csv") {
    auto header = kRecordColumns;
    header.push_back("deviation");
    CsvTable t(header);
    for (std::size_t k = 0; k < records.size(); ++k) {
      auto cells = record_cells(records[k]);
      cells.push_back(fmt(dev[k]));
      t.add(std::move(cells));
    }
    out.main = t.str();
  } else {
    ordered_json j;
    j["command"] = cfg.command;
    j["config"] = cfg.echo();
    j["deviation_shrinking"] = table.deviation_shrinking;
    j["rows"] = ordered_json::array();
    for (std::size_t k = 0; k < records.size(); ++k) {
      auto r = record_json(records[k]);
      r["deviation"] = num(dev[k]);
      j["rows"].push_back(std::move(r));
    }
    out.main = j.dump(2) + "\n";
  }
  return out;
}

}  // namespace cli

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>

#include <shellbreak/errors.hpp>
#include <shellbreak/special.hpp>

#include "commands.hpp"
#include "output.hpp"

namespace cli {

using nlohmann::ordered_json;
using namespace shellbreak;

namespace {

struct Check {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  bool pass = false;
};

class Suite {
 public:
  void at_most(std::string name, double value, double limit) { add(std::move(name), value, limit, value <= limit); }
  void at_least(std::string name, double value, double limit) { add(std::move(name), value, limit, value >= limit); }
  void flag(std::string name, bool pass) { add(std::move(name), pass ? 1.0 : 0.0, 1.0, pass); }
  void failed(std::string name, const std::exception& e) {
    add(std::move(name) + ": " + e.what(), std::numeric_limits<double>::quiet_NaN(), 0.0, false);
  }

  bool ok() const {
    for (const auto& c : checks_) {
      if (!c.pass) return false;
    }
    return true;
  }

  std::string render(const RunConfig& cfg) const {
    CsvTable t({"check", "value", "limit", "pass"});
    for (const auto& c : checks_) t.add({c.name, fmt(c.value), fmt(c.limit), fmt(c.pass)});
    if (cfg.format == "csv") return t.str();
    ordered_json j;
    j["command"] = cfg.command;
    j["config"] = cfg.echo();
    j["passed"] = ok();
    j["checks"] = t.to_json();
    return j.dump(2) + "\n";
  }

 private:
  void add(std::string name, double value, double limit, bool pass) {
    checks_.push_back({std::move(name), value, limit, pass && !std::isnan(value)});
  }
  std::vector<Check> checks_;
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

void guarded(Suite& s, const std::string& name, const std::function<void()>& f) {
  try {
    f();
  } catch (const std::exception& e) {
    s.failed(name, e);
  }
}

void closed_form_checks(Suite& s) {
  guarded(s, "constants", [&] {
    double worst = 0.0;
    for (int N : {3, 4, 5}) {
      for (double p : {1.5, 2.0, 2.5}) {
        if (!is_subcritical(N, p)) continue;
        const double K = constant_K(N, p);
        const double Kl = constant_K_lower(N, p);
        const double rhs = (p + 1.0) / 2.0 * std::pow((p - 1.0) / (2.0 * (p + 1.0)), (p + 1.0) / 2.0) * Kl;
        worst = std::max(worst, rel(K, rhs));
      }
    }
    s.at_most("K / K_lower consistency", worst, 1e-12);
  });
  guarded(s, "beta", [&] {
    double worst = 0.0;
    for (double a : {0.3, 1.7, 12.5, 40.0}) {
      for (double b : {0.2, 2.5, 33.0}) {
        worst = std::max(worst, rel(beta_fn(a, b), beta_fn(b, a)));
        worst = std::max(worst, rel(beta_fn(a + 1.0, b), beta_fn(a, b) * a / (a + b)));
      }
    }
    s.at_most("Beta symmetry and recurrence", worst, 1e-13);
  });
  guarded(s, "integral_V", [&] {
    double worst = 0.0;
    for (double R : {0.0, 0.4, 1.0}) {
      for (double a : {0.0, 3.0, 150.0}) {
        const ProblemParams pp{1, 3.0, R, a};
        worst = std::max(worst, rel(integral_V(pp), 2.0 / (a + 1.0)));
      }
    }
    s.at_most("integral_V, N = 1", worst, 1e-14);
  });
}

void radial_checks(Suite& s) {
  for (int N : {1, 2, 3}) {
    for (double R : {0.0, 0.3, 0.7, 1.0}) {
      for (double alpha : {5.0, 40.0}) {
        const ProblemParams pp{N, default_p(N), R, alpha};
        const std::string tag =
            "N=" + std::to_string(N) + " R=" + fmt(R) + " alpha=" + fmt(alpha) + ": ";
        guarded(s, tag + "radial", [&] {
          const RadialGrid grid = build_radial_grid(pp, 400);
          const RadialResult r = minimize_radial_quotient(pp, grid);
          const double p = pp.p;
          const double e = (p - 1.0) / (p + 1.0);
          const double rel_S = std::pow(2.0 * (p + 1.0) / (p - 1.0), e) * std::pow(r.C_rad, e);
          s.at_most(tag + "Nehari residual", std::abs(r.residuals.nehari_residual), 1e-8);
          s.at_most(tag + "S/C relation", rel(r.S_rad, rel_S), 1e-10);
          if (N >= 3) s.at_most(tag + "Ni violation", r.residuals.ni_violation, 0.0);
          if (N >= 2) {
            const double scale = std::abs(r.residuals.A_alpha) + std::abs(r.residuals.B_alpha);
            s.at_least(tag + "lemma 3 slack", r.residuals.lemma3_slack / scale, -1e-6);
          }
        });
      }
    }
  }
}

void ball_checks(Suite& s) {
  guarded(s, "symmetric regime", [&] {
    const ProblemParams pp{3, 2.0, 1.0, 40.0};
    const AxisymGrid g = build_axisym_grid(pp, 64, 32);
    const RadialResult r = minimize_radial_quotient(pp, g.radial);
    const BallResult b = minimize_full_quotient(pp, g);
    s.at_most("R=1: gap / S_rad", symmetry_gap(r, b).gap / r.S_rad, 1e-4);
    s.at_most("R=1: asym_index", b.asym_index, 1e-5);
    s.at_least("R=1: trial bound / S_full", trial_upper_bound(pp) / b.S_full, 1.0 - 1e-6);
  });
  guarded(s, "Henon regime", [&] {
    const ProblemParams pp{2, 3.0, 0.0, 100.0};
    const AxisymGrid g = build_axisym_grid(pp, 128, 64);
    const RadialResult r = minimize_radial_quotient(pp, g.radial);
    const BallResult b = minimize_full_quotient(pp, g);
    const SymmetryGap sg = symmetry_gap(r, b);
    s.flag("R=0, N=2, alpha=100: broken", sg.broken);
    s.at_most("R=0: S_full / S_rad", b.S_full / r.S_rad, 1.0 + 1e-6);
  });
  guarded(s, "Sobolev", [&] {
    const double S = sobolev_constant(3, 2.0, 2000);
    s.at_least("S(3,2) / lower bound", S / sobolev_lower_bound(3, 2.0), 1.0 - 1e-3);
  });
}

// Recomputes the diagnostics of a stored radial result from its profile.
void round_trip(Suite& s, const std::string& path) {
  guarded(s, "round trip " + path, [&] {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    const auto j = nlohmann::json::parse(is);
    const auto& jp = j.at("params");
    const ProblemParams pp{jp.at("N").get<int>(), jp.at("p").get<double>(), jp.at("R").get<double>(),
                           jp.at("alpha").get<double>()};
    const auto& jr = j.at("radial");
    const RadialGrid grid = build_radial_grid(pp, jr.at("grid").at("n").get<int>(),
                                              jr.at("grid").at("grading_strength").get<double>());
    const auto nodes = jr.at("profile").at("r").get<std::vector<double>>();
    s.flag("stored grid reproduced", nodes == grid.nodes);
    RadialResult r;
    r.S_rad = jr.at("S_rad").get<double>();
    r.C_rad = jr.at("C_rad").get<double>();
    r.beta_peak = jr.at("beta_peak").get<double>();
    r.s_peak = jr.at("s_peak").get<double>();
    r.quad_order = jr.at("quad_order").get<int>();
    r.profile.grid = grid;
    r.profile.values = jr.at("profile").at("u").get<std::vector<double>>();
    const DiagnosticReport d = diagnostics(pp, r);
    const auto& jd = jr.at("diagnostics");
    auto cmp = [&](const char* key, double fresh) {
      const auto& v = jd.at(key);
      if (v.is_null()) {
        s.flag(std::string("round trip ") + key, !std::isfinite(fresh));
        return;
      }
      const double stored = v.get<double>();
      s.at_most(std::string("round trip ") + key, std::abs(fresh - stored) / std::max(1.0, std::abs(stored)), 1e-12);
    };
    cmp("nehari_residual", d.nehari_residual);
    cmp("pohozaev_residual", d.pohozaev_residual);
    cmp("ni_violation", d.ni_violation);
    cmp("boundary_flux", d.boundary_flux);
    cmp("lemma1_slack", d.lemma1_slack);
    cmp("lemma2_slack", d.lemma2_slack);
    cmp("lemma3_slack", d.lemma3_slack);
    cmp("A_alpha", d.A_alpha);
    cmp("B_alpha", d.B_alpha);
  });
}

}  // namespace

CommandOutput cmd_verify(const RunConfig& cfg) {
  Suite s;
  if (!cfg.result.empty()) {
    round_trip(s, cfg.result);
  } else {
    closed_form_checks(s);
    radial_checks(s);
    ball_checks(s);
  }
  CommandOutput out;
  out.ok = s.ok();
  out.main = s.render(cfg);
  return out;
}

}  // namespace cli

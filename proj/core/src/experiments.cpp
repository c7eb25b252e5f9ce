#include "shellbreak/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parallel.hpp"
#include "shellbreak/errors.hpp"

namespace shellbreak {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void fill_failed(SweepRecord& rec, std::string status) {
  rec.status = std::move(status);
  rec.S_rad = rec.S_full = rec.C_rad = rec.C_full = rec.gap = kNaN;
  rec.broken = false;
  rec.s_peak = rec.beta_peak = rec.asym_index = kNaN;
  rec.chosen_start.clear();
  rec.scaled_S_full = rec.scaled_S_rad = rec.scaled_beta = rec.A_over_B = kNaN;
  rec.nehari_residual = rec.pohozaev_residual = rec.lemma3_slack = kNaN;
}

std::vector<SweepRecord> solve_rows(const std::vector<ProblemParams>& rows, const GridSpec& grids,
                                    const SolveOptions& opts) {
  std::vector<SweepRecord> out(rows.size());
  SolveOptions inner = opts;
  if (rows.size() > 1) inner.threads = 1;
  detail::parallel_for(rows.size(), rows.size() > 1 ? opts.threads : 1,
                       [&](std::size_t k) { out[k] = solve_record(rows[k], grids, inner); });
  return out;
}

}  // namespace

SweepRecord solve_record(const ProblemParams& params, const GridSpec& grids, const SolveOptions& opts) {
  SweepRecord rec;
  rec.params = params;
  try {
    params.validate();
    const AxisymGrid grid = build_axisym_grid(params, grids.n_r, grids.n_theta, grids.grading_strength);
    SolveOptions serial = opts;
    serial.threads = 1;
    const RadialResult radial = minimize_radial_quotient(params, grid.radial, serial);
    const BallResult full = minimize_full_quotient(params, grid, opts);
    const SymmetryGap sg = symmetry_gap(radial, full);

    const int N = params.N;
    const double p = params.p;
    const double a = params.alpha;
    rec.S_rad = radial.S_rad;
    rec.S_full = full.S_full;
    rec.C_rad = radial.C_rad;
    rec.C_full = full.C_full;
    rec.gap = sg.gap;
    rec.broken = sg.broken;
    rec.s_peak = full.s_peak;
    rec.beta_peak = full.beta_peak;
    rec.asym_index = full.asym_index;
    rec.chosen_start = full.chosen_start;
    const double s_scale = a > 0.0 ? std::pow(a, -growth_exponent(N, p)) : kNaN;
    rec.scaled_S_full = full.S_full * s_scale;
    rec.scaled_S_rad = radial.S_rad * s_scale;
    rec.scaled_beta = a > 0.0 ? full.beta_peak * std::pow(a, -2.0 / (p - 1.0)) : kNaN;
    rec.A_over_B = radial.residuals.A_alpha / radial.residuals.B_alpha;
    rec.nehari_residual = radial.residuals.nehari_residual;
    rec.pohozaev_residual = radial.residuals.pohozaev_residual;
    rec.lemma3_slack = radial.residuals.lemma3_slack;
  } catch (const std::exception& e) {
    fill_failed(rec, e.what());
  }
  return rec;
}

std::vector<SweepRecord> sweep_alpha(const ProblemParams& params_template, std::span<const double> alphas,
                                     const GridSpec& grids, const SolveOptions& opts) {
  std::vector<double> sorted(alphas.begin(), alphas.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<ProblemParams> rows;
  rows.reserve(sorted.size());
  for (double a : sorted) {
    ProblemParams pp = params_template;
    pp.alpha = a;
    rows.push_back(pp);
  }
  return solve_rows(rows, grids, opts);
}

ExponentFit fit_exponent(std::span<const double> alphas, std::span<const double> values, AlphaWindow window) {
  if (alphas.size() != values.size()) throw ParameterError("fit_exponent: alphas and values differ in length");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!window.contains(alphas[i])) continue;
    if (!(alphas[i] > 0.0) || !(values[i] > 0.0)) {
      throw DomainError("fit_exponent: log-log fit needs positive alpha and values");
    }
    x.push_back(std::log(alphas[i]));
    y.push_back(std::log(values[i]));
  }
  if (x.size() < 5) {
    throw InsufficientDataError("fit_exponent: need at least 5 points in the window, got " + std::to_string(x.size()));
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw InsufficientDataError("fit_exponent: all alphas coincide");
  ExponentFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy > 0.0 ? std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0) : 1.0;
  fit.window = window;
  fit.points = x.size();
  return fit;
}

ExponentFit fit_exponent(std::span<const SweepRecord> records, const std::function<double(const SweepRecord&)>& quantity,
                         AlphaWindow window) {
  std::vector<double> a, v;
  for (const auto& r : records) {
    if (!r.ok() || !window.contains(r.params.alpha)) continue;
    a.push_back(r.params.alpha);
    v.push_back(quantity(r));
  }
  return fit_exponent(a, v, window);
}

double sobolev_constant(int N, double p, int n, const SolveOptions& opts) {
  const ProblemParams params{N, p, 1.0, 0.0};
  params.validate();
  const RadialGrid grid = build_radial_grid(params, n);
  return minimize_radial_quotient(params, grid, opts).S_rad;
}

MovingShellResult moving_shell(double delta, const ProblemParams& params_template, std::span<const double> alphas,
                               const GridSpec& grids, const SolveOptions& opts) {
  if (!(delta > 0.0)) throw ParameterError("moving_shell: delta must be positive");
  std::vector<double> sorted(alphas.begin(), alphas.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<ProblemParams> rows;
  for (double a : sorted) {
    ProblemParams pp = params_template;
    pp.alpha = a;
    const double R = std::pow(a, -delta);
    pp.R = std::clamp(R, 0.0, std::nextafter(1.0, 0.0));
    rows.push_back(pp);
  }
  MovingShellResult out;
  out.delta = delta;
  out.records = solve_rows(rows, grids, opts);
  for (const auto& r : out.records) {
    if (r.ok() && r.broken) {
      out.first_broken = r.params.alpha;
      break;
    }
  }
  for (auto it = out.records.rbegin(); it != out.records.rend(); ++it) {
    if (!(it->ok() && it->broken)) break;
    out.broken_from = it->params.alpha;
  }
  return out;
}

ConcentrationSummary concentration_track(std::span<const SweepRecord> records) {
  ConcentrationSummary s;
  std::vector<const SweepRecord*> rows;
  for (const auto& r : records) {
    if (r.ok()) rows.push_back(&r);
  }
  std::sort(rows.begin(), rows.end(),
            [](const SweepRecord* a, const SweepRecord* b) { return a->params.alpha < b->params.alpha; });
  for (const auto* r : rows) {
    s.alphas.push_back(r->params.alpha);
    s.boundary_distance.push_back(std::min(r->s_peak, 1.0 - r->s_peak));
    s.scaled_beta.push_back(r->scaled_beta);
  }
  if (rows.empty()) return s;
  const std::size_t half = rows.size() / 2;
  s.tail_min_distance = *std::min_element(s.boundary_distance.begin() + static_cast<std::ptrdiff_t>(half),
                                          s.boundary_distance.end());
  s.distance_decreasing = rows.size() > 1;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (s.boundary_distance[i] > s.boundary_distance[i - 1]) s.distance_decreasing = false;
  }
  s.scaled_beta_min = *std::min_element(s.scaled_beta.begin(), s.scaled_beta.end());
  s.scaled_beta_max = *std::max_element(s.scaled_beta.begin(), s.scaled_beta.end());
  s.beta_increasing = rows.size() > 1;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i]->beta_peak > rows[i - 1]->beta_peak)) s.beta_increasing = false;
  }
  return s;
}

ContinuityTable continuity_in_R(const ProblemParams& params, std::span<const double> R_list, double endpoint_R,
                                const GridSpec& grids, const SolveOptions& opts) {
  if (endpoint_R != 0.0 && endpoint_R != 1.0) throw ParameterError("continuity_in_R: endpoint must be 0 or 1");
  std::vector<ProblemParams> rows;
  ProblemParams end = params;
  end.R = endpoint_R;
  rows.push_back(end);
  for (double R : R_list) {
    ProblemParams pp = params;
    pp.R = R;
    rows.push_back(pp);
  }
  auto solved = solve_rows(rows, grids, opts);
  ContinuityTable table;
  table.endpoint = solved.front();
  const double ref = table.endpoint.S_full;
  for (std::size_t k = 1; k < solved.size(); ++k) {
    ContinuityRow row;
    row.R = rows[k].R;
    row.record = solved[k];
    row.deviation = std::abs(row.record.S_full - ref) / ref;
    table.rows.push_back(std::move(row));
  }
  table.deviation_shrinking = table.rows.size() > 1;
  for (std::size_t k = 1; k < table.rows.size(); ++k) {
    if (!(table.rows[k].deviation <= table.rows[k - 1].deviation)) table.deviation_shrinking = false;
  }
  return table;
}

double scaled_upper_envelope(const ProblemParams& params, double sobolev, double slack) {
  return shell_exponential_factor(params.R, params.p) * sobolev * (1.0 + slack);
}

double scaled_lower_envelope(int N, double p, double slack) {
  return std::pow(constant_K(N, p), -2.0 / (p + 1.0)) * (1.0 - slack);
}

}  // namespace shellbreak

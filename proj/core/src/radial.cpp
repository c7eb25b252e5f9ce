#include "shellbreak/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "discretization.hpp"
#include "shellbreak/errors.hpp"
#include "shellbreak/special.hpp"

namespace shellbreak {

namespace {

// Relative masses of the clusters at the origin and at the shell. Irrational-looking ratios keep
// the shell away from xi = i/(n-1) for every n of practical interest.
constexpr double kOriginMass = 0.7071;
constexpr double kShellMass = 0.2718;

void check_geometry(const ProblemParams& params) {
  if (params.N < 1) throw ParameterError("dimension N must be >= 1");
  if (!(params.R >= 0.0 && params.R <= 1.0)) throw ParameterError("shell radius R must lie in [0, 1]");
  if (!(params.alpha >= 0.0) || !std::isfinite(params.alpha)) throw ParameterError("alpha must be >= 0");
}

bool shell_is_interior(double R) { return R > 0.0 && R < 1.0; }

bool hits_shell(const std::vector<double>& nodes, double R) {
  if (!shell_is_interior(R)) return false;
  return std::any_of(nodes.begin(), nodes.end(), [R](double r) { return std::abs(r - R) < 1e-10; });
}

std::vector<Cluster> make_clusters(const ProblemParams& params, double s) {
  std::vector<Cluster> clusters;
  if (s <= 0.0) return clusters;
  const double a = std::max(params.alpha, 1.0);
  const double R = params.R;
  if (R < 1.0) clusters.push_back({1.0, 2.0 * (1.0 - R) / a, s});
  if (R > 0.0) clusters.push_back({0.0, (R < 1.0 ? 2.0 * R : 2.0) / a, kOriginMass * s});
  if (shell_is_interior(R)) clusters.push_back({R, 2.0 * std::min(R, 1.0 - R) / a, kShellMass * s});
  return clusters;
}

std::vector<double> hat_moments(const std::vector<double>& nodes, int N) {
  const GaussRule rule = gauss_legendre(8);
  std::vector<double> w(nodes.size(), 0.0);
  for (std::size_t e = 0; e + 1 < nodes.size(); ++e) {
    const double a = nodes[e];
    const double h = nodes[e + 1] - a;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double t = rule.nodes[q];
      const double m = rule.weights[q] * h * std::pow(a + t * h, N - 1);
      w[e] += m * (1.0 - t);
      w[e + 1] += m * t;
    }
  }
  return w;
}

RadialGrid assemble(int N, double R, double s, GradedMap map, std::size_t n) {
  RadialGrid grid;
  grid.N = N;
  grid.shell = R;
  grid.grading_strength = s;
  grid.nodes = map.nodes(n);
  grid.map = std::move(map);
  grid.measure_weights = hat_moments(grid.nodes, N);
  return grid;
}

void check_grid(const ProblemParams& params, const RadialGrid& grid) {
  if (grid.N != params.N || grid.shell != params.R) {
    throw ParameterError("radial grid was built for different parameters");
  }
  if (grid.nodes.size() < 3) throw ParameterError("radial grid needs at least three nodes");
}

// Smooth bump vanishing at r = 1 plus a small positive floor.
std::vector<double> bump_start(const std::vector<double>& nodes, double center, double width) {
  std::vector<double> u(nodes.size() - 1);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double r = nodes[i];
    const double z = (r - center) / width;
    u[i] = (std::exp(-z * z) + 1e-6) * (1.0 - r);
  }
  return u;
}

}  // namespace

double RadialGrid::max_spacing() const {
  double h = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) h = std::max(h, nodes[i + 1] - nodes[i]);
  return h;
}

double RadialGrid::min_distance_to_shell() const {
  if (!shell_is_interior(shell)) return std::numeric_limits<double>::infinity();
  double d = std::numeric_limits<double>::infinity();
  for (double r : nodes) d = std::min(d, std::abs(r - shell));
  return d;
}

RadialGrid build_radial_grid(const ProblemParams& params, int n, double grading_strength) {
  check_geometry(params);
  if (n < 16) throw ParameterError("build_radial_grid: need n >= 16 nodes");
  if (!(grading_strength >= 0.0)) throw ParameterError("build_radial_grid: grading_strength must be >= 0");

  std::vector<Cluster> clusters = make_clusters(params, grading_strength);
  for (int attempt = 0; attempt < 32; ++attempt) {
    GradedMap map(0.0, 1.0, clusters);
    if (!hits_shell(map.nodes(static_cast<std::size_t>(n)), params.R)) {
      return assemble(params.N, params.R, grading_strength, std::move(map), static_cast<std::size_t>(n));
    }
    // Break the coincidence with a faint off-center cluster.
    clusters.push_back({0.0, 1.0, 1e-3});
  }
  throw ParameterError("build_radial_grid: could not keep the shell off the nodes");
}

RadialGrid refine(const RadialGrid& grid) {
  const std::size_t n = 2 * grid.nodes.size() - 1;
  RadialGrid out = assemble(grid.N, grid.shell, grid.grading_strength, grid.map, n);
  if (hits_shell(out.nodes, out.shell)) throw ParameterError("refine: the shell became a node");
  return out;
}

RadialProblem::RadialProblem(const ProblemParams& params, const RadialGrid& grid, int quad_order)
    : params_(params), nodes_(grid.nodes) {
  const std::size_t n = nodes_.size();
  const std::size_t m = n - 1;
  const double area = sphere_area(params.N);

  diag_.assign(m, 0.0);
  off_.assign(m > 0 ? m - 1 : 0, 0.0);
  for (std::size_t e = 0; e + 1 < n; ++e) {
    const double h = nodes_[e + 1] - nodes_[e];
    const double kappa = area * detail::radial_moment(nodes_[e], nodes_[e + 1], params.N) / (h * h);
    if (e < m) diag_[e] += kappa;
    if (e + 1 < m) {
      diag_[e + 1] += kappa;
      off_[e] = -kappa;
    }
  }

  detail::tridiag_factor(diag_, off_, chol_d_, chol_l_);

  std::vector<double> breaks;
  if (shell_is_interior(params.R)) breaks.push_back(params.R);
  for (const auto& pt : detail::element_points(nodes_, breaks, quad_order)) {
    const double measure = area * pt.w * std::pow(pt.r, params.N - 1);
    const double v = eval_V(params, pt.r);
    double vp = 0.0;
    if (params.alpha > 0.0 && pt.r > 0.0 && pt.r < 1.0) vp = eval_V_prime(params, pt.r) * pt.r;
    points_.push_back({pt.elem, pt.t, measure * v, measure * vp});
  }
}

void RadialProblem::apply_stiffness(std::span<const double> u, std::span<double> out) const {
  detail::tridiag_apply(diag_, off_, u, out);
}

void RadialProblem::solve_stiffness(std::span<const double> rhs, std::span<double> out) const {
  detail::tridiag_solve(chol_d_, chol_l_, rhs, out);
}

double RadialProblem::power_integral(std::span<const double> u, std::span<double> grad) const {
  const std::size_t m = diag_.size();
  const detail::PowerKernel kernel(params_.p);
  const double p1 = params_.p + 1.0;
  const bool want_grad = !grad.empty();
  if (want_grad) std::fill(grad.begin(), grad.end(), 0.0);
  double P = 0.0;
  for (const auto& pt : points_) {
    if (pt.c == 0.0) continue;
    const double ua = pt.elem < m ? u[pt.elem] : 0.0;
    const double ub = pt.elem + 1 < m ? u[pt.elem + 1] : 0.0;
    const double uq = (1.0 - pt.t) * ua + pt.t * ub;
    double sp = 0.0;
    P += pt.c * kernel.eval(uq, sp);
    if (want_grad) {
      const double g = pt.c * p1 * sp;
      if (pt.elem < m) grad[pt.elem] += g * (1.0 - pt.t);
      if (pt.elem + 1 < m) grad[pt.elem + 1] += g * pt.t;
    }
  }
  return P;
}

double RadialProblem::weight_integral() const {
  double acc = 0.0;
  for (const auto& pt : points_) acc += pt.c;
  return acc;
}

double RadialProblem::pohozaev_integral(std::span<const double> u) const {
  const std::size_t m = diag_.size();
  const detail::PowerKernel kernel(params_.p);
  double acc = 0.0;
  for (const auto& pt : points_) {
    if (pt.c_prime == 0.0) continue;
    const double ua = pt.elem < m ? u[pt.elem] : 0.0;
    const double ub = pt.elem + 1 < m ? u[pt.elem + 1] : 0.0;
    double sp = 0.0;
    acc += pt.c_prime * kernel.eval((1.0 - pt.t) * ua + pt.t * ub, sp);
  }
  return acc;
}

std::pair<std::vector<double>, std::vector<double>> RadialProblem::weighted_mass() const {
  const std::size_t m = diag_.size();
  std::vector<double> d(m, 0.0);
  std::vector<double> o(m > 0 ? m - 1 : 0, 0.0);
  for (const auto& pt : points_) {
    const double wa = 1.0 - pt.t;
    const double wb = pt.t;
    if (pt.elem < m) d[pt.elem] += pt.c * wa * wa;
    if (pt.elem + 1 < m) {
      d[pt.elem + 1] += pt.c * wb * wb;
      o[pt.elem] += pt.c * wa * wb;
    }
  }
  return {d, o};
}

double radial_quotient(const ProblemParams& params, const RadialGrid& grid, std::span<const double> values,
                       int quad_order) {
  check_grid(params, grid);
  if (values.size() != grid.nodes.size()) throw ParameterError("radial_quotient: one value per node expected");
  const RadialProblem problem(params, grid, quad_order);
  return problem.quotient(values.first(values.size() - 1));
}

double boundary_derivative(std::span<const double> nodes, std::span<const double> values) {
  const std::size_t n = nodes.size();
  if (n < 3 || values.size() != n) throw ParameterError("boundary_derivative: need three nodes");
  const double x0 = nodes[n - 3];
  const double x1 = nodes[n - 2];
  const double x2 = nodes[n - 1];
  return values[n - 3] * (x2 - x1) / ((x0 - x1) * (x0 - x2)) +
         values[n - 2] * (x2 - x0) / ((x1 - x0) * (x1 - x2)) +
         values[n - 1] * (2.0 * x2 - x0 - x1) / ((x2 - x0) * (x2 - x1));
}

RadialResult minimize_radial_quotient(const ProblemParams& params, const RadialGrid& grid,
                                      const SolveOptions& opts) {
  params.validate();
  check_grid(params, grid);
  const RadialProblem problem(params, grid, opts.quad_order);
  if (!(problem.weight_integral() > 0.0)) {
    throw DegenerateWeightError("the weight integrates to 0 on this grid; alpha too large for the mesh");
  }

  // Peaks sit near r = 1 for R < 1/2 and at the origin otherwise; with a shell strictly inside
  // both candidates are tried and the lower quotient is kept.
  const double width = 1.0 / std::max(params.alpha, 2.0);
  std::vector<std::vector<double>> starts;
  const bool boundary_first = params.R < 0.5;
  if (params.R < 1.0) starts.push_back(bump_start(grid.nodes, 1.0 - width, width));
  if (params.R > 0.0) starts.push_back(bump_start(grid.nodes, 0.0, width));
  if (!boundary_first) std::reverse(starts.begin(), starts.end());

  MinimizeOutcome best;
  bool have = false;
  for (auto& start : starts) {
    MinimizeOutcome outcome = minimize_quotient(problem, std::move(start), opts);
    if (!have || outcome.quotient < best.quotient) {
      best = std::move(outcome);
      have = true;
    }
  }

  const double p = params.p;
  std::vector<double> ustar = best.u;
  const double P = problem.power_integral(ustar, {});
  const double scale = std::pow(P, -1.0 / (p + 1.0));
  for (auto& x : ustar) x *= scale;

  RadialResult result;
  result.quad_order = opts.quad_order;
  result.iterations = best.iterations;
  result.gradient_norm = best.gradient_norm;
  result.S_rad = problem.quotient(ustar);
  result.C_rad = (p - 1.0) / (2.0 * (p + 1.0)) * std::pow(result.S_rad, (p + 1.0) / (p - 1.0));

  const double amp = std::pow(result.S_rad, 1.0 / (p - 1.0));
  result.profile.grid = grid;
  result.profile.values.assign(grid.nodes.size(), 0.0);
  for (std::size_t i = 0; i < ustar.size(); ++i) result.profile.values[i] = amp * ustar[i];

  const auto peak = std::max_element(result.profile.values.begin(), result.profile.values.end());
  result.beta_peak = *peak;
  result.s_peak = grid.nodes[static_cast<std::size_t>(peak - result.profile.values.begin())];
  result.residuals = diagnostics(params, result);
  return result;
}

DiagnosticReport diagnostics(const ProblemParams& params, const RadialResult& result) {
  const RadialGrid& grid = result.profile.grid;
  check_grid(params, grid);
  const RadialProblem problem(params, grid, result.quad_order);
  const std::vector<double>& values = result.profile.values;
  const std::span<const double> u(values.data(), values.size() - 1);

  const int N = params.N;
  const double p = params.p;
  const double alpha = params.alpha;
  const double C = result.C_rad;
  const double area = sphere_area(N);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  DiagnosticReport rep;
  const double G = problem.power_integral(u, {});
  const double E = problem.energy(u);
  const double nehari_level = 2.0 * (p + 1.0) / (p - 1.0) * C;
  rep.nehari_residual = (G - nehari_level) / G;

  const double du = boundary_derivative(grid.nodes, values);
  rep.boundary_flux = area * du * du;
  const double poho = growth_exponent(N, p) * G + 2.0 / (p + 1.0) * problem.pohozaev_integral(u);
  rep.pohozaev_residual = (rep.boundary_flux - poho) / rep.boundary_flux;

  rep.ni_violation = 0.0;
  if (N >= 3) {
    const double factor = std::sqrt(E / (area * (N - 2.0)));
    for (std::size_t i = 1; i < values.size(); ++i) {
      const double bound = factor * std::pow(grid.nodes[i], -(N - 2.0) / 2.0);
      rep.ni_violation = std::max(rep.ni_violation, std::abs(values[i]) - bound);
    }
  }

  if (N < 2) {
    rep.lemma1_slack = rep.lemma2_slack = rep.lemma3_slack = nan;
    rep.A_alpha = rep.B_alpha = rep.planar_eps = nan;
    return rep;
  }

  rep.B_alpha = constant_K_star(N, p) * std::pow(C, 2.0 * p / (p + 1.0)) / std::pow(alpha + 1.0, 2.0 / (p + 1.0));
  double K_low = 0.0;
  double beta = 0.0;
  if (N == 2) {
    rep.planar_eps = 1.0 / (p + 1.0);
    K_low = constant_K_lower_planar(p, rep.planar_eps);
    beta = lower_beta_exp(N, p, rep.planar_eps);
  } else {
    rep.planar_eps = nan;
    K_low = constant_K_lower(N, p);
    beta = lower_beta_exp(N, p, 0.0);
  }
  // alpha Γ(alpha) / Γ(alpha + beta + 1) = Γ(alpha + 1) / Γ(alpha + beta + 1).
  const double gamma_part = std::exp(log_gamma(alpha + 1.0) - log_gamma(alpha + beta + 1.0));
  rep.A_alpha = params.R > 0.0 ? K_low * std::pow(params.R, beta + 1.0) * gamma_part * std::pow(C, (p + 1.0) / 2.0)
                               : 0.0;
  const double level = (2.0 * (N + alpha) / (p + 1.0) - (N - 2.0)) * nehari_level;
  rep.lemma1_slack = rep.B_alpha - rep.boundary_flux;
  rep.lemma2_slack = rep.boundary_flux - (level - rep.A_alpha);
  rep.lemma3_slack = rep.A_alpha + rep.B_alpha - level;
  return rep;
}

double eigen_lower_bound_p1(const ProblemParams& params, const RadialGrid& grid, int quad_order) {
  if (params.p != 1.0 || params.R != 1.0) {
    throw ParameterError("eigen_lower_bound_p1 requires p = 1 and R = 1");
  }
  check_geometry(params);
  check_grid(params, grid);
  const RadialProblem problem(params, grid, quad_order);
  const auto [md, mo] = problem.weighted_mass();
  const std::size_t m = problem.size();

  auto mass_apply = [&](const std::vector<double>& x, std::vector<double>& y) { detail::tridiag_apply(md, mo, x, y); };

  std::vector<double> x(m), y(m), z(m), Kz(m), Mz(m);
  for (std::size_t i = 0; i < m; ++i) x[i] = 1.0 - grid.nodes[i];
  double lambda = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 100000; ++it) {
    mass_apply(x, y);
    problem.solve_stiffness(y, z);
    problem.apply_stiffness(z, Kz);
    mass_apply(z, Mz);
    const double num = std::inner_product(z.begin(), z.end(), Kz.begin(), 0.0);
    const double den = std::inner_product(z.begin(), z.end(), Mz.begin(), 0.0);
    if (!(den > 0.0)) throw DegenerateWeightError("weighted mass vanishes on this grid");
    const double next = num / den;
    const double norm = std::sqrt(num);
    for (std::size_t i = 0; i < m; ++i) x[i] = z[i] / norm;
    if (std::abs(next - lambda) <= 1e-14 * next) return next;
    lambda = next;
  }
  throw SolverError("inverse iteration did not converge", 100000, 0.0);
}

}  // namespace shellbreak

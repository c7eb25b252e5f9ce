#include "shellbreak/ball.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <string>

#include "discretization.hpp"
#include "parallel.hpp"
#include "shellbreak/errors.hpp"

namespace shellbreak {

namespace {

using SparseMatrix = Eigen::SparseMatrix<double>;

constexpr int kAngularQuadOrder = 3;
constexpr int kStiffnessAngularOrder = 6;
constexpr double kTieTolerance = 1e-10;

bool shell_is_interior(double R) { return R > 0.0 && R < 1.0; }

std::vector<double> angular_moments(const std::vector<double>& theta, int N) {
  const GaussRule rule = gauss_legendre(8);
  std::vector<double> m(theta.size(), 0.0);
  for (std::size_t e = 0; e + 1 < theta.size(); ++e) {
    const double a = theta[e];
    const double h = theta[e + 1] - a;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double t = rule.nodes[q];
      const double w = rule.weights[q] * h * std::pow(std::sin(a + t * h), N - 2);
      m[e] += w * (1.0 - t);
      m[e + 1] += w * t;
    }
  }
  return m;
}

std::vector<double> line_moments(const std::vector<double>& x) {
  std::vector<double> m(x.size(), 0.0);
  for (std::size_t e = 0; e + 1 < x.size(); ++e) {
    const double h = x[e + 1] - x[e];
    m[e] += 0.5 * h;
    m[e + 1] += 0.5 * h;
  }
  return m;
}

// A discretization of the full quotient together with the field bookkeeping the driver needs.
class BallDiscretization : public QuotientProblem {
 public:
  virtual std::vector<double> to_nodes(std::span<const double> u) const = 0;
  virtual std::vector<double> from_nodes(const std::vector<double>& values) const = 0;
  /// Start vector from a radial profile given at the radial nodes.
  virtual std::vector<double> lift_radial(const std::vector<double>& profile) const = 0;
  /// Gaussian bump centered at distance `center` from the origin along the axis at angle `angle`
  /// (N = 1: signed position, angle ignored).
  virtual std::vector<double> bump(double center, double angle, double width) const = 0;
};

// Q1 elements on the (r, θ) rectangle with the origin row collapsed to one unknown.
class AxisymProblem final : public BallDiscretization {
 public:
  AxisymProblem(const ProblemParams& params, const AxisymGrid& grid, int quad_order)
      : p_(params.p), r_(grid.radial.nodes), theta_(grid.theta) {
    nr_ = static_cast<int>(r_.size()) - 1;
    nt_ = static_cast<int>(theta_.size()) - 1;
    const int N = params.N;
    const double cap = sphere_area(N - 1);

    for (const auto& pt : detail::element_points(r_, shell_breaks(params.R), quad_order)) {
      radial_points_.push_back({pt.elem, pt.t, cap * pt.w * std::pow(pt.r, N - 1) * eval_V(params, pt.r)});
    }
    const std::vector<double> none;
    for (const auto& pt : detail::element_points(theta_, none, kAngularQuadOrder)) {
      angular_points_.push_back({pt.elem, pt.t, pt.w * std::pow(std::sin(pt.r), N - 2)});
    }
    radial_begin_.assign(static_cast<std::size_t>(nr_) + 1, 0);
    for (std::size_t k = 0; k < radial_points_.size(); ++k) radial_begin_[radial_points_[k].elem + 1] = k + 1;
    for (int i = 1; i <= nr_; ++i) radial_begin_[i] = std::max(radial_begin_[i], radial_begin_[i - 1]);
    angular_per_elem_ = static_cast<std::size_t>(kAngularQuadOrder);

    assemble_stiffness(N, cap);
    ldlt_.compute(K_);
    if (ldlt_.info() != Eigen::Success) throw SolverError("stiffness factorization failed", 0, 0.0);
  }

  std::size_t size() const override { return 1 + static_cast<std::size_t>(nr_ - 1) * (nt_ + 1); }
  double exponent() const override { return p_; }

  void apply_stiffness(std::span<const double> u, std::span<double> out) const override {
    Eigen::Map<const Eigen::VectorXd> x(u.data(), static_cast<Eigen::Index>(u.size()));
    Eigen::Map<Eigen::VectorXd> y(out.data(), static_cast<Eigen::Index>(out.size()));
    y.noalias() = K_ * x;
  }

  void solve_stiffness(std::span<const double> rhs, std::span<double> out) const override {
    Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
    Eigen::Map<Eigen::VectorXd> y(out.data(), static_cast<Eigen::Index>(out.size()));
    y = ldlt_.solve(b);
  }

  double power_integral(std::span<const double> u, std::span<double> grad) const override {
    const detail::PowerKernel kernel(p_);
    const double p1 = p_ + 1.0;
    const bool want_grad = !grad.empty();
    if (want_grad) std::fill(grad.begin(), grad.end(), 0.0);
    double P = 0.0;
    for (int i = 0; i < nr_; ++i) {
      const std::size_t rb = radial_begin_[i];
      const std::size_t re = radial_begin_[i + 1];
      bool any = false;
      for (std::size_t k = rb; k < re; ++k) any = any || radial_points_[k].c != 0.0;
      if (!any) continue;
      for (int j = 0; j < nt_; ++j) {
        const int ia = dof(i, j), ib = dof(i, j + 1), ic = dof(i + 1, j), id = dof(i + 1, j + 1);
        const double ua = ia >= 0 ? u[ia] : 0.0;
        const double ub = ib >= 0 ? u[ib] : 0.0;
        const double uc = ic >= 0 ? u[ic] : 0.0;
        const double ud = id >= 0 ? u[id] : 0.0;
        double ga = 0.0, gb = 0.0, gc = 0.0, gd = 0.0;
        const std::size_t ab = static_cast<std::size_t>(j) * angular_per_elem_;
        for (std::size_t k = rb; k < re; ++k) {
          const Point& rp = radial_points_[k];
          if (rp.c == 0.0) continue;
          const double t = rp.t;
          for (std::size_t q = ab; q < ab + angular_per_elem_; ++q) {
            const Point& ap = angular_points_[q];
            const double s = ap.t;
            const double inner = (1.0 - s) * ua + s * ub;
            const double outer = (1.0 - s) * uc + s * ud;
            const double val = (1.0 - t) * inner + t * outer;
            const double c = rp.c * ap.c;
            double sp = 0.0;
            P += c * kernel.eval(val, sp);
            if (want_grad) {
              const double g = c * p1 * sp;
              ga += g * (1.0 - t) * (1.0 - s);
              gb += g * (1.0 - t) * s;
              gc += g * t * (1.0 - s);
              gd += g * t * s;
            }
          }
        }
        if (want_grad) {
          if (ia >= 0) grad[ia] += ga;
          if (ib >= 0) grad[ib] += gb;
          if (ic >= 0) grad[ic] += gc;
          if (id >= 0) grad[id] += gd;
        }
      }
    }
    return P;
  }

  std::vector<double> to_nodes(std::span<const double> u) const override {
    std::vector<double> values(static_cast<std::size_t>(nr_ + 1) * (nt_ + 1), 0.0);
    for (int i = 0; i <= nr_; ++i) {
      for (int j = 0; j <= nt_; ++j) {
        const int d = dof(i, j);
        values[static_cast<std::size_t>(i) * (nt_ + 1) + j] = d >= 0 ? u[d] : 0.0;
      }
    }
    return values;
  }

  std::vector<double> from_nodes(const std::vector<double>& values) const override {
    if (values.size() != static_cast<std::size_t>(nr_ + 1) * (nt_ + 1)) {
      throw ParameterError("field does not match the grid");
    }
    std::vector<double> u(size(), 0.0);
    for (int i = 0; i < nr_; ++i) {
      for (int j = 0; j <= nt_; ++j) u[dof(i, j)] = values[static_cast<std::size_t>(i) * (nt_ + 1) + j];
    }
    return u;
  }

  std::vector<double> lift_radial(const std::vector<double>& profile) const override {
    std::vector<double> u(size(), 0.0);
    for (int i = 0; i < nr_; ++i) {
      for (int j = 0; j <= nt_; ++j) u[dof(i, j)] = profile[i];
    }
    return u;
  }

  std::vector<double> bump(double center, double angle, double width) const override {
    std::vector<double> u(size(), 0.0);
    for (int i = 0; i < nr_; ++i) {
      for (int j = 0; j <= nt_; ++j) {
        const double r = r_[i];
        const double d2 = r * r + center * center - 2.0 * r * center * std::cos(theta_[j] - angle);
        u[dof(i, j)] = (std::exp(-d2 / (width * width)) + 1e-6) * (1.0 - r);
      }
    }
    return u;
  }

 private:
  struct Point {
    std::size_t elem;
    double t;
    double c;
  };

  static std::vector<double> shell_breaks(double R) {
    return shell_is_interior(R) ? std::vector<double>{R} : std::vector<double>{};
  }

  int dof(int i, int j) const {
    if (i == 0) return 0;
    if (i >= nr_) return -1;
    return 1 + (i - 1) * (nt_ + 1) + j;
  }

  void assemble_stiffness(int N, double cap) {
    const GaussRule gr = gauss_legendre(4);
    const GaussRule gt = gauss_legendre(kStiffnessAngularOrder);
    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(nr_) * nt_ * 16);
    for (int i = 0; i < nr_; ++i) {
      const double r0 = r_[i];
      const double hr = r_[i + 1] - r0;
      for (int j = 0; j < nt_; ++j) {
        const double t0 = theta_[j];
        const double ht = theta_[j + 1] - t0;
        double k[4][4] = {};
        for (std::size_t a = 0; a < gr.nodes.size(); ++a) {
          const double t = gr.nodes[a];
          const double r = r0 + t * hr;
          for (std::size_t b = 0; b < gt.nodes.size(); ++b) {
            const double s = gt.nodes[b];
            const double th = t0 + s * ht;
            const double w = cap * gr.weights[a] * hr * gt.weights[b] * ht * std::pow(r, N - 1) *
                             std::pow(std::sin(th), N - 2);
            const double dr[4] = {-(1.0 - s) / hr, -s / hr, (1.0 - s) / hr, s / hr};
            const double dt[4] = {-(1.0 - t) / ht, (1.0 - t) / ht, -t / ht, t / ht};
            const double inv_r2 = 1.0 / (r * r);
            for (int x = 0; x < 4; ++x) {
              for (int y = 0; y < 4; ++y) k[x][y] += w * (dr[x] * dr[y] + dt[x] * dt[y] * inv_r2);
            }
          }
        }
        const int idx[4] = {dof(i, j), dof(i, j + 1), dof(i + 1, j), dof(i + 1, j + 1)};
        for (int x = 0; x < 4; ++x) {
          if (idx[x] < 0) continue;
          for (int y = 0; y < 4; ++y) {
            if (idx[y] < 0) continue;
            triplets.emplace_back(idx[x], idx[y], k[x][y]);
          }
        }
      }
    }
    const auto n = static_cast<Eigen::Index>(size());
    K_.resize(n, n);
    K_.setFromTriplets(triplets.begin(), triplets.end());
  }

  double p_;
  int nr_ = 0;
  int nt_ = 0;
  std::vector<double> r_, theta_;
  std::vector<Point> radial_points_, angular_points_;
  std::vector<std::size_t> radial_begin_;
  std::size_t angular_per_elem_ = 0;
  SparseMatrix K_;
  Eigen::SimplicialLDLT<SparseMatrix> ldlt_;
};

// P1 elements on [-1, 1], Dirichlet at both ends.
class IntervalProblem final : public BallDiscretization {
 public:
  IntervalProblem(const ProblemParams& params, const AxisymGrid& grid, int quad_order)
      : p_(params.p), x_(grid.line), nr_(grid.n_r()) {
    const std::size_t n = x_.size();
    const std::size_t m = n - 2;
    diag_.assign(m, 0.0);
    off_.assign(m - 1, 0.0);
    for (std::size_t e = 0; e + 1 < n; ++e) {
      const double kappa = 1.0 / (x_[e + 1] - x_[e]);
      // Unknown k corresponds to node k + 1.
      if (e >= 1) diag_[e - 1] += kappa;
      if (e + 1 <= m) diag_[e] += kappa;
      if (e >= 1 && e + 1 <= m) off_[e - 1] = -kappa;
    }
    detail::tridiag_factor(diag_, off_, chol_d_, chol_l_);

    std::vector<double> breaks;
    if (shell_is_interior(params.R)) breaks = {-params.R, params.R};
    for (const auto& pt : detail::element_points(x_, breaks, quad_order)) {
      points_.push_back({pt.elem, pt.t, pt.w * eval_V(params, std::abs(pt.r))});
    }
  }

  std::size_t size() const override { return x_.size() - 2; }
  double exponent() const override { return p_; }

  void apply_stiffness(std::span<const double> u, std::span<double> out) const override {
    detail::tridiag_apply(diag_, off_, u, out);
  }

  void solve_stiffness(std::span<const double> rhs, std::span<double> out) const override {
    detail::tridiag_solve(chol_d_, chol_l_, rhs, out);
  }

  double power_integral(std::span<const double> u, std::span<double> grad) const override {
    const detail::PowerKernel kernel(p_);
    const double p1 = p_ + 1.0;
    const std::size_t m = size();
    const bool want_grad = !grad.empty();
    if (want_grad) std::fill(grad.begin(), grad.end(), 0.0);
    double P = 0.0;
    for (const auto& pt : points_) {
      if (pt.c == 0.0) continue;
      // Element e spans nodes e and e + 1, i.e. unknowns e - 1 and e.
      const bool has_a = pt.elem >= 1;
      const bool has_b = pt.elem < m;
      const double ua = has_a ? u[pt.elem - 1] : 0.0;
      const double ub = has_b ? u[pt.elem] : 0.0;
      double sp = 0.0;
      P += pt.c * kernel.eval((1.0 - pt.t) * ua + pt.t * ub, sp);
      if (want_grad) {
        const double g = pt.c * p1 * sp;
        if (has_a) grad[pt.elem - 1] += g * (1.0 - pt.t);
        if (has_b) grad[pt.elem] += g * pt.t;
      }
    }
    return P;
  }

  std::vector<double> to_nodes(std::span<const double> u) const override {
    std::vector<double> values(x_.size(), 0.0);
    std::copy(u.begin(), u.end(), values.begin() + 1);
    return values;
  }

  std::vector<double> from_nodes(const std::vector<double>& values) const override {
    if (values.size() != x_.size()) throw ParameterError("field does not match the grid");
    return {values.begin() + 1, values.end() - 1};
  }

  std::vector<double> lift_radial(const std::vector<double>& profile) const override {
    std::vector<double> u(size());
    for (std::size_t k = 1; k + 1 < x_.size(); ++k) {
      const auto offset = static_cast<long>(k) - nr_;
      u[k - 1] = profile[static_cast<std::size_t>(std::labs(offset))];
    }
    return u;
  }

  std::vector<double> bump(double center, double /*angle*/, double width) const override {
    std::vector<double> u(size());
    for (std::size_t k = 1; k + 1 < x_.size(); ++k) {
      const double z = (x_[k] - center) / width;
      u[k - 1] = (std::exp(-z * z) + 1e-6) * (1.0 - std::abs(x_[k]));
    }
    return u;
  }

 private:
  struct Point {
    std::size_t elem;
    double t;
    double c;
  };

  double p_;
  std::vector<double> x_;
  long nr_;
  std::vector<double> diag_, off_, chol_d_, chol_l_;
  std::vector<Point> points_;
};

std::unique_ptr<BallDiscretization> make_problem(const ProblemParams& params, const AxisymGrid& grid,
                                                 int quad_order) {
  if (grid.N != params.N || grid.shell != params.R) {
    throw ParameterError("axisymmetric grid was built for different parameters");
  }
  if (params.N == 1) return std::make_unique<IntervalProblem>(params, grid, quad_order);
  return std::make_unique<AxisymProblem>(params, grid, quad_order);
}

struct Candidate {
  StartRecord record;
  std::vector<double> u;
};

}  // namespace

double AxisymGrid::total_measure() const {
  double acc = 0.0;
  for (double w : measure_weights) acc += w;
  return acc;
}

double AxisymField::at(int i, int j) const {
  if (grid.N == 1) return values.at(static_cast<std::size_t>(i));
  return values.at(static_cast<std::size_t>(i) * (grid.theta.size()) + static_cast<std::size_t>(j));
}

AxisymGrid build_axisym_grid(const ProblemParams& params, int n_r, int n_theta, double grading_strength) {
  if (n_r < 32) throw ParameterError("build_axisym_grid: need n_r >= 32");
  if (params.N >= 2 && n_theta < 16) throw ParameterError("build_axisym_grid: need n_theta >= 16");

  AxisymGrid grid;
  grid.N = params.N;
  grid.shell = params.R;
  grid.radial = build_radial_grid(params, n_r + 1, grading_strength);
  const auto& r = grid.radial.nodes;

  if (params.N == 1) {
    grid.line.reserve(2 * r.size() - 1);
    for (std::size_t k = r.size(); k-- > 1;) grid.line.push_back(-r[k]);
    grid.line.insert(grid.line.end(), r.begin(), r.end());
    grid.line.front() = -1.0;
    grid.measure_weights = line_moments(grid.line);
    return grid;
  }

  std::vector<Cluster> clusters;
  if (grading_strength > 0.0) {
    const double a = std::max(params.alpha, 1.0);
    clusters.push_back({0.0, std::min(2.0 / a, std::numbers::pi), grading_strength});
  }
  grid.theta = GradedMap(0.0, std::numbers::pi, clusters).nodes(static_cast<std::size_t>(n_theta) + 1);
  const std::vector<double> ang = angular_moments(grid.theta, params.N);
  const double cap = sphere_area(params.N - 1);
  grid.measure_weights.resize(r.size() * grid.theta.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < grid.theta.size(); ++j) {
      grid.measure_weights[i * grid.theta.size() + j] = cap * grid.radial.measure_weights[i] * ang[j];
    }
  }
  return grid;
}

double asym_index(const AxisymGrid& grid, const std::vector<double>& values) {
  if (values.size() != grid.measure_weights.size()) throw ParameterError("asym_index: field does not match the grid");
  const auto& w = grid.measure_weights;
  double diff = 0.0;
  double norm = 0.0;
  if (grid.N == 1) {
    const std::size_t n = values.size();
    for (std::size_t k = 0; k < n; ++k) {
      const double even = 0.5 * (values[k] + values[n - 1 - k]);
      diff += w[k] * (values[k] - even) * (values[k] - even);
      norm += w[k] * values[k] * values[k];
    }
  } else {
    const std::size_t nt = grid.theta.size();
    for (std::size_t i = 0; i < grid.radial.nodes.size(); ++i) {
      double mass = 0.0;
      double mean = 0.0;
      for (std::size_t j = 0; j < nt; ++j) {
        mass += w[i * nt + j];
        mean += w[i * nt + j] * values[i * nt + j];
      }
      if (mass > 0.0) mean /= mass;
      for (std::size_t j = 0; j < nt; ++j) {
        const double v = values[i * nt + j];
        diff += w[i * nt + j] * (v - mean) * (v - mean);
        norm += w[i * nt + j] * v * v;
      }
    }
  }
  return norm > 0.0 ? std::sqrt(diff / norm) : 0.0;
}

double full_quotient(const ProblemParams& params, const AxisymGrid& grid, const std::vector<double>& values,
                     int quad_order) {
  const auto problem = make_problem(params, grid, quad_order);
  return problem->quotient(problem->from_nodes(values));
}

BallResult minimize_full_quotient(const ProblemParams& params, const AxisymGrid& grid, const SolveOptions& opts) {
  params.validate();
  const auto problem = make_problem(params, grid, opts.quad_order);

  const RadialResult radial = minimize_radial_quotient(params, grid.radial, opts);

  const double width = 1.0 / std::max(params.alpha, 2.0);
  std::vector<std::pair<std::string, std::vector<double>>> starts;
  starts.emplace_back("radial", problem->lift_radial(radial.profile.values));
  starts.emplace_back("boundary-bump", problem->bump(1.0 - width, 0.0, width));
  // With R = 0 the weight vanishes at the origin and a bump there only carries the floor.
  if (params.R > 0.0 || params.alpha == 0.0) {
    starts.emplace_back("origin-bump", problem->bump(width, 0.0, width));
  }
  for (int k = 0; k < opts.extra_random_starts; ++k) {
    std::mt19937_64 rng(opts.seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(k + 1));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double a = unit(rng);
    const double b = unit(rng);
    const double c = unit(rng);
    const double w = 0.05 + 0.45 * c;
    if (params.N == 1) {
      starts.emplace_back("random-" + std::to_string(k), problem->bump(-0.95 + 1.9 * a, 0.0, w));
    } else {
      starts.emplace_back("random-" + std::to_string(k), problem->bump(0.05 + 0.9 * a, std::numbers::pi * b, w));
    }
  }

  std::vector<Candidate> runs(starts.size());
  detail::parallel_for(starts.size(), opts.threads, [&](std::size_t k) {
    SolveOptions local = opts;
    local.threads = 1;
    MinimizeOutcome out = minimize_quotient(*problem, std::move(starts[k].second), local);
    Candidate& c = runs[k];
    c.record.label = starts[k].first;
    c.record.quotient = out.quotient;
    c.record.iterations = out.iterations;
    c.record.gradient_norm = out.gradient_norm;
    c.record.asym_index = asym_index(grid, problem->to_nodes(out.u));
    c.u = std::move(out.u);
  });

  double best_q = std::numeric_limits<double>::infinity();
  for (const auto& c : runs) best_q = std::min(best_q, c.record.quotient);
  std::size_t chosen = runs.size();
  for (std::size_t k = 0; k < runs.size(); ++k) {
    if (runs[k].record.quotient > best_q * (1.0 + kTieTolerance)) continue;
    if (chosen == runs.size() || runs[k].record.asym_index > runs[chosen].record.asym_index) chosen = k;
  }

  const double p = params.p;
  std::vector<double> ustar = runs[chosen].u;
  const double P = problem->power_integral(ustar, {});
  const double scale = std::pow(P, -1.0 / (p + 1.0));
  for (auto& x : ustar) x *= scale;
  const double q_field = problem->quotient(ustar);
  const double amp = std::pow(q_field, 1.0 / (p - 1.0));
  for (auto& x : ustar) x *= amp;

  BallResult result;
  result.quad_order = opts.quad_order;
  result.S_full = best_q;
  result.C_full = (p - 1.0) / (2.0 * (p + 1.0)) * std::pow(best_q, (p + 1.0) / (p - 1.0));
  result.field.grid = grid;
  result.field.values = problem->to_nodes(ustar);
  result.asym_index = runs[chosen].record.asym_index;
  result.chosen_start = runs[chosen].record.label;
  for (auto& c : runs) result.starts.push_back(std::move(c.record));

  const auto& v = result.field.values;
  const auto peak = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
  result.beta_peak = v[peak];
  if (grid.N == 1) {
    result.s_peak = std::abs(grid.line[peak]);
  } else {
    result.s_peak = grid.radial.nodes[peak / grid.theta.size()];
  }
  return result;
}

namespace {

// Composite Gauss rule on [lo, hi] with `panels` equal panels.
template <class F>
double composite(double lo, double hi, int panels, const GaussRule& rule, F&& f) {
  const double h = (hi - lo) / panels;
  double acc = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double a = lo + k * h;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) acc += rule.weights[q] * h * f(a + rule.nodes[q] * h);
  }
  return acc;
}

double omega(double rho) { return rho < 1.0 ? std::exp(-1.0 / (1.0 - rho * rho)) : 0.0; }

double omega_prime(double rho) {
  if (rho >= 1.0) return 0.0;
  const double d = 1.0 - rho * rho;
  return -2.0 * rho / (d * d) * omega(rho);
}

constexpr int kPanels = 48;

double bump_energy(int N) {
  const GaussRule rule = gauss_legendre(10);
  const double radial = composite(0.0, 1.0, kPanels, rule, [&](double rho) {
    const double d = omega_prime(rho);
    return d * d * std::pow(rho, N - 1);
  });
  return sphere_area(N) * radial;
}

// ∫_{|y|<1} V(|x_c + eps y|) ω(y)^{p+1} dy with x_c = (c, 0, ..., 0).
double bump_denominator(const ProblemParams& params, double c, double eps) {
  const GaussRule rule = gauss_legendre(10);
  const double p1 = params.p + 1.0;
  const int N = params.N;
  if (N == 1) {
    return composite(-1.0, 1.0, 2 * kPanels, rule, [&](double y) {
      return eval_V(params, std::abs(c + eps * y)) * std::pow(omega(std::abs(y)), p1);
    });
  }
  const double cap = sphere_area(N - 1);
  return cap * composite(0.0, 1.0, kPanels, rule, [&](double rho) {
           const double radial_part = std::pow(omega(rho), p1) * std::pow(rho, N - 1);
           if (radial_part == 0.0) return 0.0;
           const double angular = composite(0.0, std::numbers::pi, kPanels / 2, rule, [&](double phi) {
             const double x = c + eps * rho * std::cos(phi);
             const double y = eps * rho * std::sin(phi);
             return eval_V(params, std::sqrt(x * x + y * y)) * std::pow(std::sin(phi), N - 2);
           });
           return radial_part * angular;
         });
}

}  // namespace

double bump_quotient(int N, double p) {
  if (N < 1) throw ParameterError("bump_quotient: N must be >= 1");
  const GaussRule rule = gauss_legendre(10);
  const double mass = sphere_area(N) * composite(0.0, 1.0, kPanels, rule, [&](double rho) {
                        return std::pow(omega(rho), p + 1.0) * std::pow(rho, N - 1);
                      });
  return bump_energy(N) / std::pow(mass, 2.0 / (p + 1.0));
}

double trial_upper_bound(const ProblemParams& params, double bump_width) {
  params.validate();
  if (!(bump_width > 0.0 && bump_width <= 1.0)) throw ParameterError("trial_upper_bound: bump_width must lie in (0, 1]");
  const double a = params.alpha;
  const double R = params.R;
  const int N = params.N;
  const double p = params.p;
  if (!(a > 0.0)) throw ParameterError("trial_upper_bound: alpha must be positive");
  const double eps = bump_width / a;

  const double energy = std::pow(eps, N - 2) * bump_energy(N);
  auto quotient_at = [&](double center) {
    const double den = std::pow(eps, N) * bump_denominator(params, center, eps);
    if (!(den > 0.0)) throw DegenerateWeightError("trial_upper_bound: weighted bump integral vanishes");
    return energy / std::pow(den, 2.0 / (p + 1.0));
  };

  double best = std::numeric_limits<double>::infinity();
  bool any = false;
  // Outer bump: support [1 - (1+w)/α, 1] must lie beyond the shell.
  if (R < 1.0 && a * (1.0 - R) > 1.0 + bump_width) {
    best = std::min(best, quotient_at(1.0 - 1.0 / a));
    any = true;
  }
  // Inner bump: support [(1-w)/α, (1+w)/α] must lie inside the shell.
  if (R > 0.0 && (1.0 + bump_width) < a * R) {
    best = std::min(best, quotient_at(1.0 / a));
    any = true;
  }
  if (!any) {
    throw ParameterError("trial_upper_bound: no bump fits; need alpha > (1+w)/(1-R) or alpha > (1+w)/R");
  }
  return best;
}

SymmetryGap symmetry_gap(const RadialResult& radial, const BallResult& full, double rel_tol) {
  SymmetryGap out;
  out.gap = radial.S_rad - full.S_full;
  out.broken = out.gap > rel_tol * radial.S_rad && full.asym_index > 10.0 * rel_tol;
  return out;
}

}  // namespace shellbreak

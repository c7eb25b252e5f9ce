#include "shellbreak/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include "shellbreak/errors.hpp"

namespace shellbreak {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Line-search iterations before the run is declared stalled, and the gradient level below
// which a stall is attributed to round-off rather than a bad direction.
constexpr int kMaxHalvings = 40;
constexpr double kStallGradient = 1e-7;
constexpr std::size_t kNonmonotoneMemory = 10;

// Iterate together with everything derived from it.
struct State {
  std::vector<double> u, Ku, g, w, d, Kd;
  double E = 0.0;
  double dKd = 0.0;

  explicit State(std::size_t n) : u(n), Ku(n), g(n), w(n), d(n), Kd(n) {}
};

// Assumes s.u, s.g hold a point with P(u) = 1 and its P-gradient.
void finish_state(const QuotientProblem& problem, State& s) {
  const double p = problem.exponent();
  problem.apply_stiffness(s.u, s.Ku);
  s.E = dot(s.u, s.Ku);
  problem.solve_stiffness(s.g, s.w);
  const double c = s.E / (p + 1.0);
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    s.d[i] = s.u[i] - c * s.w[i];
    s.Kd[i] = s.Ku[i] - c * s.g[i];
  }
  s.dKd = std::max(0.0, dot(s.d, s.Kd));
}

// |u| scaled to P = 1; returns false when P vanishes.
bool normalize(const QuotientProblem& problem, State& s) {
  const double p = problem.exponent();
  for (auto& x : s.u) x = std::abs(x);
  const double P = problem.power_integral(s.u, s.g);
  if (!(P > 0.0) || !std::isfinite(P)) return false;
  const double scale = std::pow(P, -1.0 / (p + 1.0));
  const double gscale = std::pow(scale, p);
  for (auto& x : s.u) x *= scale;
  for (auto& x : s.g) x *= gscale;
  return true;
}

}  // namespace

double QuotientProblem::energy(std::span<const double> u) const {
  std::vector<double> Ku(u.size());
  apply_stiffness(u, Ku);
  return dot(u, Ku);
}

double QuotientProblem::quotient(std::span<const double> u) const {
  const double P = power_integral(u, {});
  return energy(u) / std::pow(P, 2.0 / (exponent() + 1.0));
}

MinimizeOutcome minimize_quotient(const QuotientProblem& problem, std::vector<double> start,
                                  const SolveOptions& opts) {
  const std::size_t n = problem.size();
  if (start.size() != n) throw ParameterError("minimize_quotient: start vector has wrong size");

  State cur(n);
  State trial(n);
  cur.u = std::move(start);
  if (!normalize(problem, cur)) {
    throw DegenerateWeightError("weighted L^{p+1} integral of the start vanishes; alpha too large for the grid");
  }
  finish_state(problem, cur);

  std::deque<double> history{cur.E};
  double tau = 1.0;
  MinimizeOutcome out;

  auto gradient_norm = [&](const State& s) { return std::sqrt(s.dKd / s.E); };

  long it = 0;
  for (;; ++it) {
    const double gnorm = gradient_norm(cur);
    bool done = gnorm < opts.grad_tol;
    if (!done && history.size() > static_cast<std::size_t>(opts.change_window)) {
      const double old = history[history.size() - 1 - static_cast<std::size_t>(opts.change_window)];
      done = std::abs(old - cur.E) <= opts.rel_change_tol * cur.E;
    }
    if (done) {
      out.converged = true;
      break;
    }
    if (it >= opts.max_iter) {
      throw SolverError("quotient minimization did not converge", it, gnorm);
    }

    const std::size_t mem = std::min(history.size(), kNonmonotoneMemory);
    const double reference = *std::max_element(history.end() - static_cast<long>(mem), history.end());

    bool accepted = false;
    for (int halving = 0; halving < kMaxHalvings; ++halving) {
      for (std::size_t i = 0; i < n; ++i) trial.u[i] = cur.u[i] - tau * cur.d[i];
      if (normalize(problem, trial)) {
        problem.apply_stiffness(trial.u, trial.Ku);
        trial.E = dot(trial.u, trial.Ku);
        if (trial.E <= reference - 2e-4 * tau * cur.dKd) {
          accepted = true;
          break;
        }
      }
      tau *= 0.5;
    }
    if (!accepted) {
      if (gnorm < kStallGradient) {
        out.converged = true;
        break;
      }
      throw SolverError("line search stalled", it, gnorm);
    }

    problem.solve_stiffness(trial.g, trial.w);
    const double c = trial.E / (problem.exponent() + 1.0);
    for (std::size_t i = 0; i < n; ++i) {
      trial.d[i] = trial.u[i] - c * trial.w[i];
      trial.Kd[i] = trial.Ku[i] - c * trial.g[i];
    }
    trial.dKd = std::max(0.0, dot(trial.d, trial.Kd));

    // Barzilai–Borwein length in the energy inner product.
    double sKs = 0.0;
    double sKy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double s = trial.u[i] - cur.u[i];
      sKs += s * (trial.Ku[i] - cur.Ku[i]);
      sKy += s * (trial.Kd[i] - cur.Kd[i]);
    }
    tau = (sKy > 0.0 && sKs > 0.0) ? std::clamp(sKs / sKy, 1e-3, 1e3) : std::min(2.0 * tau, 1.0);

    std::swap(cur, trial);
    history.push_back(cur.E);
    if (history.size() > std::max<std::size_t>(64, static_cast<std::size_t>(opts.change_window) + 2)) {
      history.pop_front();
    }
  }

  out.u = std::move(cur.u);
  out.quotient = cur.E;
  out.iterations = it;
  out.gradient_norm = gradient_norm(cur);
  return out;
}

}  // namespace shellbreak

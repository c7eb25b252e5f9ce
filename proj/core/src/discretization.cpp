#include "discretization.hpp"

#include "shellbreak/mesh.hpp"

namespace shellbreak::detail {

std::vector<ElementPoint> element_points(std::span<const double> nodes, std::span<const double> breaks, int order) {
  const GaussRule rule = gauss_legendre(order);
  std::vector<ElementPoint> out;
  out.reserve((nodes.size() - 1) * rule.nodes.size());
  auto add = [&](std::size_t e, double lo, double hi) {
    const double a = nodes[e];
    const double h = nodes[e + 1] - a;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double r = lo + rule.nodes[q] * (hi - lo);
      out.push_back({e, (r - a) / h, r, rule.weights[q] * (hi - lo)});
    }
  };
  for (std::size_t e = 0; e + 1 < nodes.size(); ++e) {
    double lo = nodes[e];
    const double b = nodes[e + 1];
    for (double x : breaks) {
      if (x > lo && x < b) {
        add(e, lo, x);
        lo = x;
      }
    }
    add(e, lo, b);
  }
  return out;
}

double radial_moment(double a, double b, int N) {
  double sum = 0.0;
  double ak = 1.0;
  for (int k = 0; k < N; ++k) {
    sum += ak * std::pow(b, N - 1 - k);
    ak *= a;
  }
  return (b - a) * sum / static_cast<double>(N);
}

void tridiag_apply(std::span<const double> diag, std::span<const double> off, std::span<const double> u,
                   std::span<double> out) {
  const std::size_t m = diag.size();
  for (std::size_t i = 0; i < m; ++i) {
    double acc = diag[i] * u[i];
    if (i > 0) acc += off[i - 1] * u[i - 1];
    if (i + 1 < m) acc += off[i] * u[i + 1];
    out[i] = acc;
  }
}

void tridiag_factor(std::span<const double> diag, std::span<const double> off, std::vector<double>& d,
                    std::vector<double>& l) {
  const std::size_t m = diag.size();
  d.assign(m, 0.0);
  l.assign(m > 0 ? m - 1 : 0, 0.0);
  if (m == 0) return;
  d[0] = diag[0];
  for (std::size_t i = 0; i + 1 < m; ++i) {
    l[i] = off[i] / d[i];
    d[i + 1] = diag[i + 1] - l[i] * off[i];
  }
}

void tridiag_solve(std::span<const double> d, std::span<const double> l, std::span<const double> rhs,
                   std::span<double> out) {
  const std::size_t m = d.size();
  if (m == 0) return;
  out[0] = rhs[0];
  for (std::size_t i = 1; i < m; ++i) out[i] = rhs[i] - l[i - 1] * out[i - 1];
  for (std::size_t i = 0; i < m; ++i) out[i] /= d[i];
  for (std::size_t i = m - 1; i-- > 0;) out[i] -= l[i] * out[i + 1];
}

}  // namespace shellbreak::detail

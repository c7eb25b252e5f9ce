#include "shellbreak/mesh.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "shellbreak/errors.hpp"

namespace shellbreak {

GaussRule gauss_legendre(int order) {
  if (order < 1) throw ParameterError("gauss_legendre: order must be >= 1");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(order); it != cache.end()) return it->second;
  }

  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int n = order;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged root for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = pk;
    }
    if (n == 1) p0 = 1.0;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Map [-1, 1] -> [0, 1].
    rule.nodes[i] = 0.5 * (1.0 - x);
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + x);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.5;

  std::lock_guard lock(mutex);
  cache.emplace(order, rule);
  return rule;
}

GradedMap::GradedMap(double lo, double hi, std::vector<Cluster> clusters)
    : lo_(lo), hi_(hi), clusters_(std::move(clusters)) {
  if (!(hi > lo)) throw ParameterError("GradedMap: empty interval");
  cluster_norm_.reserve(clusters_.size());
  total_ = hi_ - lo_;
  for (const auto& c : clusters_) {
    if (!(c.width > 0.0) || !(c.mass >= 0.0)) throw ParameterError("GradedMap: bad cluster");
    const double norm = std::atan((hi_ - c.center) / c.width) - std::atan((lo_ - c.center) / c.width);
    cluster_norm_.push_back(norm);
    total_ += c.mass * (hi_ - lo_);
  }
}

double GradedMap::density(double x) const {
  double rho = 1.0;
  for (std::size_t k = 0; k < clusters_.size(); ++k) {
    const auto& c = clusters_[k];
    const double z = (x - c.center) / c.width;
    rho += c.mass * (hi_ - lo_) / (c.width * (1.0 + z * z) * cluster_norm_[k]);
  }
  return rho;
}

double GradedMap::cumulative(double x) const {
  double acc = x - lo_;
  for (std::size_t k = 0; k < clusters_.size(); ++k) {
    const auto& c = clusters_[k];
    acc += c.mass * (hi_ - lo_) *
           (std::atan((x - c.center) / c.width) - std::atan((lo_ - c.center) / c.width)) / cluster_norm_[k];
  }
  return acc;
}

double GradedMap::forward(double x) const { return cumulative(x) / total_; }

double GradedMap::inverse(double xi) const {
  if (xi <= 0.0) return lo_;
  if (xi >= 1.0) return hi_;
  const double target = xi * total_;
  double a = lo_;
  double b = hi_;
  double x = lo_ + xi * (hi_ - lo_);
  double prev_step = b - a;
  // Safeguarded Newton: fall back to bisection when the Newton step leaves the bracket or
  // does not halve the previous step.
  for (int iter = 0; iter < 400; ++iter) {
    const double f = cumulative(x) - target;
    if (f == 0.0) return x;
    if (f > 0.0) b = x; else a = x;
    double next = x - f / density(x);
    if (!(next > a && next < b) || std::abs(next - x) > 0.5 * prev_step) next = 0.5 * (a + b);
    prev_step = std::abs(next - x);
    x = next;
    if (prev_step <= 1e-16 * std::max(1.0, std::abs(x)) || b - a <= 4e-16) break;
  }
  return x;
}

std::vector<double> GradedMap::nodes(std::size_t n) const {
  if (n < 2) throw ParameterError("GradedMap::nodes: need at least two nodes");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = inverse(static_cast<double>(i) / static_cast<double>(n - 1));
  }
  out.front() = lo_;
  out.back() = hi_;
  return out;
}

}  // namespace shellbreak

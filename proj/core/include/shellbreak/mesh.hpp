#pragma once

#include <cstddef>
#include <vector>

namespace shellbreak {

/// Gauss–Legendre rule mapped to [0, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int order);

/// A Lorentzian node cluster: `mass` is the share of nodes it attracts relative to the
/// uniform background (which carries mass 1).
struct Cluster {
  double center = 0.0;
  double width = 1.0;
  double mass = 0.0;
};

/// Smooth monotone map from the computational coordinate xi in [0, 1] onto [lo, hi],
/// obtained by equidistributing the density 1 + Σ mass_c · Lorentzian_c. Nodes placed at
/// xi = i/(n-1) and at the midpoints of that set are nested, so refinement keeps old nodes.
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(double lo, double hi, std::vector<Cluster> clusters);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::vector<Cluster>& clusters() const { return clusters_; }

  /// Computational coordinate of the physical point x.
  double forward(double x) const;
  /// Physical point at computational coordinate xi.
  double inverse(double xi) const;
  /// n nodes at xi = i/(n-1); endpoints are exact.
  std::vector<double> nodes(std::size_t n) const;

 private:
  double density(double x) const;
  double cumulative(double x) const;

  double lo_ = 0.0;
  double hi_ = 1.0;
  std::vector<Cluster> clusters_;
  std::vector<double> cluster_norm_;
  double total_ = 1.0;
};

}  // namespace shellbreak

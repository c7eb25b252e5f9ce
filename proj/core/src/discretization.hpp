#pragma once

// Pieces shared by the radial and the axisymmetric discretizations.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace shellbreak::detail {

/// |u|^{p+1} and |u|^{p-1} u, with a multiplication chain for small integer p.
class PowerKernel {
 public:
  explicit PowerKernel(double p) : p_(p) {
    const double rounded = std::round(p);
    if (rounded == p && p >= 1.0 && p <= 12.0) ip_ = static_cast<int>(rounded);
  }

  double pow_p(double a) const {
    a = std::abs(a);
    if (ip_ > 0) {
      double out = a;
      for (int k = 1; k < ip_; ++k) out *= a;
      return out;
    }
    return std::pow(a, p_);
  }

  /// Returns |u|^{p+1} and stores |u|^{p-1}u in `signed_p`.
  double eval(double u, double& signed_p) const {
    const double ap = pow_p(u);
    signed_p = u < 0.0 ? -ap : ap;
    return ap * std::abs(u);
  }

 private:
  double p_;
  int ip_ = 0;
};

/// Gauss point on a radial element [nodes[elem], nodes[elem+1]]: local coordinate t in [0, 1],
/// radius r and the length weight (dr).
struct ElementPoint {
  std::size_t elem;
  double t;
  double r;
  double w;
};

/// Gauss points for every element; elements are split at any breakpoint in their interior.
std::vector<ElementPoint> element_points(std::span<const double> nodes, std::span<const double> breaks, int order);

/// ∫_a^b r^{N-1} dr without cancellation for short elements.
double radial_moment(double a, double b, int N);

/// Symmetric tridiagonal matrix (diag, off) and its L D L^T factors (d, l).
void tridiag_apply(std::span<const double> diag, std::span<const double> off, std::span<const double> u,
                   std::span<double> out);
void tridiag_factor(std::span<const double> diag, std::span<const double> off, std::vector<double>& d,
                    std::vector<double>& l);
void tridiag_solve(std::span<const double> d, std::span<const double> l, std::span<const double> rhs,
                   std::span<double> out);

}  // namespace shellbreak::detail

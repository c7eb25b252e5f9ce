#pragma once

#include <string>
#include <vector>

#include "shellbreak/options.hpp"
#include "shellbreak/radial.hpp"
#include "shellbreak/weight.hpp"

namespace shellbreak {

/// Tensor mesh in (r, θ) for fields that are symmetric about the x_1 axis (N >= 2), or the
/// mirrored radial mesh on [-1, 1] when N = 1.
///
/// For N >= 2 node (i, j) sits at (radial.nodes[i], theta[j]); the whole row i = 0 is the origin.
/// Measure weights are lumped hat moments of |S^{N-2}| r^{N-1} sin^{N-2}θ dr dθ.
struct AxisymGrid {
  int N = 3;
  double shell = 0.0;
  RadialGrid radial;
  std::vector<double> theta;            ///< N >= 2 only, 0 = θ_0 < ... < θ_{n_θ} = π
  std::vector<double> line;             ///< N = 1 only, -1 = x_0 < ... < x_{2 n_r} = 1
  std::vector<double> measure_weights;  ///< row-major (i, j) for N >= 2, per point of `line` for N = 1

  int n_r() const { return static_cast<int>(radial.nodes.size()) - 1; }
  int n_theta() const { return theta.empty() ? 0 : static_cast<int>(theta.size()) - 1; }
  std::size_t node_count() const { return measure_weights.size(); }
  double total_measure() const;
};

/// n_r radial intervals graded as in build_radial_grid, n_theta angular intervals clustered
/// towards θ = 0 where off-center groundstates peak.
AxisymGrid build_axisym_grid(const ProblemParams& params, int n_r, int n_theta, double grading_strength = 2.0);

struct AxisymField {
  AxisymGrid grid;
  std::vector<double> values;  ///< one per node, same layout as grid.measure_weights

  /// Value at node (i, j); N = 1 ignores j and reads line point i.
  double at(int i, int j) const;
};

struct StartRecord {
  std::string label;
  double quotient = 0.0;
  double asym_index = 0.0;
  long iterations = 0;
  double gradient_norm = 0.0;
};

struct BallResult {
  double S_full = 0.0;
  double C_full = 0.0;
  AxisymField field;  ///< rescaled groundstate S^{1/(p-1)} u*, u* with ∫V|u*|^{p+1} = 1
  double s_peak = 0.0;
  double beta_peak = 0.0;
  double asym_index = 0.0;
  std::string chosen_start;
  std::vector<StartRecord> starts;
  int quad_order = 4;
};

/// Best axisymmetric minimizer of the full quotient over a radial start, a boundary bump at
/// (1 - 1/max(α,2), θ = 0), an origin-side bump at (1/max(α,2), θ = 0) (skipped when R = 0 < α,
/// where the weight vanishes at the origin) and
/// opts.extra_random_starts seeded bumps. Starts within 1e-10 (relative) of the best quotient
/// count as ties; among ties the field with the larger asym_index is returned, while S_full
/// stays the smallest quotient found.
BallResult minimize_full_quotient(const ProblemParams& params, const AxisymGrid& grid, const SolveOptions& opts = {});

/// Discrete quotient of an arbitrary field on the grid.
double full_quotient(const ProblemParams& params, const AxisymGrid& grid, const std::vector<double>& values,
                     int quad_order = 4);

/// Relative L^2 distance between a field and its angular average (its even part when N = 1).
double asym_index(const AxisymGrid& grid, const std::vector<double>& values);

/// Quotient of ω(α(x - x_α)/w), ω(y) = exp(-1/(1-|y|^2)), at x_α = (1 - 1/α, 0, ...) and at
/// x_α = (1/α, 0, ...) whenever the support avoids the shell; returns the smaller value.
double trial_upper_bound(const ProblemParams& params, double bump_width = 1.0);

/// Quotient of ω over R^N with constant weight.
double bump_quotient(int N, double p);

struct SymmetryGap {
  double gap = 0.0;
  bool broken = false;
};

SymmetryGap symmetry_gap(const RadialResult& radial, const BallResult& full, double rel_tol = 1e-4);

}  // namespace shellbreak

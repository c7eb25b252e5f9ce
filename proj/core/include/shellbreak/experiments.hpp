#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shellbreak/ball.hpp"
#include "shellbreak/options.hpp"
#include "shellbreak/radial.hpp"
#include "shellbreak/weight.hpp"

namespace shellbreak {

/// Mesh sizes used by every row of an experiment. Both solvers run on the same radial mesh
/// (n_r intervals), so S_rad and S_full are directly comparable.
struct GridSpec {
  int n_r = 128;
  int n_theta = 64;
  double grading_strength = 2.0;
};

/// One (N, p, R, α) row of an experiment. Numeric fields are NaN when status != "ok".
struct SweepRecord {
  ProblemParams params;
  std::string status = "ok";
  double S_rad = 0.0;
  double S_full = 0.0;
  double C_rad = 0.0;
  double C_full = 0.0;
  double gap = 0.0;
  bool broken = false;
  double s_peak = 0.0;
  double beta_peak = 0.0;
  double asym_index = 0.0;
  std::string chosen_start;
  double scaled_S_full = 0.0;  ///< S_full α^{N-2-2N/(p+1)}
  double scaled_S_rad = 0.0;   ///< S_rad α^{N-2-2N/(p+1)}
  double scaled_beta = 0.0;    ///< β α^{-2/(p-1)}
  double A_over_B = 0.0;
  double nehari_residual = 0.0;
  double pohozaev_residual = 0.0;
  double lemma3_slack = 0.0;

  bool ok() const { return status == "ok"; }
};

/// Runs the radial and the full solver for one parameter set. Errors are caught and stored in
/// `status`; this never throws for solver failures.
SweepRecord solve_record(const ProblemParams& params, const GridSpec& grids, const SolveOptions& opts = {});

/// One record per α (template's α is ignored), α-ordered. Rows run concurrently on opts.threads
/// workers; the table does not depend on the thread count.
std::vector<SweepRecord> sweep_alpha(const ProblemParams& params_template, std::span<const double> alphas,
                                     const GridSpec& grids, const SolveOptions& opts = {});

struct AlphaWindow {
  double lo = 0.0;
  double hi = 1e300;
  bool contains(double alpha) const { return alpha >= lo && alpha <= hi; }
};

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  AlphaWindow window;
  std::size_t points = 0;
};

/// Least-squares line through (ln α, ln y). Needs at least 5 points, all positive.
ExponentFit fit_exponent(std::span<const double> alphas, std::span<const double> values, AlphaWindow window = {});
ExponentFit fit_exponent(std::span<const SweepRecord> records, const std::function<double(const SweepRecord&)>& quantity,
                         AlphaWindow window = {});

/// Best constant of H^1_0(B) ⊂ L^{p+1}(B): the radial quotient with V ≡ 1 on n nodes.
/// The critical exponent (p = 5 for N = 3) is refused with ParameterError.
double sobolev_constant(int N, double p, int n = 2000, const SolveOptions& opts = {});

struct MovingShellResult {
  double delta = 0.0;
  std::vector<SweepRecord> records;
  std::optional<double> first_broken;  ///< smallest α with broken = true
  std::optional<double> broken_from;   ///< start of the trailing run of broken rows
};

/// Sweep with R(α) = α^{-δ} (clipped to [0, 1)).
MovingShellResult moving_shell(double delta, const ProblemParams& params_template, std::span<const double> alphas,
                               const GridSpec& grids, const SolveOptions& opts = {});

struct ConcentrationSummary {
  std::vector<double> alphas;
  std::vector<double> boundary_distance;  ///< min(s_peak, 1 - s_peak) per row
  std::vector<double> scaled_beta;
  double tail_min_distance = 0.0;         ///< over the upper half of the α range
  bool distance_decreasing = false;       ///< non-increasing along the rows
  double scaled_beta_min = 0.0;
  double scaled_beta_max = 0.0;
  bool beta_increasing = false;           ///< strictly increasing beta_peak along the rows
};

/// Summary of the ok rows of an α sweep at fixed R.
ConcentrationSummary concentration_track(std::span<const SweepRecord> records);

struct ContinuityRow {
  double R = 0.0;
  SweepRecord record;
  double deviation = 0.0;  ///< |S_full(R) - S_full(endpoint)| / S_full(endpoint)
};

struct ContinuityTable {
  SweepRecord endpoint;
  std::vector<ContinuityRow> rows;
  bool deviation_shrinking = false;  ///< reported only
};

/// S_full along R_list compared with the endpoint R = endpoint_R (0 or 1) at fixed α.
ContinuityTable continuity_in_R(const ProblemParams& params, std::span<const double> R_list, double endpoint_R,
                                const GridSpec& grids, const SolveOptions& opts = {});

/// Upper envelope  e^{4/((p+1) max(R,1-R))} S(N,p) (1 + slack)  for scaled_S_full.
double scaled_upper_envelope(const ProblemParams& params, double sobolev, double slack = 0.2);

/// Lower envelope  K(N,p)^{-2/(p+1)} (1 - slack)  for scaled_S_rad at R = 1, N >= 3.
double scaled_lower_envelope(int N, double p, double slack = 0.2);

}  // namespace shellbreak

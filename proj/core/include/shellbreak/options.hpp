#pragma once

#include <cstdint>

namespace shellbreak {

struct SolveOptions {
  long max_iter = 200000;
  /// Stop when the quotient moved by less than this (relative) over `change_window` steps.
  double rel_change_tol = 1e-10;
  int change_window = 10;
  /// Stop when the energy-norm of the projected gradient, relative to ||u||_energy, is below this.
  double grad_tol = 1e-9;
  /// Gauss points per element (per side of the shell when an element straddles it).
  int quad_order = 4;
  int extra_random_starts = 0;
  std::uint64_t seed = 0;
  int threads = 1;
};

}  // namespace shellbreak

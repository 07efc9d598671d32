#pragma once

#include <array>

#include "pyrolad/model.hpp"
#include "pyrolad/rungstate.hpp"

// Wootters concurrence of the two spins on one rung, through the general
// R-matrix construction and through the X-state closed form.

namespace pyrolad {

struct ConcurrenceResult {
  double value = 0.0;  // max(sqrt(l1) - sqrt(l2) - sqrt(l3) - sqrt(l4), 0)
  std::array<double, 4> sqrt_eigenvalues = {0, 0, 0, 0};  // descending
};

// Builds R = rho (sy x sy) rho^* (sy x sy) on the normalized matrix and
// extracts its eigenvalues through the similar Hermitian product
// sqrt(rho~) rho sqrt(rho~). Rejects input whose normalized matrix has an
// eigenvalue below -1e-12.
ConcurrenceResult concurrence_general(const RungDensityMatrix& rho);

// Closed form for the X shape: 2 max(0, |y| - sqrt(z w)) / (z + 2x + w).
double concurrence_xstate(const RungDensityMatrix& rho);

// Concurrence at a parameter point; the (T, h) surface of this function is
// the entanglement observable reported by sweeps.
double concurrence_at(const ModelParams& p);

}  // namespace pyrolad

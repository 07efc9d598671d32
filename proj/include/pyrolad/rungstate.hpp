#pragma once

#include "pyrolad/model.hpp"

// Closed-form reduced density matrix of a single rung, obtained from the
// Gibbs state of a block of two adjacent rungs, and the magnetization /
// susceptibility computed from it.

namespace pyrolad {

// Unnormalized X-form matrix in the standard two-spin basis {uu, ud, du, dd}:
//
//     [ z  0  0  0 ]
//     [ 0  x  y  0 ]
//     [ 0  y  x  0 ]
//     [ 0  0  0  w ]
//
// Position (1,1) holds z (the T^z = +1 weight) and (4,4) holds w. The
// physical components are the stored ones times exp(log_scale); log_scale is
// zero except at extreme inverse temperatures where the literal values would
// leave the double range. Every consumer divides by the trace, so the common
// scale cancels.
struct RungDensityMatrix {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double w = 0.0;
  double trace_value = 0.0;  // z + 2x + w, stored scale
  double log_scale = 0.0;
};

RungDensityMatrix rung_density_matrix(const ModelParams& p);

// tr(rho S_z) / tr(rho) = (z - w) / (2 (z + 2x + w)); per spin site.
double magnetization_rdm(const ModelParams& p);

// d m / d h by central difference with step 1e-4 * max(1, |h|).
double susceptibility_rdm(const ModelParams& p);

}  // namespace pyrolad

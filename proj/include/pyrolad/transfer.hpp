#pragma once

#include <array>

#include "pyrolad/model.hpp"

// Transfer-matrix route to the thermodynamic limit: the 4x4 symmetric matrix
// of bond Boltzmann weights, its Perron eigenpair, and the per-rung free
// energy / magnetization / susceptibility derived from it.

namespace pyrolad {

// W in the canonical rung basis. To keep low temperatures representable the
// stored entries are exp(-beta*(E - E_min)); the physical matrix is
// exp(log_scale) * entries with log_scale = -beta*E_min. Every observable
// below is a ratio in which the scale cancels, except the log-partition,
// which adds log_scale back explicitly.
struct TransferMatrix {
  std::array<std::array<double, 4>, 4> entries;
  double log_scale = 0.0;
};

struct Eigenpair {
  double value = 0.0;                       // dominant eigenvalue of entries
  std::array<double, 4> vector = {0, 0, 0, 0};  // unit norm
};

// entries[a][b] = exp(-beta*(bond_energy(a,b) - E_min)). Throws
// NumericalError if an entry underflows all the way to zero (the matrix
// would no longer be strictly positive).
TransferMatrix build_transfer_matrix(const ModelParams& p);

// Power iteration with a positive diagonal shift and a Rayleigh-quotient
// stopping test; the returned pair satisfies |Wv - lambda v| <= 1e-12*lambda.
// Requires a symmetric matrix with non-negative entries.
Eigenpair dominant_eigenpair(const TransferMatrix& w);

// (1/N) log Z in the thermodynamic limit: 3*beta*J_H/4 + log(lambda_max).
double log_partition_per_rung(const ModelParams& p);

// Magnetization per spin site (saturation 1/2), from the Hellmann-Feynman
// derivative of the dominant eigenvalue with respect to the field.
double magnetization_tm(const ModelParams& p);

// d m / d h by central difference with step 1e-4 * max(1, |h|).
double susceptibility_tm(const ModelParams& p);

// d log(lambda_max) / d h via Hellmann-Feynman, exposed so the derivative
// can be cross-checked against finite differences of the log-partition.
double dlog_lambda_dh(const ModelParams& p);

}  // namespace pyrolad

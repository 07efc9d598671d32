#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pyrolad/linalg.hpp"
#include "pyrolad/model.hpp"
#include "pyrolad/rungstate.hpp"

// Independent brute-force ground truths used to validate the closed-form
// routes: exhaustive enumeration in the composite basis, full quantum exact
// diagonalization of small periodic ladders, the two-rung block reduced
// density matrix, and T = 0 ground-state phase boundaries.

namespace pyrolad {

// A periodic configuration of composite rung states, 2 <= N <= 12.
struct SpinConfiguration {
  std::vector<RungState> rung_states;

  static SpinConfiguration from_index(std::uint64_t index, int n_rungs);
  // Sum of bond_energy over the N periodic bonds.
  double total_bond_energy(const ModelParams& p) const;
};

inline constexpr int kMaxClassicalRungs = 12;
inline constexpr int kMaxQuantumRungs = 5;

// Exact per-rung log-partition by summing all 4^N composite configurations
// (log-sum-exp stabilized, Kahan-compensated); includes the 3*beta*J_H/4
// constant so it is directly comparable with the quantum route.
double classical_log_partition(const ModelParams& p, int n_rungs);

// Dense 4^N-dimensional ladder Hamiltonian over 2N spin-1/2 sites, in the
// product basis ordered by bits (bit 2i = upper spin of rung i, bit 2i+1 =
// lower spin; set bit = spin up). Real symmetric.
linalg::Matrix quantum_hamiltonian(const ModelParams& p, int n_rungs);

// Composite operators of rung i as matrices in the same basis.
linalg::Matrix rung_spin_squared_operator(int rung, int n_rungs);  // T_i^2
linalg::Matrix rung_sz_operator(int rung, int n_rungs);            // T_i^z

// Per-rung log-partition from full diagonalization of quantum_hamiltonian,
// 2 <= N <= 5. Verifies Hermiticity before diagonalizing.
double quantum_log_partition(const ModelParams& p, int n_rungs);

// Reduced density matrix of rung 1 from the Gibbs state of an isolated
// two-rung block: e^{-beta H_bond} is diagonal in the composite product
// basis; rung 2 is traced out and rung 1 rotated to the standard two-spin
// basis. Independent of the closed-form construction in rungstate.
RungDensityMatrix block_reduced_density_matrix(const ModelParams& p);

struct PhaseBoundaries {
  double h_c1 = 0.0;  // singlet phase -> alternating triplet/singlet
  double h_c2 = 0.0;  // alternating -> saturated
  std::array<double, 3> plateau_magnetizations = {0.0, 0.25, 0.5};  // per site
  bool collapsed = false;  // mid plateau width below resolution
};

// T = 0 critical fields from the lower envelope of the per-rung energies of
// all periodic patterns of period <= 2. For J_H > J_I > 0 this gives
// h_c1 = J_H and h_c2 = J_H + 2 J_I. Requires J_H, J_I > 0.
PhaseBoundaries ground_state_phase_boundaries(double j_heisenberg,
                                              double j_ising);

}  // namespace pyrolad

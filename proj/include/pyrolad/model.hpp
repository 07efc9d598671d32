#pragma once

#include <array>
#include <stdexcept>

// Ising-Heisenberg ladder with Heisenberg rungs and Ising inter-rung bonds,
// written in the composite rung basis. Everything downstream (transfer
// matrix, reduced density matrix, brute-force oracles) consumes the bond
// energy defined here.

namespace pyrolad {

// Bad input (out-of-domain parameters, malformed states, invalid sizes).
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Failure of a numerical procedure (non-convergence, under/overflow).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Couplings, external field and temperature, all in units where K_B = 1.
struct ModelParams {
  double j_heisenberg = 0.0;  // intra-rung Heisenberg coupling J_H
  double j_ising = 0.0;       // inter-rung Ising coupling J_I
  double field = 0.0;         // external field h
  double temperature = 1.0;   // absolute temperature T > 0

  double beta() const { return 1.0 / temperature; }
};

// Throws ValidationError unless all entries are finite and temperature > 0.
void validate(const ModelParams& p);

// One of the four composite eigenstates of a rung: total spin T in {0, 1}
// and z-component T^z, with T^z = 0 forced for the singlet.
struct RungState {
  int total_spin;
  int z_component;
  bool operator==(const RungState&) const = default;
};

// Canonical basis order (1,-1), (1,0), (1,1), (0,0).
inline constexpr std::array<RungState, 4> kRungBasis = {
    RungState{1, -1}, RungState{1, 0}, RungState{1, 1}, RungState{0, 0}};

bool is_valid(const RungState& s);

// Eigenvalue of T^2 = T(T+1): 2 for a triplet, 0 for the singlet.
double t_squared(const RungState& s);

// Index of a state in kRungBasis; throws on invalid states.
int basis_index(const RungState& s);

// Energy of one inter-rung bond in the composite basis,
//   E(a, b) = (J_H/4)(t_a^2 + t_b^2) + J_I t_a^z t_b^z - (h/2)(t_a^z + t_b^z).
// The transfer matrix entry for the pair (a, b) is exp(-beta * E(a, b)).
double bond_energy(const RungState& left, const RungState& right,
                   const ModelParams& p);

// Constant offset -3*N*J_H/4 separating the full Hamiltonian from the sum
// of bond terms. Requires n_rungs >= 2 (a periodic ladder).
double hamiltonian_constant(const ModelParams& p, int n_rungs);

}  // namespace pyrolad

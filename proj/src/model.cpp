#include "pyrolad/model.hpp"

#include <cmath>
#include <string>

namespace pyrolad {

void validate(const ModelParams& p) {
  if (!std::isfinite(p.j_heisenberg) || !std::isfinite(p.j_ising) ||
      !std::isfinite(p.field)) {
    throw ValidationError("model parameters must be finite");
  }
  if (!std::isfinite(p.temperature) || p.temperature <= 0.0) {
    throw ValidationError("temperature must be a finite positive number, got " +
                          std::to_string(p.temperature));
  }
}

bool is_valid(const RungState& s) {
  if (s.total_spin == 1) return s.z_component >= -1 && s.z_component <= 1;
  if (s.total_spin == 0) return s.z_component == 0;
  return false;
}

double t_squared(const RungState& s) { return s.total_spin == 1 ? 2.0 : 0.0; }

int basis_index(const RungState& s) {
  for (int i = 0; i < 4; ++i) {
    if (kRungBasis[i] == s) return i;
  }
  throw ValidationError("invalid rung state (" + std::to_string(s.total_spin) +
                        ", " + std::to_string(s.z_component) + ")");
}

double bond_energy(const RungState& left, const RungState& right,
                   const ModelParams& p) {
  if (!is_valid(left) || !is_valid(right)) {
    throw ValidationError("bond_energy: invalid rung state");
  }
  validate(p);
  const double tz_l = left.z_component;
  const double tz_r = right.z_component;
  return 0.25 * p.j_heisenberg * (t_squared(left) + t_squared(right)) +
         p.j_ising * tz_l * tz_r - 0.5 * p.field * (tz_l + tz_r);
}

double hamiltonian_constant(const ModelParams& p, int n_rungs) {
  validate(p);
  if (n_rungs < 2) {
    throw ValidationError("a periodic ladder needs at least two rungs, got " +
                          std::to_string(n_rungs));
  }
  return -0.75 * n_rungs * p.j_heisenberg;
}

}  // namespace pyrolad

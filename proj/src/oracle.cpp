#include "pyrolad/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pyrolad {

namespace {

void check_classical_size(int n_rungs) {
  if (n_rungs < 2 || n_rungs > kMaxClassicalRungs) {
    throw ValidationError("classical oracle supports 2 <= n_rungs <= " +
                          std::to_string(kMaxClassicalRungs) + ", got " +
                          std::to_string(n_rungs));
  }
}

void check_quantum_size(int n_rungs) {
  if (n_rungs < 2 || n_rungs > kMaxQuantumRungs) {
    throw ValidationError("quantum oracle supports 2 <= n_rungs <= " +
                          std::to_string(kMaxQuantumRungs) + ", got " +
                          std::to_string(n_rungs));
  }
}

// 4x4 bond energy table in the canonical basis order.
using BondTable = std::array<std::array<double, 4>, 4>;

BondTable bond_table(const ModelParams& p) {
  BondTable t;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      t[a][b] = bond_energy(kRungBasis[a], kRungBasis[b], p);
  return t;
}

double configuration_energy(std::uint64_t index, int n, const BondTable& t) {
  double e = 0.0;
  const int first = static_cast<int>(index & 3u);
  int prev = first;
  for (int i = 1; i < n; ++i) {
    const int cur = static_cast<int>((index >> (2 * i)) & 3u);
    e += t[prev][cur];
    prev = cur;
  }
  e += t[prev][first];  // periodic closure
  return e;
}

double sz_of_bit(std::uint64_t state, int site) {
  return ((state >> site) & 1u) ? 0.5 : -0.5;
}

}  // namespace

SpinConfiguration SpinConfiguration::from_index(std::uint64_t index,
                                                int n_rungs) {
  check_classical_size(n_rungs);
  SpinConfiguration c;
  c.rung_states.reserve(n_rungs);
  for (int i = 0; i < n_rungs; ++i) {
    c.rung_states.push_back(kRungBasis[(index >> (2 * i)) & 3u]);
  }
  return c;
}

double SpinConfiguration::total_bond_energy(const ModelParams& p) const {
  const int n = static_cast<int>(rung_states.size());
  check_classical_size(n);
  double e = 0.0;
  for (int i = 0; i < n; ++i) {
    e += bond_energy(rung_states[i], rung_states[(i + 1) % n], p);
  }
  return e;
}

double classical_log_partition(const ModelParams& p, int n_rungs) {
  validate(p);
  check_classical_size(n_rungs);
  const BondTable table = bond_table(p);
  const std::uint64_t total = std::uint64_t{1} << (2 * n_rungs);

  // Two-pass log-sum-exp: find the minimal energy, then accumulate shifted
  // Boltzmann weights with compensation so that up to 4^12 terms stay
  // accurate to ~1e-15.
  double e_min = std::numeric_limits<double>::infinity();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    e_min = std::min(e_min, configuration_energy(idx, n_rungs, table));
  }
  const double beta = p.beta();
  linalg::KahanSum sum;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    const double e = configuration_energy(idx, n_rungs, table);
    sum.add(std::exp(-beta * (e - e_min)));
  }
  const double log_z_bonds = -beta * e_min + std::log(sum.value());
  return (-beta * hamiltonian_constant(p, n_rungs) + log_z_bonds) / n_rungs;
}

linalg::Matrix quantum_hamiltonian(const ModelParams& p, int n_rungs) {
  validate(p);
  check_quantum_size(n_rungs);
  const int dim = 1 << (2 * n_rungs);
  linalg::Matrix h(dim);
  const double jh = p.j_heisenberg;
  const double ji = p.j_ising;
  const double field = p.field;

  for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(dim); ++s) {
    double diag = 0.0;
    for (int i = 0; i < n_rungs; ++i) {
      const int up = 2 * i;
      const int lo = 2 * i + 1;
      const double tz = sz_of_bit(s, up) + sz_of_bit(s, lo);
      const int j = (i + 1) % n_rungs;
      const double tz_next = sz_of_bit(s, 2 * j) + sz_of_bit(s, 2 * j + 1);

      diag += jh * sz_of_bit(s, up) * sz_of_bit(s, lo);  // S^z S^z on the rung
      diag += ji * tz * tz_next;
      diag -= field * tz;

      // S^x S^x + S^y S^y = (S^+ S^- + S^- S^+)/2: flips anti-aligned rungs.
      if (((s >> up) & 1u) != ((s >> lo) & 1u)) {
        const std::uint64_t flipped =
            s ^ (std::uint64_t{1} << up) ^ (std::uint64_t{1} << lo);
        h(static_cast<int>(s), static_cast<int>(flipped)) += 0.5 * jh;
      }
    }
    h(static_cast<int>(s), static_cast<int>(s)) += diag;
  }
  return h;
}

linalg::Matrix rung_spin_squared_operator(int rung, int n_rungs) {
  check_quantum_size(n_rungs);
  if (rung < 0 || rung >= n_rungs) {
    throw ValidationError("rung index out of range");
  }
  const int dim = 1 << (2 * n_rungs);
  linalg::Matrix m(dim);
  const int up = 2 * rung;
  const int lo = 2 * rung + 1;
  for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(dim); ++s) {
    // T^2 = 3/2 + 2 S.S' = 3/2 + 2 Sz Sz' + (S+S-' + S-S+')
    m(static_cast<int>(s), static_cast<int>(s)) +=
        1.5 + 2.0 * sz_of_bit(s, up) * sz_of_bit(s, lo);
    if (((s >> up) & 1u) != ((s >> lo) & 1u)) {
      const std::uint64_t flipped =
          s ^ (std::uint64_t{1} << up) ^ (std::uint64_t{1} << lo);
      m(static_cast<int>(s), static_cast<int>(flipped)) += 1.0;
    }
  }
  return m;
}

linalg::Matrix rung_sz_operator(int rung, int n_rungs) {
  check_quantum_size(n_rungs);
  if (rung < 0 || rung >= n_rungs) {
    throw ValidationError("rung index out of range");
  }
  const int dim = 1 << (2 * n_rungs);
  linalg::Matrix m(dim);
  for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(dim); ++s) {
    m(static_cast<int>(s), static_cast<int>(s)) =
        sz_of_bit(s, 2 * rung) + sz_of_bit(s, 2 * rung + 1);
  }
  return m;
}

double quantum_log_partition(const ModelParams& p, int n_rungs) {
  const linalg::Matrix h = quantum_hamiltonian(p, n_rungs);
  if (linalg::max_asymmetry(h) > 1e-12) {
    throw NumericalError("quantum_hamiltonian is not Hermitian");
  }
  std::vector<double> energies;
  linalg::jacobi_eigh(h, energies);

  const double beta = p.beta();
  const double e_min = energies.back();  // descending order
  linalg::KahanSum sum;
  for (auto it = energies.rbegin(); it != energies.rend(); ++it) {
    sum.add(std::exp(-beta * (*it - e_min)));
  }
  return (-beta * e_min + std::log(sum.value())) / n_rungs;
}

RungDensityMatrix block_reduced_density_matrix(const ModelParams& p) {
  validate(p);
  const BondTable table = bond_table(p);
  const double beta = p.beta();

  // The two-rung block Gibbs weights are diagonal in the composite product
  // basis; shift by the minimal energy to stay representable.
  double e_min = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) e_min = std::min(e_min, table[a][b]);
  double block_diag[4][4];
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      block_diag[a][b] = std::exp(-beta * (table[a][b] - e_min));

  // Trace out rung 2.
  double rung1_diag[4];
  for (int a = 0; a < 4; ++a) {
    rung1_diag[a] = block_diag[a][0] + block_diag[a][1] + block_diag[a][2] +
                    block_diag[a][3];
  }

  // Rotate the composite basis of rung 1 to the standard two-spin basis
  // {uu, ud, du, dd}: columns of u are |1,-1>, |1,0>, |1,1>, |0,0>.
  const double rt = 1.0 / std::sqrt(2.0);
  const double u[4][4] = {
      {0.0, 0.0, 1.0, 0.0},
      {0.0, rt, 0.0, rt},
      {0.0, rt, 0.0, -rt},
      {1.0, 0.0, 0.0, 0.0},
  };
  double rho[4][4] = {};
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t)
      for (int a = 0; a < 4; ++a)
        rho[s][t] += u[s][a] * rung1_diag[a] * u[t][a];

  RungDensityMatrix r;
  r.z = rho[0][0];
  r.x = rho[1][1];
  r.y = rho[1][2];
  r.w = rho[3][3];
  r.log_scale = -beta * e_min;
  r.trace_value = r.z + 2.0 * r.x + r.w;
  return r;
}

PhaseBoundaries ground_state_phase_boundaries(double j_heisenberg,
                                              double j_ising) {
  if (!(j_heisenberg > 0.0) || !(j_ising > 0.0) ||
      !std::isfinite(j_heisenberg) || !std::isfinite(j_ising)) {
    throw ValidationError(
        "ground_state_phase_boundaries requires J_H > 0 and J_I > 0");
  }
  ModelParams p;
  p.j_heisenberg = j_heisenberg;
  p.j_ising = j_ising;
  p.field = 0.0;

  // Per-rung energy of a period-<=2 pattern a-b-a-b is linear in h:
  // e(h) = intercept - slope*h with slope = (tz_a + tz_b)/2. The ground
  // state of the periodic chain is the lower envelope of these lines; the
  // critical fields are its breakpoints on h >= 0.
  struct Line {
    double intercept;
    double slope;
  };
  std::vector<Line> lines;
  for (int a = 0; a < 4; ++a) {
    for (int b = a; b < 4; ++b) {
      const double e0 = bond_energy(kRungBasis[a], kRungBasis[b], p);
      const double slope =
          0.5 * (kRungBasis[a].z_component + kRungBasis[b].z_component);
      bool dup = false;
      for (const Line& l : lines) {
        if (l.intercept == e0 && l.slope == slope) dup = true;
      }
      if (!dup) lines.push_back({e0, slope});
    }
  }

  const auto value_at = [](const Line& l, double h) {
    return l.intercept - l.slope * h;
  };
  // Minimizer at h = 0 (ties broken toward the smaller slope so the walk
  // below visits every breakpoint).
  size_t cur = 0;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (value_at(lines[i], 0.0) < value_at(lines[cur], 0.0) ||
        (value_at(lines[i], 0.0) == value_at(lines[cur], 0.0) &&
         lines[i].slope < lines[cur].slope)) {
      cur = i;
    }
  }

  std::vector<double> breakpoints;
  std::vector<double> magnetizations = {lines[cur].slope / 2.0};
  double h_cur = 0.0;
  while (true) {
    double next_h = std::numeric_limits<double>::infinity();
    size_t next = cur;
    for (size_t i = 0; i < lines.size(); ++i) {
      if (lines[i].slope <= lines[cur].slope) continue;
      const double cross = (lines[i].intercept - lines[cur].intercept) /
                           (lines[i].slope - lines[cur].slope);
      if (cross < h_cur) continue;
      if (cross < next_h ||
          (cross == next_h && lines[i].slope > lines[next].slope)) {
        next_h = cross;
        next = i;
      }
    }
    if (next == cur) break;
    breakpoints.push_back(next_h);
    magnetizations.push_back(lines[next].slope / 2.0);
    h_cur = next_h;
    cur = next;
  }

  // Drop zero-width segments (a line that is optimal at a single field).
  std::vector<double> fields;
  std::vector<double> plateau_m = {magnetizations.front()};
  for (size_t k = 0; k < breakpoints.size(); ++k) {
    if (!fields.empty() && breakpoints[k] == fields.back()) {
      plateau_m.back() = magnetizations[k + 1];
      continue;
    }
    fields.push_back(breakpoints[k]);
    plateau_m.push_back(magnetizations[k + 1]);
  }

  if (fields.size() != 2 || plateau_m.size() != 3) {
    throw NumericalError(
        "ground_state_phase_boundaries: unexpected envelope with " +
        std::to_string(fields.size()) + " breakpoints");
  }

  PhaseBoundaries b;
  b.h_c1 = fields[0];
  b.h_c2 = fields[1];
  b.plateau_magnetizations = {plateau_m[0], plateau_m[1], plateau_m[2]};
  b.collapsed = (b.h_c2 - b.h_c1) <= 1e-6 * std::max(1.0, std::abs(b.h_c2));
  return b;
}

}  // namespace pyrolad

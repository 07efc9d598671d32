#include "pyrolad/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pyrolad {

namespace {

constexpr int kMaxIterations = 100000;
constexpr double kQuotientTol = 1e-14;
constexpr double kResidualTol = 1e-12;

double dot(const std::array<double, 4>& x, const std::array<double, 4>& y) {
  return x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
}

double norm(const std::array<double, 4>& x) { return std::sqrt(dot(x, x)); }

std::array<double, 4> matvec(const TransferMatrix& w,
                            const std::array<double, 4>& x) {
  std::array<double, 4> r = {0.0, 0.0, 0.0, 0.0};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i] += w.entries[i][j] * x[j];
  return r;
}

// v' (dW/dh) v / (beta * lambda) = sum_ab v_a v_b W_ab (tz_a + tz_b)/2 / lambda,
// the per-rung <T^z>; the shift and scale cancel in the ratio.
double rung_moment(const TransferMatrix& w, const Eigenpair& eig) {
  double acc = 0.0;
  for (int a = 0; a < 4; ++a) {
    const double tza = kRungBasis[a].z_component;
    for (int b = 0; b < 4; ++b) {
      const double tzb = kRungBasis[b].z_component;
      acc += eig.vector[a] * eig.vector[b] * w.entries[a][b] *
             0.5 * (tza + tzb);
    }
  }
  return acc / eig.value;
}

double field_step(double h) { return 1e-4 * std::max(1.0, std::abs(h)); }

}  // namespace

TransferMatrix build_transfer_matrix(const ModelParams& p) {
  validate(p);
  const double beta = p.beta();
  double energy[4][4];
  double e_min = std::numeric_limits<double>::infinity();
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      energy[a][b] = bond_energy(kRungBasis[a], kRungBasis[b], p);
      e_min = std::min(e_min, energy[a][b]);
    }
  }
  TransferMatrix w;
  w.log_scale = -beta * e_min;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const double entry = std::exp(-beta * (energy[a][b] - e_min));
      if (entry <= 0.0) {
        throw NumericalError(
            "transfer matrix entry underflowed to zero: exponent " +
            std::to_string(-beta * (energy[a][b] - e_min)) +
            " is below the representable range");
      }
      w.entries[a][b] = entry;
    }
  }
  return w;
}

Eigenpair dominant_eigenpair(const TransferMatrix& w) {
  double max_row_sum = 0.0;
  for (int i = 0; i < 4; ++i) {
    double row = 0.0;
    for (int j = 0; j < 4; ++j) {
      const double e = w.entries[i][j];
      if (e < 0.0) {
        throw ValidationError("dominant_eigenpair: negative entry");
      }
      if (std::abs(e - w.entries[j][i]) >
          1e-14 * std::max(1.0, std::abs(e))) {
        throw ValidationError("dominant_eigenpair: matrix is not symmetric");
      }
      row += e;
    }
    max_row_sum = std::max(max_row_sum, row);
  }
  if (max_row_sum == 0.0) {
    throw NumericalError("dominant_eigenpair: zero matrix");
  }

  // The shift W + cI turns a near-degenerate +/- eigenvalue pair (which
  // appears between magnetization plateaus at low temperature) into a
  // well-separated dominant root without changing the eigenvectors.
  const double shift = max_row_sum;

  Eigenpair eig;
  std::array<double, 4> v = {0.5, 0.5, 0.5, 0.5};
  double lambda_prev = std::numeric_limits<double>::infinity();
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < kMaxIterations; ++it) {
    const std::array<double, 4> wv = matvec(w, v);
    const double lambda = dot(v, wv);
    std::array<double, 4> rvec;
    for (int i = 0; i < 4; ++i) rvec[i] = wv[i] - lambda * v[i];
    residual = norm(rvec);
    const double lambda_scale =
        std::max(std::abs(lambda), std::numeric_limits<double>::min());
    if (residual <= kResidualTol * lambda_scale &&
        std::abs(lambda - lambda_prev) <=
            kQuotientTol * std::max(1.0, std::abs(lambda))) {
      if (v[0] + v[1] + v[2] + v[3] < 0.0) {
        for (double& c : v) c = -c;
      }
      eig.value = lambda;
      eig.vector = v;
      return eig;
    }
    lambda_prev = lambda;
    std::array<double, 4> u;
    for (int i = 0; i < 4; ++i) u[i] = wv[i] + shift * v[i];
    const double un = norm(u);
    if (un == 0.0) {
      throw NumericalError("dominant_eigenpair: iterate vanished");
    }
    for (int i = 0; i < 4; ++i) v[i] = u[i] / un;
  }
  throw NumericalError(
      "dominant_eigenpair: no convergence after " +
      std::to_string(kMaxIterations) +
      " iterations, final residual " + std::to_string(residual));
}

double log_partition_per_rung(const ModelParams& p) {
  const TransferMatrix w = build_transfer_matrix(p);
  const Eigenpair eig = dominant_eigenpair(w);
  return 0.75 * p.beta() * p.j_heisenberg + std::log(eig.value) + w.log_scale;
}

double magnetization_tm(const ModelParams& p) {
  const TransferMatrix w = build_transfer_matrix(p);
  const Eigenpair eig = dominant_eigenpair(w);
  return 0.5 * rung_moment(w, eig);  // per site: two spins per rung
}

double dlog_lambda_dh(const ModelParams& p) {
  const TransferMatrix w = build_transfer_matrix(p);
  const Eigenpair eig = dominant_eigenpair(w);
  return p.beta() * rung_moment(w, eig);
}

double susceptibility_tm(const ModelParams& p) {
  validate(p);
  const double dh = field_step(p.field);
  if (p.field + dh == p.field || p.field - dh == p.field) {
    throw NumericalError("susceptibility_tm: field step underflow at h = " +
                         std::to_string(p.field));
  }
  ModelParams up = p;
  ModelParams down = p;
  up.field += dh;
  down.field -= dh;
  return (magnetization_tm(up) - magnetization_tm(down)) / (2.0 * dh);
}

}  // namespace pyrolad

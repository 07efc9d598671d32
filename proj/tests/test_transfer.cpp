#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pyrolad/linalg.hpp"
#include "pyrolad/model.hpp"
#include "pyrolad/oracle.hpp"
#include "pyrolad/transfer.hpp"

using namespace pyrolad;

namespace {

ModelParams params(double jh, double ji, double h, double t) {
  return ModelParams{jh, ji, h, t};
}

double physical_entry(const TransferMatrix& w, int a, int b) {
  return w.entries[a][b] * std::exp(w.log_scale);
}

// det(W - x I) for the 4x4 matrix, by cofactor expansion. Test-side oracle,
// independent of the power iteration.
double char_poly(const TransferMatrix& w, double x) {
  double m[4][4];
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = w.entries[i][j] - (i == j ? x : 0.0);
  const auto det3 = [&](int r0, int r1, int r2, int c0, int c1, int c2) {
    return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
           m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
           m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
  };
  return m[0][0] * det3(1, 2, 3, 1, 2, 3) - m[0][1] * det3(1, 2, 3, 0, 2, 3) +
         m[0][2] * det3(1, 2, 3, 0, 1, 3) - m[0][3] * det3(1, 2, 3, 0, 1, 2);
}

std::array<double, 2> top_two_magnitudes(const TransferMatrix& w) {
  linalg::Matrix dense(4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) dense(i, j) = w.entries[i][j];
  std::vector<double> vals;
  linalg::jacobi_eigh(dense, vals);
  std::vector<double> mags = {std::abs(vals[0]), std::abs(vals[1]),
                              std::abs(vals[2]), std::abs(vals[3])};
  std::sort(mags.begin(), mags.end(), std::greater<double>());
  return {mags[0], mags[1]};
}

}  // namespace

TEST_CASE("transfer matrix entries at infinite temperature are all one") {
  const TransferMatrix w = build_transfer_matrix(params(1.5, 1.0, 0.7, 1e12));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      CHECK(physical_entry(w, a, b) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("transfer matrix pins the triplet-triplet corner entry") {
  // entry [(1,-1)][(1,-1)] = exp(-beta (J_H + J_I + h)) = e^{-2.5} at beta=1
  const TransferMatrix w = build_transfer_matrix(params(1.5, 1.0, 0.0, 1.0));
  CHECK(physical_entry(w, 0, 0) ==
        doctest::Approx(0.082084998623898800).epsilon(1e-13));
  CHECK(physical_entry(w, 3, 3) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("transfer matrix is exactly symmetric") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> tdist(0.05, 2.0);
  for (int draw = 0; draw < 30; ++draw) {
    const TransferMatrix w =
        build_transfer_matrix(params(u(rng), u(rng), u(rng), tdist(rng)));
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) CHECK(w.entries[a][b] == w.entries[b][a]);
  }
}

TEST_CASE("entry underflow is reported, not silently flushed") {
  CHECK_THROWS_AS(build_transfer_matrix(params(1.5, 1.0, 0.7, 1e-300)),
                  NumericalError);
}

TEST_CASE("dominant eigenpair of the all-ones matrix") {
  TransferMatrix w;
  w.log_scale = 0.0;
  for (auto& row : w.entries) row = {1.0, 1.0, 1.0, 1.0};
  const Eigenpair eig = dominant_eigenpair(w);
  CHECK(eig.value == doctest::Approx(4.0).epsilon(1e-13));
  for (double c : eig.vector) CHECK(c == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("dominant eigenpair of a diagonal test matrix") {
  TransferMatrix w;
  w.entries = {{{2, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
  const Eigenpair eig = dominant_eigenpair(w);
  CHECK(eig.value == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(std::abs(eig.vector[0]) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(eig.vector[1]) < 1e-9);
}

TEST_CASE("eigenpair satisfies the residual contract and Perron positivity") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  std::uniform_real_distribution<double> tdist(0.05, 2.0);
  for (int draw = 0; draw < 50; ++draw) {
    const TransferMatrix w =
        build_transfer_matrix(params(u(rng), u(rng), u(rng), tdist(rng)));
    const Eigenpair eig = dominant_eigenpair(w);
    double r2 = 0.0;
    for (int i = 0; i < 4; ++i) {
      double wi = 0.0;
      for (int j = 0; j < 4; ++j) wi += w.entries[i][j] * eig.vector[j];
      r2 += (wi - eig.value * eig.vector[i]) * (wi - eig.value * eig.vector[i]);
    }
    CHECK(std::sqrt(r2) <= 1e-12 * eig.value);
    for (double c : eig.vector) CHECK(c > 0.0);
  }
}

TEST_CASE("dominant eigenvalue agrees with characteristic-polynomial bisection") {
  const TransferMatrix w = build_transfer_matrix(params(1.5, 1.0, 0.0, 0.5));
  // Bracket the largest root: p(x) > 0 above it, and the first sign change
  // walking down from the max row sum lands in (lambda_2, lambda_1).
  double hi = 0.0;
  for (int i = 0; i < 4; ++i) {
    double row = 0.0;
    for (int j = 0; j < 4; ++j) row += w.entries[i][j];
    hi = std::max(hi, row);
  }
  hi += 1.0;
  REQUIRE(char_poly(w, hi) > 0.0);
  double lo = hi;
  const double step = hi / 1024.0;
  while (lo > 0.0 && char_poly(w, lo) > 0.0) lo -= step;
  REQUIRE(char_poly(w, lo) < 0.0);
  for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
    const double mid = 0.5 * (lo + hi);
    (char_poly(w, mid) < 0.0 ? lo : hi) = mid;
  }
  const Eigenpair eig = dominant_eigenpair(w);
  CHECK(eig.value == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-10));
}

TEST_CASE("log partition per rung in closed-form limits") {
  // infinite temperature: four equally likely rung states
  CHECK(log_partition_per_rung(params(1.5, 1.0, 0.7, 1e12)) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-9));
  // all couplings zero: log 4 at any temperature
  for (double t : {0.3, 1.0, 7.0}) {
    CHECK(log_partition_per_rung(params(0, 0, 0, t)) ==
          doctest::Approx(std::log(4.0)).epsilon(1e-12));
  }
}

TEST_CASE("log partition matches the finite-size enumeration as N grows") {
  const ModelParams p = params(1.5, 1.0, 1.0, 0.5);
  const double f_inf = log_partition_per_rung(p);
  const TransferMatrix w = build_transfer_matrix(p);
  const auto [l1, l2] = top_two_magnitudes(w);
  const double ratio = l2 / l1;

  double previous = std::numeric_limits<double>::infinity();
  for (int n : {2, 4, 6, 8}) {
    const double f_n = classical_log_partition(p, n);
    const double gap = f_n - f_inf;
    CHECK(gap >= -1e-12);                       // approaches from above
    CHECK(f_n <= previous + 1e-12);             // monotone in even N
    CHECK(gap <= 3.0 * std::pow(ratio, n) + 1e-12);
    previous = f_n;
  }
  // At the classical size cap the finite-size gap is below 1e-6.
  CHECK(std::abs(classical_log_partition(p, 12) - f_inf) < 1e-6);
}

TEST_CASE("magnetization vanishes at zero field") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  std::uniform_real_distribution<double> tdist(0.1, 3.0);
  for (int draw = 0; draw < 20; ++draw) {
    CHECK(std::abs(magnetization_tm(params(u(rng), u(rng), 0.0, tdist(rng)))) <
          1e-12);
  }
}

TEST_CASE("magnetization saturates at strong field and sits on the mid plateau") {
  CHECK(magnetization_tm(params(1.5, 1.0, 5.0, 0.05)) ==
        doctest::Approx(0.5).epsilon(1e-6));
  CHECK(magnetization_tm(params(1.5, 1.0, 2.5, 0.05)) ==
        doctest::Approx(0.25).epsilon(1e-3));
}

TEST_CASE("magnetization is odd and susceptibility even in the field") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> u(-2.5, 2.5);
  std::uniform_real_distribution<double> hdist(0.0, 4.0);
  std::uniform_real_distribution<double> tdist(0.1, 2.0);
  for (int draw = 0; draw < 100; ++draw) {
    ModelParams p = params(u(rng), u(rng), hdist(rng), tdist(rng));
    ModelParams q = p;
    q.field = -p.field;
    CHECK(magnetization_tm(p) == doctest::Approx(-magnetization_tm(q)).epsilon(1e-10));
    CHECK(susceptibility_tm(p) == doctest::Approx(susceptibility_tm(q)).epsilon(1e-8));
  }
}

TEST_CASE("magnetization is bounded by saturation") {
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> hdist(-8.0, 8.0);
  std::uniform_real_distribution<double> tdist(0.05, 5.0);
  for (int draw = 0; draw < 200; ++draw) {
    const double m =
        magnetization_tm(params(u(rng), u(rng), hdist(rng), tdist(rng)));
    CHECK(std::abs(m) <= 0.5 + 1e-12);
  }
}

TEST_CASE("Hellmann-Feynman derivative matches a central difference") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> cdist(0.5, 2.5);
  std::uniform_real_distribution<double> hdist(-5.0, 5.0);
  std::uniform_real_distribution<double> tdist(0.1, 2.0);
  for (int draw = 0; draw < 100; ++draw) {
    const ModelParams p =
        params(cdist(rng), cdist(rng), hdist(rng), tdist(rng));
    const double hf = dlog_lambda_dh(p);
    const double dh = 1e-4 * std::max(1.0, std::abs(p.field));
    ModelParams up = p, down = p;
    up.field += dh;
    down.field -= dh;
    // the 3 beta J_H / 4 offset cancels in the difference
    const double fd =
        (log_partition_per_rung(up) - log_partition_per_rung(down)) /
        (2.0 * dh);
    CHECK(std::abs(hf - fd) <=
          1e-6 * std::max({1.0, std::abs(hf), std::abs(fd)}));
  }
}

TEST_CASE("susceptibility in the plateaus and between them") {
  // deep in the zero plateau the physical value is (beta/2) e^{-2 beta (J_H - h)}
  // asymptotically: ~2.06e-8 at these parameters
  CHECK(susceptibility_tm(params(1.5, 1.0, 0.5, 0.05)) < 5e-8);
  CHECK(susceptibility_tm(params(1.5, 1.0, 0.5, 0.05)) >= 0.0);

  // local maximum between the plateaus: at T = 0.1 the peak sits at
  // h_c1 - T log 2 (confirmed by a scan), not at h_c1 itself
  const double peak_h = 1.5 - 0.1 * std::log(2.0);
  const double at_peak = susceptibility_tm(params(1.5, 1.0, peak_h, 0.1));
  for (double off : {-0.15, 0.15}) {
    CHECK(at_peak > susceptibility_tm(params(1.5, 1.0, peak_h + off, 0.1)));
  }
  // and the peak height is beta/(12 sqrt(3)) to leading order
  CHECK(at_peak == doctest::Approx(10.0 / (12.0 * std::sqrt(3.0))).epsilon(2e-3));
}

#include "pyrolad/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pyrolad/linalg.hpp"

namespace pyrolad {

namespace {

using linalg::Matrix;

Matrix normalized_dense(const RungDensityMatrix& r) {
  if (!(r.trace_value > 0.0)) {
    throw ValidationError("concurrence: density matrix trace must be > 0");
  }
  Matrix m(4);
  m(0, 0) = r.z / r.trace_value;
  m(1, 1) = m(2, 2) = r.x / r.trace_value;
  m(1, 2) = m(2, 1) = r.y / r.trace_value;
  m(3, 3) = r.w / r.trace_value;
  return m;
}

// sigma_y tensor sigma_y; real, so conjugating a real rho needs no complex
// arithmetic.
Matrix spin_flip_operator() {
  Matrix f(4);
  f(0, 3) = -1.0;
  f(1, 2) = 1.0;
  f(2, 1) = 1.0;
  f(3, 0) = -1.0;
  return f;
}

// rho = G G^T for a PSD matrix, by outer-product Cholesky with diagonal
// pivoting; rank-deficient directions give zero columns.
Matrix psd_factor(Matrix a) {
  const int n = a.n;
  Matrix g(n);
  std::array<int, 4> perm = {0, 1, 2, 3};
  double tol = 0.0;
  for (int i = 0; i < n; ++i) tol = std::max(tol, a(i, i));
  tol *= 1e-15 * n;
  for (int k = 0; k < n; ++k) {
    int best = k;
    for (int j = k + 1; j < n; ++j) {
      if (a(perm[j], perm[j]) > a(perm[best], perm[best])) best = j;
    }
    std::swap(perm[k], perm[best]);
    const int pk = perm[k];
    const double d = a(pk, pk);
    if (d <= tol) break;
    const double root = std::sqrt(d);
    g(pk, k) = root;
    for (int i = k + 1; i < n; ++i) g(perm[i], k) = a(perm[i], pk) / root;
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a(perm[i], perm[j]) -= g(perm[i], k) * g(perm[j], k);
      }
    }
  }
  return g;
}

}  // namespace

ConcurrenceResult concurrence_general(const RungDensityMatrix& rho) {
  const Matrix r = normalized_dense(rho);

  std::vector<double> rho_eigs;
  linalg::jacobi_eigh(r, rho_eigs);
  if (rho_eigs.back() < -1e-12) {
    throw ValidationError(
        "concurrence_general: non-physical state, eigenvalue " +
        std::to_string(rho_eigs.back()));
  }

  // With rho = G G^T real, R = rho F rho F is similar to M^2 for the
  // symmetric M = G^T F G, so the sqrt-eigenvalues of R are |eig(M)|.
  // This keeps full absolute accuracy even when R is nearly singular,
  // where taking square roots of computed eigenvalues of R would not.
  const Matrix g = psd_factor(r);
  const Matrix m =
      linalg::multiply(transpose(g), linalg::multiply(spin_flip_operator(), g));

  std::vector<double> eigs;
  linalg::jacobi_eigh(m, eigs);
  ConcurrenceResult result;
  for (int i = 0; i < 4; ++i) {
    result.sqrt_eigenvalues[i] = std::abs(eigs[i]);
  }
  std::sort(result.sqrt_eigenvalues.begin(), result.sqrt_eigenvalues.end(),
            std::greater<double>());
  const auto& q = result.sqrt_eigenvalues;
  result.value = std::clamp(q[0] - q[1] - q[2] - q[3], 0.0, 1.0);
  return result;
}

double concurrence_xstate(const RungDensityMatrix& rho) {
  if (!(rho.trace_value > 0.0)) {
    throw ValidationError("concurrence: density matrix trace must be > 0");
  }
  const double geom = std::sqrt(rho.z) * std::sqrt(rho.w);
  const double c = 2.0 * std::max(0.0, std::abs(rho.y) - geom) /
                   rho.trace_value;
  return std::clamp(c, 0.0, 1.0);
}

double concurrence_at(const ModelParams& p) {
  return concurrence_xstate(rung_density_matrix(p));
}

}  // namespace pyrolad

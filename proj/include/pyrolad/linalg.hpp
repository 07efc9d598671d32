#pragma once

#include <vector>

// Small dense linear algebra used by the oracles and the concurrence path:
// row-major symmetric matrices up to dimension 1024 and a cyclic Jacobi
// eigensolver. Deliberately self-contained.

namespace pyrolad::linalg {

struct Matrix {
  int n = 0;
  std::vector<double> a;

  Matrix() = default;
  explicit Matrix(int dim) : n(dim), a(static_cast<size_t>(dim) * dim, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  double operator()(int i, int j) const {
    return a[static_cast<size_t>(i) * n + j];
  }
};

Matrix identity(int n);
Matrix multiply(const Matrix& x, const Matrix& y);
Matrix transpose(const Matrix& x);
Matrix commutator(const Matrix& x, const Matrix& y);  // xy - yx

// Max absolute row sum.
double inf_norm(const Matrix& m);
// Largest |m(i,j) - m(j,i)|.
double max_asymmetry(const Matrix& m);

// Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.
// Eigenvalues are returned in descending order; if `vectors` is non-null it
// receives the matching eigenvectors as columns. Throws NumericalError if
// the sweep cap is hit (does not happen for symmetric input).
void jacobi_eigh(Matrix m, std::vector<double>& values,
                 Matrix* vectors = nullptr);

// Compensated (Kahan) accumulation, used where sums of ~1e7 Boltzmann
// weights must stay accurate to ~1e-15 relative.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

}  // namespace pyrolad::linalg

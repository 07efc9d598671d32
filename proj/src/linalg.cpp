#include "pyrolad/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pyrolad/model.hpp"

namespace pyrolad::linalg {

Matrix identity(int n) {
  Matrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix multiply(const Matrix& x, const Matrix& y) {
  if (x.n != y.n) throw ValidationError("multiply: dimension mismatch");
  const int n = x.n;
  Matrix r(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double xik = x(i, k);
      if (xik == 0.0) continue;
      for (int j = 0; j < n; ++j) r(i, j) += xik * y(k, j);
    }
  }
  return r;
}

Matrix transpose(const Matrix& x) {
  Matrix r(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) r(j, i) = x(i, j);
  return r;
}

Matrix commutator(const Matrix& x, const Matrix& y) {
  Matrix xy = multiply(x, y);
  const Matrix yx = multiply(y, x);
  for (size_t i = 0; i < xy.a.size(); ++i) xy.a[i] -= yx.a[i];
  return xy;
}

double inf_norm(const Matrix& m) {
  double best = 0.0;
  for (int i = 0; i < m.n; ++i) {
    double row = 0.0;
    for (int j = 0; j < m.n; ++j) row += std::abs(m(i, j));
    best = std::max(best, row);
  }
  return best;
}

double max_asymmetry(const Matrix& m) {
  double best = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j)
      best = std::max(best, std::abs(m(i, j) - m(j, i)));
  return best;
}

namespace {

double off_diagonal_norm(const Matrix& m) {
  double s = 0.0;
  for (int i = 0; i < m.n; ++i)
    for (int j = i + 1; j < m.n; ++j) s += 2.0 * m(i, j) * m(i, j);
  return std::sqrt(s);
}

double frobenius_norm(const Matrix& m) {
  double s = 0.0;
  for (double v : m.a) s += v * v;
  return std::sqrt(s);
}

}  // namespace

void jacobi_eigh(Matrix m, std::vector<double>& values, Matrix* vectors) {
  const int n = m.n;
  if (n == 0) throw ValidationError("jacobi_eigh: empty matrix");
  if (max_asymmetry(m) > 1e-12 * std::max(1.0, inf_norm(m))) {
    throw ValidationError("jacobi_eigh: matrix is not symmetric");
  }
  Matrix v = identity(n);

  const double scale = std::max(frobenius_norm(m), 1e-300);
  const int max_sweeps = 64;
  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (off_diagonal_norm(m) <= 1e-14 * scale) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = m(p, q);
        if (apq == 0.0) continue;
        if (std::abs(apq) <= 1e-17 * scale) {
          m(p, q) = m(q, p) = 0.0;
          continue;
        }
        const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;  // avoid theta^2 overflow
        } else {
          t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          if (theta < 0.0) t = -t;
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        const double app = m(p, p);
        const double aqq = m(q, q);
        m(p, p) = app - t * apq;
        m(q, q) = aqq + t * apq;
        m(p, q) = m(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = m(r, p);
          const double arq = m(r, q);
          m(r, p) = m(p, r) = arp - s * (arq + tau * arp);
          m(r, q) = m(q, r) = arq + s * (arp - tau * arq);
        }
        for (int r = 0; r < n; ++r) {
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }
  if (sweep == max_sweeps) {
    throw NumericalError("jacobi_eigh: no convergence after " +
                         std::to_string(max_sweeps) + " sweeps");
  }

  values.resize(n);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return m(i, i) > m(j, j); });
  for (int i = 0; i < n; ++i) values[i] = m(order[i], order[i]);
  if (vectors) {
    *vectors = Matrix(n);
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) (*vectors)(i, j) = v(i, order[j]);
  }
}


}  // namespace pyrolad::linalg

#include "pyrolad/rungstate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pyrolad {

namespace {

// log(1 + e^a), stable for any a.
double log1p_exp(double a) {
  if (a > 0.0) return a + std::log1p(std::exp(-a));
  return std::log1p(std::exp(a));
}

// log|e^a - 1| for a != 0.
double log_expm1_abs(double a) {
  if (a > 36.0) return a;  // e^-a below double epsilon
  return std::log(std::abs(std::expm1(a)));
}

double lse4(double a, double b, double c, double d) {
  const double m = std::max(std::max(a, b), std::max(c, d));
  return m + std::log(std::exp(a - m) + std::exp(b - m) + std::exp(c - m) +
                      std::exp(d - m));
}

}  // namespace

RungDensityMatrix rung_density_matrix(const ModelParams& p) {
  validate(p);
  const double b = p.beta();
  const double jh = p.j_heisenberg;
  const double ji = p.j_ising;
  const double h = p.field;

  // x and y share the prefactor e^{-b(2jh+h)/2}/2 and the four-term sum
  // (e^{b(jh+h)/2} + e^{bh} + e^{bh/2} + 1); they differ in the middle factor
  // (e^{b jh/2} +- 1). z and w are four-term sums of their own. All four are
  // assembled in log space and exponentiated against a common scale.
  const double tail = lse4(0.5 * b * (jh + h), b * h, 0.5 * b * h, 0.0);
  const double pre = -0.5 * b * (2.0 * jh + h) - std::log(2.0);
  const double log_x = pre + log1p_exp(0.5 * b * jh) + tail;
  const double log_z =
      -b * (jh + ji) +
      lse4(0.5 * b * (jh + 2.0 * ji + h), b * (ji + 0.5 * h), 2.0 * b * ji,
           b * h);
  const double log_w =
      -b * (jh + ji + h) +
      lse4(0.5 * b * (jh + 2.0 * ji + h), b * (2.0 * ji + h),
           b * (ji + 0.5 * h), 0.0);

  double scale = 0.0;
  const double top = std::max(std::max(log_x, log_z), log_w);
  if (top > 600.0 || top < -600.0) scale = top;

  RungDensityMatrix r;
  r.x = std::exp(log_x - scale);
  r.z = std::exp(log_z - scale);
  r.w = std::exp(log_w - scale);
  if (jh == 0.0) {
    r.y = 0.0;
  } else {
    const double log_y_mag = pre + log_expm1_abs(0.5 * b * jh) + tail;
    r.y = (jh > 0.0 ? -1.0 : 1.0) * std::exp(log_y_mag - scale);
  }
  r.log_scale = scale;
  r.trace_value = r.z + 2.0 * r.x + r.w;
  if (!(r.trace_value > 0.0) || !std::isfinite(r.trace_value)) {
    throw NumericalError("rung_density_matrix: trace " +
                         std::to_string(r.trace_value) +
                         " is not a positive finite number");
  }
  return r;
}

double magnetization_rdm(const ModelParams& p) {
  const RungDensityMatrix r = rung_density_matrix(p);
  return (r.z - r.w) / (2.0 * r.trace_value);
}

double susceptibility_rdm(const ModelParams& p) {
  validate(p);
  const double dh = 1e-4 * std::max(1.0, std::abs(p.field));
  if (p.field + dh == p.field || p.field - dh == p.field) {
    throw NumericalError("susceptibility_rdm: field step underflow at h = " +
                         std::to_string(p.field));
  }
  ModelParams up = p;
  ModelParams down = p;
  up.field += dh;
  down.field -= dh;
  return (magnetization_rdm(up) - magnetization_rdm(down)) / (2.0 * dh);
}

}  // namespace pyrolad

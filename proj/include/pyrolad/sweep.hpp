#pragma once

#include <utility>
#include <vector>

#include "pyrolad/model.hpp"

// Grid evaluation over (T, h) and feature detection on the resulting curves:
// plateau intervals in m(h) and peaks in chi(h).

namespace pyrolad {

struct GridSpec {
  double t_min = 0.0, t_max = 0.0;
  int t_count = 0;
  double h_min = 0.0, h_max = 0.0;
  int h_count = 0;
  double j_heisenberg = 0.0;
  double j_ising = 0.0;
};

// Counts >= 2, ranges ordered, t_min > 0, all values finite.
void validate(const GridSpec& spec);

struct ObservablePoint {
  double temperature = 0.0;
  double field = 0.0;
  double log_z_per_rung = 0.0;
  double m_tm = 0.0;   // transfer-matrix route
  double m_rdm = 0.0;  // reduced-density-matrix route
  double chi = 0.0;    // d m_tm / d h
  double concurrence = 0.0;
};

// All observables at one parameter point, both magnetization routes included.
ObservablePoint evaluate_point(const ModelParams& p);

// Row-major (T outer, h inner) evaluation; workers <= 0 selects the hardware
// concurrency. Each point is computed independently and written to its own
// slot, so the result is bitwise identical for any worker count. A failing
// point aborts the sweep with its (T, h) in the message.
std::vector<ObservablePoint> sweep_grid(const GridSpec& spec, int workers = 0);

struct Plateau {
  double h_start = 0.0;
  double h_end = 0.0;
  double value = 0.0;  // snapped to the nearest of {0, 1/4, 1/2} if close
};

struct PlateauReport {
  std::vector<Plateau> plateaus;  // disjoint, ordered in h
};

// Maximal runs of the curve where |dm/dh| < flatness_tol and the run spans
// at least min_width. Curve must be sorted in h with >= 8 points.
PlateauReport detect_plateaus(
    const std::vector<std::pair<double, double>>& curve, double flatness_tol,
    double min_width, double snap_tol = 1e-3);

// Fields where the curve crosses the midpoint between the values of two
// consecutive plateaus (linear interpolation); one entry per adjacent pair.
std::vector<double> plateau_transitions(
    const std::vector<std::pair<double, double>>& curve,
    const PlateauReport& report);

struct Peak {
  double field = 0.0;
  double height = 0.0;
};

// Strict local maxima exceeding prominence_factor times the median of the
// curve, refined by 3-point parabolic interpolation. Curve must be sorted
// with >= 5 points.
std::vector<Peak> detect_peaks(
    const std::vector<std::pair<double, double>>& curve,
    double prominence_factor = 5.0);

}  // namespace pyrolad

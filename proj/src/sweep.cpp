#include "pyrolad/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "pyrolad/entanglement.hpp"
#include "pyrolad/rungstate.hpp"
#include "pyrolad/transfer.hpp"

namespace pyrolad {

void validate(const GridSpec& spec) {
  if (!std::isfinite(spec.t_min) || !std::isfinite(spec.t_max) ||
      !std::isfinite(spec.h_min) || !std::isfinite(spec.h_max) ||
      !std::isfinite(spec.j_heisenberg) || !std::isfinite(spec.j_ising)) {
    throw ValidationError("grid spec must be finite");
  }
  if (spec.t_count < 2 || spec.h_count < 2) {
    throw ValidationError("grid counts must be >= 2");
  }
  if (!(spec.t_min > 0.0)) {
    throw ValidationError("grid t_min must be > 0");
  }
  if (spec.t_min > spec.t_max || spec.h_min > spec.h_max) {
    throw ValidationError("grid ranges must be ordered (min <= max)");
  }
}

ObservablePoint evaluate_point(const ModelParams& p) {
  validate(p);
  ObservablePoint pt;
  pt.temperature = p.temperature;
  pt.field = p.field;
  pt.log_z_per_rung = log_partition_per_rung(p);
  pt.m_tm = magnetization_tm(p);
  pt.m_rdm = magnetization_rdm(p);
  pt.chi = susceptibility_tm(p);
  pt.concurrence = concurrence_at(p);
  return pt;
}

namespace {

double grid_value(double lo, double hi, int count, int i) {
  return lo + (hi - lo) * static_cast<double>(i) /
                  static_cast<double>(count - 1);
}

}  // namespace

std::vector<ObservablePoint> sweep_grid(const GridSpec& spec, int workers) {
  validate(spec);
  const size_t total =
      static_cast<size_t>(spec.t_count) * static_cast<size_t>(spec.h_count);
  std::vector<ObservablePoint> points(total);

  int n_workers = workers > 0
                      ? workers
                      : static_cast<int>(std::thread::hardware_concurrency());
  n_workers = std::max(1, std::min<int>(n_workers, static_cast<int>(total)));

  std::atomic<size_t> cursor{0};
  std::mutex failure_mutex;
  std::string failure;

  const auto run = [&]() {
    for (size_t k = cursor.fetch_add(1); k < total; k = cursor.fetch_add(1)) {
      const int ti = static_cast<int>(k) / spec.h_count;
      const int hi = static_cast<int>(k) % spec.h_count;
      ModelParams p;
      p.j_heisenberg = spec.j_heisenberg;
      p.j_ising = spec.j_ising;
      p.temperature = grid_value(spec.t_min, spec.t_max, spec.t_count, ti);
      p.field = grid_value(spec.h_min, spec.h_max, spec.h_count, hi);
      try {
        points[k] = evaluate_point(p);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (failure.empty()) {
          failure = "sweep failed at (T = " + std::to_string(p.temperature) +
                    ", h = " + std::to_string(p.field) + "): " + e.what();
        }
        return;
      }
    }
  };

  if (n_workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int i = 0; i < n_workers; ++i) pool.emplace_back(run);
    for (auto& t : pool) t.join();
  }
  if (!failure.empty()) throw NumericalError(failure);
  return points;
}

namespace {

void check_curve(const std::vector<std::pair<double, double>>& curve,
                 size_t min_points) {
  if (curve.size() < min_points) {
    throw ValidationError("curve needs at least " +
                          std::to_string(min_points) + " points, got " +
                          std::to_string(curve.size()));
  }
  for (size_t i = 0; i < curve.size(); ++i) {
    if (!std::isfinite(curve[i].first) || !std::isfinite(curve[i].second)) {
      throw ValidationError("curve contains non-finite values");
    }
    if (i > 0 && curve[i].first <= curve[i - 1].first) {
      throw ValidationError("curve must be strictly increasing in h");
    }
  }
}

}  // namespace

PlateauReport detect_plateaus(
    const std::vector<std::pair<double, double>>& curve, double flatness_tol,
    double min_width, double snap_tol) {
  check_curve(curve, 8);
  if (!(flatness_tol > 0.0)) {
    throw ValidationError("flatness_tol must be > 0");
  }
  if (min_width < 0.0) {
    throw ValidationError("min_width must be >= 0");
  }

  PlateauReport report;
  const size_t n = curve.size();
  size_t i = 0;
  while (i + 1 < n) {
    const auto slope = [&](size_t k) {
      return std::abs(curve[k + 1].second - curve[k].second) /
             (curve[k + 1].first - curve[k].first);
    };
    if (slope(i) >= flatness_tol) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j + 1 < n && slope(j) < flatness_tol) ++j;
    // run of points [i, j]
    const double width = curve[j].first - curve[i].first;
    if (width >= min_width) {
      double mean = 0.0;
      for (size_t k = i; k <= j; ++k) mean += curve[k].second;
      mean /= static_cast<double>(j - i + 1);
      for (double target : {0.0, 0.25, 0.5}) {
        if (std::abs(mean - target) <= snap_tol) {
          mean = target;
          break;
        }
      }
      report.plateaus.push_back({curve[i].first, curve[j].first, mean});
    }
    i = j + 1;
  }
  return report;
}

std::vector<double> plateau_transitions(
    const std::vector<std::pair<double, double>>& curve,
    const PlateauReport& report) {
  check_curve(curve, 2);
  std::vector<double> fields;
  for (size_t k = 0; k + 1 < report.plateaus.size(); ++k) {
    const Plateau& a = report.plateaus[k];
    const Plateau& b = report.plateaus[k + 1];
    const double target = 0.5 * (a.value + b.value);
    for (size_t i = 0; i + 1 < curve.size(); ++i) {
      if (curve[i].first < a.h_end || curve[i + 1].first > b.h_start) continue;
      const double lo = curve[i].second - target;
      const double hi = curve[i + 1].second - target;
      if (lo == 0.0) {
        fields.push_back(curve[i].first);
        break;
      }
      if (lo * hi <= 0.0) {
        const double frac = lo / (lo - hi);
        fields.push_back(curve[i].first +
                         frac * (curve[i + 1].first - curve[i].first));
        break;
      }
    }
  }
  return fields;
}

std::vector<Peak> detect_peaks(
    const std::vector<std::pair<double, double>>& curve,
    double prominence_factor) {
  check_curve(curve, 5);
  if (!(prominence_factor > 0.0)) {
    throw ValidationError("prominence_factor must be > 0");
  }

  std::vector<double> values(curve.size());
  for (size_t i = 0; i < curve.size(); ++i) values[i] = curve[i].second;
  std::nth_element(values.begin(), values.begin() + values.size() / 2,
                   values.end());
  const double median = values[values.size() / 2];
  const double threshold = prominence_factor * median;

  std::vector<Peak> peaks;
  for (size_t i = 1; i + 1 < curve.size(); ++i) {
    const double y0 = curve[i - 1].second;
    const double y1 = curve[i].second;
    const double y2 = curve[i + 1].second;
    if (!(y1 > y0 && y1 > y2 && y1 > threshold)) continue;

    // Parabola through the three points; strict maximum guarantees a > 0
    // curvature downward.
    const double x0 = curve[i - 1].first;
    const double x1 = curve[i].first;
    const double x2 = curve[i + 1].first;
    const double d1 = (y1 - y0) / (x1 - x0);
    const double d2 = (y2 - y1) / (x2 - x1);
    const double a = (d2 - d1) / (x2 - x0);
    Peak peak;
    if (a < 0.0) {
      peak.field = 0.5 * (x0 + x1) - d1 / (2.0 * a);
      peak.height = y0 + d1 * (peak.field - x0) +
                    a * (peak.field - x0) * (peak.field - x1);
    } else {
      peak.field = x1;
      peak.height = y1;
    }
    peaks.push_back(peak);
  }
  return peaks;
}

}  // namespace pyrolad

// Command-line front door: single-point evaluation, (T, h) grid sweeps to
// CSV or JSON-lines, oracle verification, and T = 0 phase boundaries.
//
// Exit codes: 0 success, 1 numerical or I/O failure, 2 invalid input.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pyrolad/entanglement.hpp"
#include "pyrolad/io.hpp"
#include "pyrolad/linalg.hpp"
#include "pyrolad/model.hpp"
#include "pyrolad/oracle.hpp"
#include "pyrolad/rungstate.hpp"
#include "pyrolad/sweep.hpp"
#include "pyrolad/transfer.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitValidation = 2;

struct PointOptions {
  double jh = 0.0, ji = 0.0, t = 1.0, h = 0.0;
  std::string format = "text";
};

struct SweepOptions {
  double jh = 0.0, ji = 0.0;
  double t_min = 0.0, t_max = 0.0, h_min = 0.0, h_max = 0.0;
  int t_count = 0, h_count = 0;
  int workers = 0;
  std::string out;
  std::string format = "csv";
  bool detect_plateaus = false;
  bool detect_peaks = false;
  double flatness_tol = 1e-3;
  double min_width = 0.3;
  double snap_tol = 1e-3;
  double prominence = 5.0;
};

struct VerifyOptions {
  int n = 4;
  int draws = 20;
  unsigned long long seed = 12345;
};

struct PhaseOptions {
  double jh = 0.0, ji = 0.0;
};

void require_positive(double value, const char* flag) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw pyrolad::ValidationError(std::string(flag) +
                                   " must be a positive finite number");
  }
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int run_point(const PointOptions& opt) {
  require_positive(opt.t, "--t");
  pyrolad::ModelParams p{opt.jh, opt.ji, opt.h, opt.t};
  pyrolad::validate(p);
  const pyrolad::ObservablePoint pt = pyrolad::evaluate_point(p);
  const double residual = std::abs(pt.m_tm - pt.m_rdm);
  if (opt.format == "json") {
    nlohmann::ordered_json row;
    row["temperature"] = pt.temperature;
    row["field"] = pt.field;
    row["log_z_per_rung"] = pt.log_z_per_rung;
    row["m_tm"] = pt.m_tm;
    row["m_rdm"] = pt.m_rdm;
    row["m_residual"] = residual;
    row["chi"] = pt.chi;
    row["concurrence"] = pt.concurrence;
    std::cout << row.dump() << '\n';
  } else {
    std::cout << "temperature    = " << fmt(pt.temperature) << '\n'
              << "field          = " << fmt(pt.field) << '\n'
              << "log_z_per_rung = " << fmt(pt.log_z_per_rung) << '\n'
              << "m_tm           = " << fmt(pt.m_tm) << '\n'
              << "m_rdm          = " << fmt(pt.m_rdm) << '\n'
              << "m_residual     = " << fmt(residual) << '\n'
              << "chi            = " << fmt(pt.chi) << '\n'
              << "concurrence    = " << fmt(pt.concurrence) << '\n';
  }
  return kExitOk;
}

int run_sweep(const SweepOptions& opt) {
  pyrolad::GridSpec spec;
  spec.t_min = opt.t_min;
  spec.t_max = opt.t_max;
  spec.t_count = opt.t_count;
  spec.h_min = opt.h_min;
  spec.h_max = opt.h_max;
  spec.h_count = opt.h_count;
  spec.j_heisenberg = opt.jh;
  spec.j_ising = opt.ji;
  pyrolad::validate(spec);
  if (opt.format != "csv" && opt.format != "jsonl") {
    throw pyrolad::ValidationError("--format must be csv or jsonl");
  }

  // Open before computing so a bad path fails fast.
  std::ofstream out(opt.out, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open output path " << opt.out << '\n';
    return kExitNumerical;
  }

  const std::vector<pyrolad::ObservablePoint> points =
      pyrolad::sweep_grid(spec, opt.workers);
  if (opt.format == "csv") {
    pyrolad::write_csv(out, points);
  } else {
    pyrolad::write_json_lines(out, points);
  }
  out.flush();
  if (!out) {
    std::cerr << "error: write failed for " << opt.out << '\n';
    return kExitNumerical;
  }

  if (opt.detect_plateaus || opt.detect_peaks) {
    for (int ti = 0; ti < spec.t_count; ++ti) {
      const double t = points[static_cast<size_t>(ti) * spec.h_count].temperature;
      std::vector<std::pair<double, double>> m_curve, chi_curve;
      for (int hi = 0; hi < spec.h_count; ++hi) {
        const auto& pt = points[static_cast<size_t>(ti) * spec.h_count + hi];
        m_curve.emplace_back(pt.field, pt.m_tm);
        chi_curve.emplace_back(pt.field, pt.chi);
      }
      if (opt.detect_plateaus) {
        const pyrolad::PlateauReport rep = pyrolad::detect_plateaus(
            m_curve, opt.flatness_tol, opt.min_width, opt.snap_tol);
        std::cout << "T = " << fmt(t) << ": " << rep.plateaus.size()
                  << " plateau(s)\n";
        for (const auto& pl : rep.plateaus) {
          std::cout << "  m = " << fmt(pl.value) << " on [" << fmt(pl.h_start)
                    << ", " << fmt(pl.h_end) << "]\n";
        }
        const auto crossings = pyrolad::plateau_transitions(m_curve, rep);
        for (size_t k = 0; k < crossings.size(); ++k) {
          std::cout << "  transition " << k + 1 << " at h = "
                    << fmt(crossings[k]) << '\n';
        }
      }
      if (opt.detect_peaks) {
        const auto peaks = pyrolad::detect_peaks(chi_curve, opt.prominence);
        std::cout << "T = " << fmt(t) << ": " << peaks.size()
                  << " chi peak(s)\n";
        for (const auto& pk : peaks) {
          std::cout << "  chi = " << fmt(pk.height) << " at h = "
                    << fmt(pk.field) << '\n';
        }
      }
    }
  }
  return kExitOk;
}

struct CheckResult {
  std::string name;
  double residual;
  double tolerance;
  bool pass() const { return residual <= tolerance; }
};

int run_verify(const VerifyOptions& opt) {
  if (opt.n < 2 || opt.n > pyrolad::kMaxClassicalRungs) {
    throw pyrolad::ValidationError(
        "--n must be between 2 and " +
        std::to_string(pyrolad::kMaxClassicalRungs));
  }
  if (opt.draws < 1) {
    throw pyrolad::ValidationError("--draws must be >= 1");
  }
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> coupling(-3.0, 3.0);
  std::uniform_real_distribution<double> temp(0.2, 2.0);
  const auto draw = [&]() {
    pyrolad::ModelParams p;
    p.j_heisenberg = coupling(rng);
    p.j_ising = coupling(rng);
    p.field = coupling(rng);
    p.temperature = temp(rng);
    return p;
  };

  std::vector<CheckResult> results;

  {  // classical enumeration vs transfer-matrix trace power
    double worst = 0.0;
    for (int d = 0; d < opt.draws; ++d) {
      const pyrolad::ModelParams p = draw();
      const pyrolad::TransferMatrix w = pyrolad::build_transfer_matrix(p);
      for (int n = 2; n <= opt.n; ++n) {
        pyrolad::linalg::Matrix dense(4);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) dense(i, j) = w.entries[i][j];
        pyrolad::linalg::Matrix power = dense;
        for (int k = 1; k < n; ++k) {
          power = pyrolad::linalg::multiply(power, dense);
        }
        const double trace =
            power(0, 0) + power(1, 1) + power(2, 2) + power(3, 3);
        const double via_w = 0.75 * p.beta() * p.j_heisenberg +
                             w.log_scale + std::log(trace) / n;
        const double via_enum = pyrolad::classical_log_partition(p, n);
        worst = std::max(worst, std::abs(via_w - via_enum));
      }
    }
    results.push_back({"trace-power identity", worst, 1e-12});
  }

  {  // quantum exact diagonalization vs classical enumeration
    double worst = 0.0;
    const int n_max = std::min(opt.n, pyrolad::kMaxQuantumRungs);
    for (int d = 0; d < opt.draws; ++d) {
      const pyrolad::ModelParams p = draw();
      for (int n = 2; n <= n_max; ++n) {
        const double q = pyrolad::quantum_log_partition(p, n);
        const double c = pyrolad::classical_log_partition(p, n);
        worst = std::max(worst,
                         std::abs(q - c) / std::max(1.0, std::abs(c)));
      }
    }
    results.push_back({"quantum vs classical partition", worst, 1e-9});
  }

  {  // closed-form reduced density matrix vs two-rung block partial trace
    double worst = 0.0;
    for (int d = 0; d < opt.draws; ++d) {
      const pyrolad::ModelParams p = draw();
      const pyrolad::RungDensityMatrix a = pyrolad::rung_density_matrix(p);
      const pyrolad::RungDensityMatrix b =
          pyrolad::block_reduced_density_matrix(p);
      const double da[4] = {a.x / a.trace_value, a.y / a.trace_value,
                            a.z / a.trace_value, a.w / a.trace_value};
      const double db[4] = {b.x / b.trace_value, b.y / b.trace_value,
                            b.z / b.trace_value, b.w / b.trace_value};
      for (int i = 0; i < 4; ++i) {
        worst = std::max(worst, std::abs(da[i] - db[i]));
      }
    }
    results.push_back({"closed-form rho vs block partial trace", worst,
                       1e-12});
  }

  {  // general concurrence path vs X-state closed form
    double worst = 0.0;
    const int n_draws = std::max(opt.draws, 100);
    for (int d = 0; d < n_draws; ++d) {
      const pyrolad::ModelParams p = draw();
      const pyrolad::RungDensityMatrix rho = pyrolad::rung_density_matrix(p);
      const double general = pyrolad::concurrence_general(rho).value;
      const double closed = pyrolad::concurrence_xstate(rho);
      worst = std::max(worst, std::abs(general - closed));
    }
    results.push_back({"concurrence general vs X-state", worst, 1e-12});
  }

  bool all_pass = true;
  for (const CheckResult& r : results) {
    std::cout << (r.pass() ? "PASS" : "FAIL") << "  " << r.name
              << ": max residual " << fmt(r.residual) << " (tolerance "
              << fmt(r.tolerance) << ")\n";
    all_pass = all_pass && r.pass();
  }
  if (!all_pass) {
    for (const CheckResult& r : results) {
      if (!r.pass()) {
        std::cerr << "error: check failed: " << r.name << '\n';
      }
    }
    return kExitNumerical;
  }
  return kExitOk;
}

int run_phase(const PhaseOptions& opt) {
  if (!(opt.jh > 0.0) || !(opt.ji > 0.0)) {
    throw pyrolad::ValidationError("--jh and --ji must be > 0");
  }
  const pyrolad::PhaseBoundaries b =
      pyrolad::ground_state_phase_boundaries(opt.jh, opt.ji);
  std::cout << "h_c1 = " << fmt(b.h_c1) << '\n'
            << "h_c2 = " << fmt(b.h_c2) << '\n'
            << "plateau magnetizations per site: "
            << fmt(b.plateau_magnetizations[0]) << ", "
            << fmt(b.plateau_magnetizations[1]) << ", "
            << fmt(b.plateau_magnetizations[2]) << '\n';
  if (b.collapsed) {
    std::cout << "warning: mid plateau collapses (h_c1 ~ h_c2)\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact thermodynamics of the spin-1/2 Ising-Heisenberg pyrochlore "
      "edge-shared ladder: magnetization, susceptibility and rung "
      "concurrence from the transfer-matrix and reduced-density-matrix "
      "routes."};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help and exit");  // frees -h / --h

  PointOptions popt;
  CLI::App* point = app.add_subcommand(
      "point", "Evaluate all observables at one (T, h) parameter point");
  point->set_help_flag("--help", "print help and exit");
  point->add_option("--jh", popt.jh, "Heisenberg coupling J_H")->required();
  point->add_option("--ji", popt.ji, "Ising coupling J_I")->required();
  point->add_option("--t", popt.t, "temperature (K_B = 1)")->required();
  point->add_option("--h", popt.h, "external field")->required();
  point->add_option("--format", popt.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));

  SweepOptions sopt;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Evaluate a (T, h) grid and write CSV or JSON-lines");
  sweep->set_help_flag("--help", "print help and exit");
  sweep->add_option("--jh", sopt.jh, "Heisenberg coupling J_H")->required();
  sweep->add_option("--ji", sopt.ji, "Ising coupling J_I")->required();
  sweep->add_option("--t-min", sopt.t_min)->required();
  sweep->add_option("--t-max", sopt.t_max)->required();
  sweep->add_option("--t-count", sopt.t_count)->required();
  sweep->add_option("--h-min", sopt.h_min)->required();
  sweep->add_option("--h-max", sopt.h_max)->required();
  sweep->add_option("--h-count", sopt.h_count)->required();
  sweep->add_option("--out", sopt.out, "output file path")->required();
  sweep->add_option("--format", sopt.format, "csv | jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  sweep->add_option("--workers", sopt.workers,
                    "worker threads (default: hardware concurrency)");
  sweep->add_flag("--detect-plateaus", sopt.detect_plateaus,
                  "print plateau report per temperature row");
  sweep->add_flag("--detect-peaks", sopt.detect_peaks,
                  "print chi peak report per temperature row");
  sweep->add_option("--flatness-tol", sopt.flatness_tol,
                    "plateau |dm/dh| threshold");
  sweep->add_option("--min-width", sopt.min_width, "minimal plateau width");
  sweep->add_option("--snap-tol", sopt.snap_tol,
                    "snap tolerance toward {0, 1/4, 1/2}");
  sweep->add_option("--prominence", sopt.prominence,
                    "peak prominence factor over the median");

  VerifyOptions vopt;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the brute-force oracle cross-checks");
  verify->set_help_flag("--help", "print help and exit");
  verify->add_option("--n", vopt.n, "max ladder size (classical <= 12, "
                                    "quantum capped at 5)");
  verify->add_option("--draws", vopt.draws, "random parameter draws");
  verify->add_option("--seed", vopt.seed, "RNG seed");

  PhaseOptions phopt;
  CLI::App* phase = app.add_subcommand(
      "phase", "T = 0 critical fields for antiferromagnetic couplings");
  phase->set_help_flag("--help", "print help and exit");
  phase->add_option("--jh", phopt.jh, "Heisenberg coupling J_H")->required();
  phase->add_option("--ji", phopt.ji, "Ising coupling J_I")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    if (point->parsed()) return run_point(popt);
    if (sweep->parsed()) return run_sweep(sopt);
    if (verify->parsed()) return run_verify(vopt);
    if (phase->parsed()) return run_phase(phopt);
  } catch (const pyrolad::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitValidation;
}

#include "core/lindblad.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rsim {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

double truncated_gauss_area(double sigma, int length_in_sigmas) {
  // integral of exp(-(t-c)^2 / 2 sigma^2) over the window
  return sigma * std::sqrt(2.0 * M_PI) *
         std::erf(length_in_sigmas / (2.0 * std::sqrt(2.0)));
}

struct Lindbladian {
  Eigen::MatrixXcd h0;                     // static part in the drive frame
  Eigen::MatrixXcd drive;                  // (t + t^dag) / 2
  std::vector<std::pair<double, Eigen::MatrixXcd>> jumps;

  Eigen::MatrixXcd rhs(const Eigen::MatrixXcd& rho, double omega) const {
    const std::complex<double> i(0.0, 1.0);
    Eigen::MatrixXcd h = h0;
    if (omega != 0.0) h += omega * drive;
    Eigen::MatrixXcd out = -i * (h * rho - rho * h);
    for (const auto& [rate, l] : jumps) {
      const Eigen::MatrixXcd lr = l * rho;
      out += rate * (lr * l.adjoint() -
                     0.5 * (l.adjoint() * (lr) + rho * l.adjoint() * l));
    }
    return out;
  }
};

Lindbladian build_lindbladian(int levels, const SystemParams& p,
                              double drive_frame_freq) {
  Lindbladian lb;
  lb.h0 = Eigen::MatrixXcd::Zero(levels, levels);
  for (int n = 0; n < levels; ++n) {
    const double energy = 0.5 * p.anharmonicity * n * (n - 1);
    lb.h0(n, n) = energy - n * drive_frame_freq;
  }
  Eigen::MatrixXcd lower = Eigen::MatrixXcd::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) lower(n - 1, n) = std::sqrt(double(n));
  lb.drive = 0.5 * (lower + lower.adjoint());

  auto ketbra = [&](int a, int b) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(levels, levels);
    m(a, b) = 1.0;
    return m;
  };
  lb.jumps.emplace_back(1.0 / p.ancilla_t1_ge, ketbra(0, 1));
  if (levels >= 3) {
    lb.jumps.emplace_back(1.0 / p.ancilla_t1_ef, ketbra(1, 2));
    const double gphi_e = 1.0 / p.ancilla_t2_ge - 0.5 / p.ancilla_t1_ge;
    const double gphi_f = 1.0 / p.ancilla_t2_gf - 0.5 / p.ancilla_t1_ef;
    lb.jumps.emplace_back(2.0 * gphi_e, ketbra(1, 1));
    lb.jumps.emplace_back(2.0 * gphi_f, ketbra(2, 2));
  }
  if (levels >= 4) lb.jumps.emplace_back(1.0 / p.ancilla_t1_fh, ketbra(2, 3));
  return lb;
}

}  // namespace

void PulseParams::validate() const {
  require(sigma > 0.0, "PulseParams: sigma must be > 0");
  require(length_in_sigmas >= 1, "PulseParams: length_in_sigmas must be >= 1");
  require(amplitude >= 0.0, "PulseParams: amplitude must be >= 0");
  require(from_level >= 0 && from_level <= 2,
          "PulseParams: transition must start at g, e or f");
}

double pi_area_amplitude(double sigma, int length_in_sigmas, int from_level) {
  const double element = std::sqrt(double(from_level + 1));
  return M_PI / (element * truncated_gauss_area(sigma, length_in_sigmas));
}

PulseParams default_ge_pulse() {
  PulseParams p;
  p.sigma = 5e-9;
  p.length_in_sigmas = 8;
  p.detuning = 2.0 * M_PI * 3.899e6;
  p.from_level = 0;
  p.amplitude = pi_area_amplitude(p.sigma, p.length_in_sigmas, p.from_level);
  return p;
}

PulseParams default_ef_pulse() {
  PulseParams p;
  p.sigma = 6e-9;
  p.length_in_sigmas = 6;
  p.detuning = 2.0 * M_PI * 2.67e6;
  p.from_level = 1;
  p.amplitude = pi_area_amplitude(p.sigma, p.length_in_sigmas, p.from_level);
  return p;
}

Eigen::MatrixXcd level_state(int levels, int level) {
  require(levels >= 2 && level >= 0 && level < levels,
          "level_state: bad level");
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(levels, levels);
  rho(level, level) = 1.0;
  return rho;
}

void check_density_matrix(const Eigen::MatrixXcd& rho, double hermiticity_tol,
                          double trace_tol, double positivity_tol) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > hermiticity_tol)
    throw std::runtime_error("density matrix is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > trace_tol ||
      std::abs(rho.trace().imag()) > trace_tol)
    throw std::runtime_error("density matrix trace drifted from 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      0.5 * (rho + rho.adjoint()));
  if (es.eigenvalues().minCoeff() < -positivity_tol)
    throw std::runtime_error("density matrix lost positivity");
}

Eigen::MatrixXcd evolve(const Eigen::MatrixXcd& rho0, const PulseParams* pulse,
                        const SystemParams& params, double t_span, double dt,
                        const TrajectorySink& sink, int sink_stride) {
  require(rho0.rows() == rho0.cols() && rho0.rows() >= 2 && rho0.rows() <= 4,
          "evolve: rho must be KxK with K in 2..4");
  require(dt > 0.0, "evolve: dt must be > 0");
  check_density_matrix(rho0);
  const int levels = static_cast<int>(rho0.rows());

  double drive_frame = 0.0;
  double duration = t_span;
  double omega0 = 0.0;
  double center = 0.0, width = 0.0;
  if (pulse) {
    pulse->validate();
    require(pulse->from_level + 1 < levels,
            "evolve: pulse transition outside the simulated levels");
    // transition frequency relative to g-e, plus the stated detuning
    const double e_hi =
        0.5 * params.anharmonicity * (pulse->from_level + 1) * pulse->from_level;
    const double e_lo =
        0.5 * params.anharmonicity * pulse->from_level * (pulse->from_level - 1);
    drive_frame = (e_hi - e_lo) + pulse->detuning;
    duration = pulse->duration();  // a pulse is integrated over its window
    omega0 = pulse->amplitude;
    width = pulse->sigma;
    center = 0.5 * pulse->duration();
  }
  require(duration > 0.0, "evolve: need a positive time span");

  // dt must resolve the fastest angular scale by >= 20x
  double omega_max = omega0;
  if (pulse) {
    for (int n = 0; n < levels; ++n) {
      const double energy = 0.5 * params.anharmonicity * n * (n - 1);
      omega_max = std::max(omega_max, std::abs(energy - n * drive_frame));
    }
  }
  omega_max = std::max(omega_max, 1.0 / params.ancilla_t1_ge);
  omega_max = std::max(omega_max, 1.0 / params.ancilla_t2_gf);
  if (dt > 2.0 * M_PI / (20.0 * omega_max))
    throw std::invalid_argument(
        "evolve: dt too coarse for the fastest rate in the problem");

  Lindbladian lb = build_lindbladian(levels, params, drive_frame);
  // Undriven evolution runs in the interaction picture: the diagonal phases
  // affect neither populations nor coherence magnitudes, and dropping them
  // lets dt track the dissipative rates instead of the anharmonicity.
  if (!pulse) lb.h0.setZero();
  auto envelope = [&](double t) -> double {
    if (!pulse) return 0.0;
    const double x = (t - center) / width;
    return omega0 * std::exp(-0.5 * x * x);
  };

  const long steps = static_cast<long>(std::ceil(duration / dt - 1e-12));
  Eigen::MatrixXcd rho = rho0;
  double t = 0.0;
  if (sink) sink(0.0, rho);
  for (long s = 0; s < steps; ++s) {
    const double h = std::min(dt, duration - t);
    const Eigen::MatrixXcd k1 = lb.rhs(rho, envelope(t));
    const Eigen::MatrixXcd k2 = lb.rhs(rho + 0.5 * h * k1, envelope(t + 0.5 * h));
    const Eigen::MatrixXcd k3 = lb.rhs(rho + 0.5 * h * k2, envelope(t + 0.5 * h));
    const Eigen::MatrixXcd k4 = lb.rhs(rho + h * k3, envelope(t + h));
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
    if ((s + 1) % sink_stride == 0 || s + 1 == steps) {
      check_density_matrix(rho);
      if (sink) sink(t, rho);
    }
  }
  return rho;
}

AmplitudeScan optimize_amplitude(const PulseParams& pulse_template,
                                 const SystemParams& params,
                                 const Eigen::MatrixXcd& rho0, int target_level,
                                 double dt, int grid_points) {
  pulse_template.validate();
  require(grid_points >= 41, "optimize_amplitude: need at least 41 grid points");
  require(target_level >= 0 && target_level < rho0.rows(),
          "optimize_amplitude: target level outside the simulated space");

  const double base = pulse_template.amplitude;
  auto population = [&](double scale) {
    PulseParams p = pulse_template;
    p.amplitude = base * scale;
    const Eigen::MatrixXcd rho = evolve(rho0, &p, params, 0.0, dt);
    return rho(target_level, target_level).real();
  };

  AmplitudeScan scan;
  std::vector<double> pop(static_cast<size_t>(grid_points));
  for (int i = 0; i < grid_points; ++i) {
    const double scale = 0.9 + 0.2 * i / (grid_points - 1);
    PulseParams p = pulse_template;
    p.amplitude = base * scale;
    const Eigen::MatrixXcd rho = evolve(rho0, &p, params, 0.0, dt);
    ScanPoint pt;
    pt.amplitude_scale = scale;
    pt.p_g = rho(0, 0).real();
    pt.p_e = rho(1, 1).real();
    pt.p_f = rho.rows() > 2 ? rho(2, 2).real() : 0.0;
    scan.points.push_back(pt);
    pop[static_cast<size_t>(i)] = rho(target_level, target_level).real();
  }

  // unimodality over the scan: exactly one interior local maximum
  std::vector<int> maxima;
  for (int i = 0; i < grid_points; ++i) {
    const double left = i > 0 ? pop[static_cast<size_t>(i - 1)] : -1.0;
    const double right =
        i + 1 < grid_points ? pop[static_cast<size_t>(i + 1)] : -1.0;
    if (pop[static_cast<size_t>(i)] > left + 1e-12 &&
        pop[static_cast<size_t>(i)] > right + 1e-12)
      maxima.push_back(i);
  }
  if (maxima.size() != 1) {
    std::ostringstream msg;
    msg << "optimize_amplitude: objective is not unimodal over the scan;"
        << " local maxima at scales";
    for (int i : maxima)
      msg << " " << scan.points[static_cast<size_t>(i)].amplitude_scale;
    throw std::invalid_argument(msg.str());
  }
  const int peak = maxima[0];
  if (peak == 0 || peak == grid_points - 1)
    throw std::invalid_argument(
        "optimize_amplitude: optimum at the scan boundary");

  // golden-section refinement inside the bracketing grid points
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = scan.points[static_cast<size_t>(peak - 1)].amplitude_scale;
  double b = scan.points[static_cast<size_t>(peak + 1)].amplitude_scale;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = population(x1), f2 = population(x2);
  while (b - a > 1e-4) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = population(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = population(x1);
    }
  }
  scan.best_scale = 0.5 * (a + b);
  scan.optimized = pulse_template;
  scan.optimized.amplitude = base * scan.best_scale;
  return scan;
}

std::array<double, 3> rate_equation(const std::array<double, 3>& p0, double t,
                                    const SystemParams& params) {
  require(t >= 0.0, "rate_equation: time must be >= 0");
  double total = 0.0;
  for (double v : p0) {
    require(v >= -1e-12, "rate_equation: negative population");
    total += v;
  }
  require(std::abs(total - 1.0) <= 1e-9, "rate_equation: populations must sum to 1");

  const double g1 = 1.0 / params.ancilla_t1_ge;   // e -> g
  const double g2 = 1.0 / params.ancilla_t1_ef;   // f -> e
  const double ef = std::exp(-g2 * t);
  const double ee = std::exp(-g1 * t);

  const double pf = p0[2] * ef;
  double pe;
  if (std::abs(g1 - g2) < 1e-9 * std::max(g1, g2)) {
    // equal-rate cascade limit
    pe = p0[1] * ee + p0[2] * g2 * t * ee;
  } else {
    pe = p0[1] * ee + p0[2] * g2 * (ef - ee) / (g1 - g2);
  }
  const double pg = total - pe - pf;
  return {pg, pe, pf};
}

QndFit fit_qnd(std::span<const double> intervals,
               std::span<const double> lifetimes) {
  require(intervals.size() == lifetimes.size(),
          "fit_qnd: intervals/lifetimes length mismatch");
  const size_t n = intervals.size();
  require(n >= 2, "fit_qnd: need at least two intervals");
  for (size_t i = 0; i < n; ++i)
    require(intervals[i] > 0.0 && lifetimes[i] > 0.0,
            "fit_qnd: intervals and lifetimes must be positive");
  bool distinct = false;
  for (size_t i = 1; i < n; ++i)
    if (intervals[i] != intervals[0]) distinct = true;
  require(distinct, "fit_qnd: degenerate design, all intervals equal");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    const double x = 1.0 / intervals[i];
    const double y = 1.0 / lifetimes[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(n);
  const double det = m * sxx - sx * sx;
  const double slope = (m * sxy - sx * sy) / det;
  const double intercept = (sy - slope * sx) / m;

  double ss = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double r = 1.0 / lifetimes[i] - (intercept + slope / intervals[i]);
    ss += r * r;
  }
  const double sxx_c = sxx - sx * sx / m;
  const double var = n > 2 ? ss / (m - 2.0) : 0.0;

  QndFit fit;
  fit.demolition_prob = slope;
  fit.tau0 = 1.0 / intercept;
  fit.demolition_err = std::sqrt(std::max(var, 0.0) / sxx_c);
  const double intercept_err =
      std::sqrt(std::max(var, 0.0) * (1.0 / m + sx * sx / (m * m * sxx_c)));
  fit.tau0_err = intercept_err * fit.tau0 * fit.tau0;
  return fit;
}

}  // namespace rsim

#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "core/params.hpp"

namespace rsim {

// Gaussian drive pulse on one transmon transition, described in the frame
// rotating at the drive frequency. The envelope is truncated to
// length_in_sigmas * sigma total duration and the drive sits `detuning`
// above the bare transition (blue side for positive values).
struct PulseParams {
  double sigma = 0.0;          // envelope width [s]
  int length_in_sigmas = 0;    // total duration / sigma
  double detuning = 0.0;       // drive minus transition frequency [rad/s]
  double amplitude = 0.0;      // peak Rabi coefficient of (t + t^dag)/2 [rad/s]
  int from_level = 0;          // target transition (from, from+1)

  double duration() const { return sigma * length_in_sigmas; }
  void validate() const;
};

// Peak amplitude giving pulse area pi on the target transition, including the
// truncated-Gaussian area and the sqrt(from+1) matrix element.
double pi_area_amplitude(double sigma, int length_in_sigmas, int from_level);

// Measured-device pulse defaults with analytic pi-area amplitudes.
PulseParams default_ge_pulse();
PulseParams default_ef_pulse();

Eigen::MatrixXcd level_state(int levels, int level);

// Throws std::runtime_error if rho violates Hermiticity (1e-10), unit trace
// (1e-8) or positivity (eigenvalues >= -1e-8).
void check_density_matrix(const Eigen::MatrixXcd& rho,
                          double hermiticity_tol = 1e-10,
                          double trace_tol = 1e-8, double positivity_tol = 1e-8);

using TrajectorySink =
    std::function<void(double time, const Eigen::MatrixXcd& rho)>;

// Fixed-step RK4 integration of the driven master equation with the transmon
// relaxation and dephasing channels (g<-e, e<-f, plus f<-h when rho is 4x4).
// `pulse` may be null for free evolution over t_span; otherwise t_span must
// equal the pulse duration or be <= 0 to use it. dt must resolve the fastest
// angular scale by >= 20x. The trace is never renormalized during
// integration; invariant violations abort with std::runtime_error.
Eigen::MatrixXcd evolve(const Eigen::MatrixXcd& rho0, const PulseParams* pulse,
                        const SystemParams& params, double t_span, double dt,
                        const TrajectorySink& sink = nullptr,
                        int sink_stride = 16);

struct ScanPoint {
  double amplitude_scale = 0.0;  // relative to the analytic pi-area amplitude
  double p_g = 0.0, p_e = 0.0, p_f = 0.0;
};

struct AmplitudeScan {
  std::vector<ScanPoint> points;   // the coarse grid
  double best_scale = 1.0;         // after golden-section refinement
  PulseParams optimized;           // template with the refined amplitude
};

// Grid scan (>= 41 points over +-10% around the analytic pi amplitude)
// followed by golden-section refinement of the target-level population.
// Rejects non-unimodal scans, reporting every local maximum found.
AmplitudeScan optimize_amplitude(const PulseParams& pulse_template,
                                 const SystemParams& params,
                                 const Eigen::MatrixXcd& rho0, int target_level,
                                 double dt = 5e-11, int grid_points = 41);

// Closed-form populations of the g/e/f cascade after time t (rates 1/T1_ge,
// 1/T1_ef), with the equal-rate case handled by the limiting formula.
std::array<double, 3> rate_equation(const std::array<double, 3>& p0, double t,
                                    const SystemParams& params);

struct QndFit {
  double tau0 = 0.0;            // intercept lifetime [s]
  double demolition_prob = 0.0; // slope
  double tau0_err = 0.0;
  double demolition_err = 0.0;
};

// Linear least squares of 1/tau_tot against 1/tau_i.
QndFit fit_qnd(std::span<const double> intervals,
               std::span<const double> lifetimes);

}  // namespace rsim

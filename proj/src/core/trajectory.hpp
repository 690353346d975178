#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "core/confusion.hpp"
#include "core/params.hpp"
#include "core/rng.hpp"

namespace rsim {

// Mean readout responses of the four transmon levels: one steady-state point
// per level on a circle in the (I,Q) plane, approached with the resonator
// ring-up time. White Gaussian noise per quadrature per sample.
struct ResponseTemplates {
  std::array<std::complex<double>, 4> steady{};  // per level g,e,f,h
  double noise_std = 1.0;                        // per quadrature per sample
  double t_rise = 200e-9;                        // resonator ring-up [s]

  // Template of a non-decaying level: steady[s] * (1 - exp(-t/t_rise)).
  std::complex<double> mean(int level, double t) const;

  // Throws std::invalid_argument unless steady points are distinct,
  // noise_std > 0 and t_rise > 0.
  void validate() const;

  // Four equally spaced phases, amplitude calibrated so the g/h aggregate
  // misassignment minimum lands at its measured scale.
  static ResponseTemplates defaults();
};

struct JumpEvent {
  double time = 0.0;
  int from = 0;
  int to = 0;
};

struct TrajectoryRecord {
  std::vector<std::complex<double>> samples;  // at dt, 2dt, ...
  std::vector<JumpEvent> jumps;               // strictly increasing times
  int true_initial_level = 0;
  double dt = 0.0;
};

// One noisy two-quadrature record of length t_m (t_m/dt samples). The level
// undergoes the decay cascade h->f->e->g and thermal excitation g->e; the
// mean signal relaxes toward the current level's steady point with t_rise.
TrajectoryRecord simulate_record(int initial_level, const SystemParams& params,
                                 const ResponseTemplates& templates, double t_m,
                                 double dt, RandomStream& rng);

// Argmin over levels of sum |z(t) - zbar_s(t)|^2 up to t_m; ties go to the
// lower level.
int classify_record(const TrajectoryRecord& record,
                    const ResponseTemplates& templates, double t_m);

struct MisassignmentPoint {
  double t_m = 0.0;
  int level = 0;
  double probability = 0.0;  // P(assigned wrong subset | prepared level)
  double stderr_value = 0.0;
  long wrong = 0;
  long trials = 0;
};

// Misassignment vs acquisition time: for g the probability of reporting any
// excited level, for excited levels the probability of reporting g. Uses a
// sufficient-statistic sampler (exact segment sums plus correlated Gaussian
// projections), which reproduces the classifier distribution of
// simulate_record/classify_record without per-sample work, so million-trial
// curves are cheap.
std::vector<MisassignmentPoint> misassignment_curves(
    std::span<const int> levels, std::span<const double> tm_grid, long trials,
    const SystemParams& params, const ResponseTemplates& templates,
    uint64_t seed, int threads);

// Pulse-end populations (P_g, P_e, P_f) for a given g-e drive amplitude
// scale, with or without the shelving pulse appended.
using PopulationSource =
    std::function<std::array<double, 3>(double amplitude_scale, bool shelved)>;

struct RabiPoint {
  double amplitude_scale = 0.0;
  double p_not_g = 0.0;  // probability the readout reports e, f or h
};

// Composes pulse-end populations with the single-readout confusion matrix.
std::vector<RabiPoint> shelving_rabi(std::span<const double> amplitude_scales,
                                     bool shelved,
                                     const PopulationSource& populations,
                                     const AncillaConfusion& confusion);

// test support: exact segment-sum Gram entries vs brute-force sample sums
namespace detail {
struct Segment {
  double start = 0.0;
  int level = 0;
  std::complex<double> mean_at_start{};
};
// sum over samples k with t_lo < k*dt <= t_hi of Re[(mu - zbar_s)^* (mu - zbar_t)]
double gram_entry(const std::vector<Segment>& segments, double t_end,
                  const ResponseTemplates& templates, double dt, double t_lo,
                  double t_hi, int s, int t);
}  // namespace detail

}  // namespace rsim

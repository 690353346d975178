#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/codes.hpp"
#include "core/confusion.hpp"
#include "core/hmm.hpp"
#include "core/params.hpp"
#include "core/rng.hpp"

namespace rsim {

// Per-cycle error sources of the repeated-readout protocol. The mapping-pulse
// flip errors are calibrated together with the readout confusion so that the
// net probability of a wrong vote equals delta0 (state in S) and delta1
// (state outside S), the two scalars the analytic theory uses.
struct ErrorModel {
  AncillaConfusion confusion;
  double eps_map_in = 0.0;    // mapping fails to flip although n in S
  double eps_map_out = 0.0;   // mapping flips although n outside S
  double delta_in = 0.0;      // implied per-cycle vote error, n in S
  double delta_out = 0.0;     // implied per-cycle vote error, n outside S
  double leakage_prob = 8e-5; // per readout, promotes ancilla above h
  double t1_higher = 40e-6;   // relaxation of the leaked level back to h
  // Reset always takes exactly one iteration and ends in g; used for runs
  // matched to the fixed-cycle-time theory.
  bool ideal_reset = false;

  // Solve the mapping errors from the target per-cycle deltas given the
  // confusion matrix. Throws if the targets are not reachable.
  static ErrorModel lumped(const AncillaConfusion& confusion, double delta0,
                           double delta1, double leakage_prob = 8e-5);
  static ErrorModel defaults();
};

struct ResetResult {
  int first_outcome = 0;      // 0=g,1=e,2=f,3=h; the cycle's vote readout
  int iterations = 0;
  double duration = 0.0;      // iterations * t_readout_reset
  bool stuck = false;         // iterations >= 5
  AncillaLevel final_level = AncillaLevel::G;
};

// Feedforward reset: read out, terminate once 'g' is recorded, otherwise walk
// the conditional pulse ladder (h: pi_fh,pi_ef,pi_ge; f: pi_ef,pi_ge; e:
// pi_ge) and try again. Relaxation and thermal excitation act over each
// iteration window; a per-readout leakage probability promotes the ancilla to
// a level the ladder does not address. Hard error after 1000 iterations.
ResetResult reset_ancilla(AncillaLevel level, const ErrorModel& errors,
                          const SystemParams& params, RandomStream& rng);

// One trial of the repeated measurement: all lists have length = cycles.
struct ReadoutSequence {
  long trial_id = 0;
  int true_initial_n = 0;
  std::vector<Outcome> outcomes;
  std::vector<int> raw_ancilla_outcomes;  // 0..3 as reported
  std::vector<double> cycle_durations;    // t_map + reset_iterations * t_r
  std::vector<int> reset_iterations;
  std::vector<bool> stuck_flags;

  bool any_stuck() const;
  void validate(const SystemParams& params) const;
};

// Simulate `cycles` map/readout/reset rounds from a fixed initial photon
// number. Storage relaxation and gain are sampled as exact birth-death jumps
// over each cycle's evolution window; per-readout demolition removes one
// photon with probability demolition_prob.
ReadoutSequence simulate_trial(const CodeSpec& code, int initial_n, int cycles,
                               const SystemParams& params,
                               const ErrorModel& errors, RandomStream& rng,
                               long trial_id = 0);

struct InfidelityRow {
  std::string code;
  std::string classifier;  // "majority" or "mle"
  int votes = 0;
  long errors_0to1 = 0;
  long errors_1to0 = 0;
  long trials = 0;  // retained trials, both prepared states combined
  double infidelity = 0.0;
  double stderr_value = 0.0;
};

struct RunOptions {
  long trials_per_state = 100000;
  int max_votes = 31;
  uint64_t seed = 0;
  int threads = 1;
  bool postselect_stuck = false;
  bool include_majority = true;
  bool include_mle = true;
};

struct ExperimentResult {
  std::vector<InfidelityRow> rows;
  long stuck_trials = 0;   // trials with any stuck reset, both states
  long total_trials = 0;
  std::vector<ReadoutSequence> dumped;  // filled when dump_trials > 0
};

// Assignment infidelity 1-F = P(0_L-assignment | 1_L) + P(1_L | 0_L) for every
// prefix length N <= max_votes and both classifiers. Each trial is simulated
// once at max_votes readouts and classified at every prefix, which is also how
// the measurements are analyzed. dump_trials > 0 retains that many sequences
// per prepared state for serialization.
ExperimentResult run_experiment(const CodeSpec& code, const SystemParams& params,
                                const ErrorModel& errors, const RunOptions& options,
                                long dump_trials = 0);

struct QndPoint {
  double interval = 0.0;       // readout spacing tau_i [s]
  double lifetime = 0.0;       // fitted effective storage lifetime [s]
  double lifetime_err = 0.0;   // 1-sigma fit error
};

// Storage T1 measurements with ancilla readouts repeated every `interval`
// during the delay; per-readout demolition shortens the fitted lifetime.
std::vector<QndPoint> qnd_experiment(const SystemParams& params,
                                     const std::vector<double>& intervals,
                                     long trials, uint64_t seed, int threads);

struct PreparationBelief {
  std::vector<double> belief;        // P(n | all checks passed), normalized
  double acceptance_probability = 0.0;
};

// Heralded preparation recursion P_{t+1}(n') = sum_n P_t(n) E_n T(n->n'),
// starting from mass 1-initial_error on target_n with the remainder spread
// over target_n +- 1 in proportion to the one-cycle loss/gain probabilities.
// check_pass[n] is the probability that state n passes one check.
PreparationBelief herald_preparation(int target_n, int num_checks,
                                     const std::vector<double>& check_pass,
                                     const TransitionMatrix& transition,
                                     double initial_error);

}  // namespace rsim

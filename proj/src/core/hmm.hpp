#pragma once

#include <array>
#include <deque>
#include <functional>
#include <span>
#include <vector>

#include "core/codes.hpp"
#include "core/markov.hpp"

namespace rsim {

enum class Outcome : uint8_t { NoFlip = 0, Flip = 1 };
enum class LogicalOutcome : uint8_t { ZeroL = 0, OneL = 1 };

// Per-hidden-state outcome probabilities for one ancilla readout. Row n holds
// {P(no-flip | n), P(flip | n)}.
class EmissionMatrix {
 public:
  // delta_in: error probability for n in S (flip expected), delta_out: error
  // probability for n outside S. Both must lie in [0, 0.5).
  static EmissionMatrix lumped(const CodeSpec& code, double delta_in,
                               double delta_out, int n_max);
  // Full per-n constructor; each row must sum to 1 within 1e-12.
  static EmissionMatrix from_rows(std::vector<std::array<double, 2>> rows);

  int n_max() const { return static_cast<int>(rows_.size()) - 1; }
  double prob(int n, Outcome o) const {
    return rows_[static_cast<size_t>(n)][static_cast<size_t>(o)];
  }

 private:
  explicit EmissionMatrix(std::vector<std::array<double, 2>> rows)
      : rows_(std::move(rows)) {}
  std::vector<std::array<double, 2>> rows_;
};

// Belief over the initial storage photon number.
struct PosteriorBelief {
  std::vector<double> p;  // index = photon number 0..n_max

  int n_max() const { return static_cast<int>(p.size()) - 1; }
  // Throws std::runtime_error unless non-negative and normalized to 1e-10.
  void validate() const;
};

// Prior implied by a code: 0.5 per logical state, amplitude^2 weighted.
PosteriorBelief code_prior(const CodeSpec& code, int n_max);

// Duration -> cycle transition matrix. Implementations are expected to cache;
// the same duration is requested many times.
using TransitionBuilder =
    std::function<const TransitionMatrix&(double duration)>;

// A memoizing TransitionBuilder over fixed (n_max, rates). References stay
// valid for the lifetime of the cache.
class CachedTransitions {
 public:
  CachedTransitions(int n_max, double kappa_down, double kappa_up);
  const TransitionMatrix& operator()(double duration);

 private:
  int n_max_;
  double kappa_down_, kappa_up_;
  std::deque<std::pair<double, TransitionMatrix>> cache_;
};

// Exact smoothed posterior over the initial hidden state n_0. The generative
// model is: n_0 ~ prior; for each cycle i, n_i ~ T(durations[i]) applied to
// n_{i-1}, then readouts[i] is emitted from n_i. durations[i] is that cycle's
// total duration (mapping plus readout/reset). Probabilities are renormalized
// every step, so sequences of hundreds of readouts stay well conditioned.
PosteriorBelief forward_backward(std::span<const Outcome> readouts,
                                 std::span<const double> durations,
                                 const PosteriorBelief& prior,
                                 const TransitionBuilder& transitions,
                                 const EmissionMatrix& emission);

// Verification oracle: the same posterior by explicit enumeration of all
// (n_max+1)^(N+1) hidden paths. Rejects instances above 1e7 paths.
PosteriorBelief brute_force_posterior(std::span<const Outcome> readouts,
                                      std::span<const double> durations,
                                      const PosteriorBelief& prior,
                                      const TransitionBuilder& transitions,
                                      const EmissionMatrix& emission);

// Sums posterior mass over each codeword's support; larger mass wins and an
// exact tie resolves to 0_L.
LogicalOutcome classify_mle(const PosteriorBelief& posterior,
                            const CodeSpec& code);

// Flip-majority -> 0_L (flip marks membership in S); tie -> 0_L.
LogicalOutcome majority_vote(std::span<const Outcome> readouts);

}  // namespace rsim

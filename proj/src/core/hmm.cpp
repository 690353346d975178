#include "core/hmm.hpp"

#include <cmath>
#include <stdexcept>

namespace rsim {

EmissionMatrix EmissionMatrix::lumped(const CodeSpec& code, double delta_in,
                                      double delta_out, int n_max) {
  if (!(delta_in >= 0.0 && delta_in < 0.5) ||
      !(delta_out >= 0.0 && delta_out < 0.5))
    throw std::invalid_argument(
        "EmissionMatrix: error probabilities must lie in [0, 0.5)");
  std::vector<std::array<double, 2>> rows(static_cast<size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    if (code.in_flip_set(n))
      rows[n] = {delta_in, 1.0 - delta_in};
    else
      rows[n] = {1.0 - delta_out, delta_out};
  }
  return EmissionMatrix(std::move(rows));
}

EmissionMatrix EmissionMatrix::from_rows(
    std::vector<std::array<double, 2>> rows) {
  if (rows.empty()) throw std::invalid_argument("EmissionMatrix: empty");
  for (const auto& r : rows) {
    if (r[0] < 0.0 || r[1] < 0.0 || std::abs(r[0] + r[1] - 1.0) > 1e-12)
      throw std::invalid_argument("EmissionMatrix: row does not sum to 1");
  }
  return EmissionMatrix(std::move(rows));
}

void PosteriorBelief::validate() const {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0))
      throw std::runtime_error("PosteriorBelief: negative probability");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-10)
    throw std::runtime_error("PosteriorBelief: not normalized");
}

PosteriorBelief code_prior(const CodeSpec& code, int n_max) {
  if (code.max_photon() > n_max)
    throw std::invalid_argument("code_prior: n_max too small for code");
  PosteriorBelief b;
  b.p.assign(static_cast<size_t>(n_max) + 1, 0.0);
  for (const auto& [n, w] : code.prior) b.p[static_cast<size_t>(n)] = w;
  b.validate();
  return b;
}

CachedTransitions::CachedTransitions(int n_max, double kappa_down,
                                     double kappa_up)
    : n_max_(n_max), kappa_down_(kappa_down), kappa_up_(kappa_up) {}

const TransitionMatrix& CachedTransitions::operator()(double duration) {
  for (const auto& [d, m] : cache_)
    if (d == duration) return m;
  cache_.emplace_back(
      duration, TransitionMatrix::build(n_max_, kappa_down_, kappa_up_, duration));
  return cache_.back().second;
}

namespace {

void check_inputs(std::span<const Outcome> readouts,
                  std::span<const double> durations,
                  const PosteriorBelief& prior) {
  if (readouts.empty())
    throw std::invalid_argument("posterior: need at least one readout");
  if (readouts.size() != durations.size())
    throw std::invalid_argument("posterior: readouts/durations length mismatch");
  prior.validate();
}

}  // namespace

PosteriorBelief forward_backward(std::span<const Outcome> readouts,
                                 std::span<const double> durations,
                                 const PosteriorBelief& prior,
                                 const TransitionBuilder& transitions,
                                 const EmissionMatrix& emission) {
  check_inputs(readouts, durations, prior);
  const int d = prior.n_max() + 1;

  // beta[i](n) = P(readouts i..N-1 | state before cycle i is n), renormalized
  // each step; the common factor cancels in the posterior.
  std::vector<double> beta(static_cast<size_t>(d), 1.0);
  std::vector<double> next(static_cast<size_t>(d));
  for (int i = static_cast<int>(readouts.size()) - 1; i >= 0; --i) {
    const TransitionMatrix& t = transitions(durations[static_cast<size_t>(i)]);
    if (t.dim() != d)
      throw std::invalid_argument("posterior: transition dimension mismatch");
    const Outcome o = readouts[static_cast<size_t>(i)];
    double scale = 0.0;
    for (int from = 0; from < d; ++from) {
      double acc = 0.0;
      for (int to = 0; to < d; ++to)
        acc += t(to, from) * emission.prob(to, o) * beta[static_cast<size_t>(to)];
      next[static_cast<size_t>(from)] = acc;
      scale += acc;
    }
    if (scale <= 0.0)
      throw std::invalid_argument(
          "posterior: zero likelihood, corrupt readout sequence");
    for (int n = 0; n < d; ++n) beta[static_cast<size_t>(n)] = next[static_cast<size_t>(n)] / scale;
  }

  PosteriorBelief post;
  post.p.assign(static_cast<size_t>(d), 0.0);
  double total = 0.0;
  for (int n = 0; n < d; ++n) {
    post.p[static_cast<size_t>(n)] = prior.p[static_cast<size_t>(n)] * beta[static_cast<size_t>(n)];
    total += post.p[static_cast<size_t>(n)];
  }
  if (total <= 0.0)
    throw std::invalid_argument(
        "posterior: zero likelihood, corrupt readout sequence");
  for (double& v : post.p) v /= total;
  post.validate();
  return post;
}

PosteriorBelief brute_force_posterior(std::span<const Outcome> readouts,
                                      std::span<const double> durations,
                                      const PosteriorBelief& prior,
                                      const TransitionBuilder& transitions,
                                      const EmissionMatrix& emission) {
  if (readouts.size() != durations.size())
    throw std::invalid_argument("posterior: readouts/durations length mismatch");
  prior.validate();
  const int d = prior.n_max() + 1;
  const size_t n_cycles = readouts.size();

  double paths = 1.0;
  for (size_t i = 0; i <= n_cycles; ++i) {
    paths *= d;
    if (paths > 1e7)
      throw std::invalid_argument("brute_force_posterior: instance too large");
  }

  PosteriorBelief post;
  post.p.assign(static_cast<size_t>(d), 0.0);
  if (n_cycles == 0) {
    post.p = prior.p;  // no evidence
    return post;
  }

  std::vector<int> path(n_cycles + 1, 0);
  std::vector<const TransitionMatrix*> ts;
  ts.reserve(n_cycles);
  for (size_t i = 0; i < n_cycles; ++i) ts.push_back(&transitions(durations[i]));

  double total = 0.0;
  while (true) {
    double w = prior.p[static_cast<size_t>(path[0])];
    for (size_t i = 0; i < n_cycles && w > 0.0; ++i) {
      w *= (*ts[i])(path[i + 1], path[i]);
      w *= emission.prob(path[i + 1], readouts[i]);
    }
    post.p[static_cast<size_t>(path[0])] += w;
    total += w;

    // odometer over hidden paths
    size_t k = 0;
    while (k <= n_cycles && ++path[k] == d) path[k++] = 0;
    if (k > n_cycles) break;
  }

  if (total <= 0.0)
    throw std::invalid_argument(
        "posterior: zero likelihood, corrupt readout sequence");
  for (double& v : post.p) v /= total;
  post.validate();
  return post;
}

LogicalOutcome classify_mle(const PosteriorBelief& posterior,
                            const CodeSpec& code) {
  posterior.validate();
  double mass0 = 0.0, mass1 = 0.0;
  for (int n = 0; n <= posterior.n_max(); ++n) {
    if (code.zero_supports(n)) mass0 += posterior.p[static_cast<size_t>(n)];
    if (code.one_supports(n)) mass1 += posterior.p[static_cast<size_t>(n)];
  }
  return mass1 > mass0 ? LogicalOutcome::OneL : LogicalOutcome::ZeroL;
}

LogicalOutcome majority_vote(std::span<const Outcome> readouts) {
  if (readouts.empty())
    throw std::invalid_argument("majority_vote: need at least one readout");
  size_t flips = 0;
  for (Outcome o : readouts)
    if (o == Outcome::Flip) ++flips;
  const size_t noflips = readouts.size() - flips;
  return flips >= noflips ? LogicalOutcome::ZeroL : LogicalOutcome::OneL;
}

}  // namespace rsim

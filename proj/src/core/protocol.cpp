#include "core/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "core/parallel.hpp"

namespace rsim {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// Ancilla relaxation cascade plus thermal excitation over a time window.
AncillaLevel evolve_ancilla(AncillaLevel level, double window,
                            const SystemParams& p, double t1_higher,
                            RandomStream& rng) {
  double remaining = window;
  while (remaining > 0.0) {
    double rate = 0.0;
    AncillaLevel next = level;
    switch (level) {
      case AncillaLevel::G:
        rate = p.ancilla_thermal_pop / p.ancilla_t1_ge;
        next = AncillaLevel::E;
        break;
      case AncillaLevel::E:
        rate = 1.0 / p.ancilla_t1_ge;
        next = AncillaLevel::G;
        break;
      case AncillaLevel::F:
        rate = 1.0 / p.ancilla_t1_ef;
        next = AncillaLevel::E;
        break;
      case AncillaLevel::H:
        rate = 1.0 / p.ancilla_t1_fh;
        next = AncillaLevel::F;
        break;
      case AncillaLevel::Higher:
        rate = 1.0 / t1_higher;
        next = AncillaLevel::H;
        break;
    }
    const double wait = rng.exponential(rate);
    if (wait >= remaining) break;
    remaining -= wait;
    level = next;
  }
  return level;
}

// Exact birth-death jump simulation of the storage photon number.
int evolve_storage(int n, double window, const SystemParams& p,
                   RandomStream& rng) {
  const double kd = p.storage_kappa_down();
  const double ku = p.storage_kappa_up;
  double remaining = window;
  while (remaining > 0.0) {
    const double loss = n * kd;
    const double gain = (n < p.n_max) ? (n + 1) * ku : 0.0;
    const double total = loss + gain;
    if (total <= 0.0) break;
    const double wait = rng.exponential(total);
    if (wait >= remaining) break;
    remaining -= wait;
    if (rng.uniform() * total < loss)
      --n;
    else
      ++n;
  }
  return n;
}

int draw_outcome(AncillaLevel level, const AncillaConfusion& c,
                 RandomStream& rng) {
  double row[4];
  for (int o = 0; o < 4; ++o) row[o] = c.prob(level, o);
  return rng.pick(row, 4);
}

}  // namespace

ErrorModel ErrorModel::lumped(const AncillaConfusion& confusion, double delta0,
                              double delta1, double leakage_prob) {
  confusion.validate();
  require(delta0 >= 0.0 && delta0 < 0.5 && delta1 >= 0.0 && delta1 < 0.5,
          "ErrorModel: deltas must lie in [0, 0.5)");
  require(leakage_prob >= 0.0 && leakage_prob < 1.0,
          "ErrorModel: leakage probability must lie in [0,1)");
  const double p_g_given_g = confusion.rows[0][0];
  const double p_g_given_e = confusion.rows[1][0];
  // vote is "no-flip" iff the readout reports g
  // delta0 = eps_in * P(g|g) + (1 - eps_in) * P(g|e)
  // delta1 = eps_out * (1 - P(g|e)) + (1 - eps_out) * (1 - P(g|g))
  const double denom = p_g_given_g - p_g_given_e;
  require(denom > 0.0, "ErrorModel: confusion matrix cannot separate g and e");
  ErrorModel m;
  m.confusion = confusion;
  m.eps_map_in = (delta0 - p_g_given_e) / denom;
  m.eps_map_out = (delta1 - (1.0 - p_g_given_g)) / denom;
  require(m.eps_map_in >= 0.0 && m.eps_map_in < 1.0,
          "ErrorModel: delta0 unreachable with this confusion matrix");
  require(m.eps_map_out >= 0.0 && m.eps_map_out < 1.0,
          "ErrorModel: delta1 unreachable with this confusion matrix");
  m.delta_in = delta0;
  m.delta_out = delta1;
  m.leakage_prob = leakage_prob;
  return m;
}

ErrorModel ErrorModel::defaults() {
  return lumped(AncillaConfusion::defaults(), 5.2e-2, 1.5e-3);
}

ResetResult reset_ancilla(AncillaLevel level, const ErrorModel& errors,
                          const SystemParams& params, RandomStream& rng) {
  ResetResult r;
  while (true) {
    ++r.iterations;
    if (r.iterations > 1000)
      throw std::runtime_error(
          "reset_ancilla: no ground-state record after 1000 iterations; "
          "check the confusion matrix and leakage settings");
    const int outcome = draw_outcome(level, errors.confusion, rng);
    if (r.iterations == 1) r.first_outcome = outcome;

    if (errors.ideal_reset) {
      level = AncillaLevel::G;
      break;
    }

    // The readout is projective: afterwards the ancilla holds the reported
    // level, except that levels above h are outside the readout's range and
    // stay where they are. Each readout can also kick the ancilla above h;
    // the record still shows the pre-leak level.
    if (level != AncillaLevel::Higher)
      level = static_cast<AncillaLevel>(outcome);
    if (rng.bernoulli(errors.leakage_prob)) level = AncillaLevel::Higher;

    if (outcome == 0 /* g */) break;

    // Conditional ladder driven by the record: h -> f -> e -> g. The pulses
    // are treated as exact swaps; whatever they miss is covered by the
    // relaxation sampling below. The leaked level is not addressed.
    if (level != AncillaLevel::Higher) level = AncillaLevel::G;

    level = evolve_ancilla(level, params.t_readout_reset, params,
                           errors.t1_higher, rng);
  }

  r.duration = r.iterations * params.t_readout_reset;
  r.stuck = r.iterations >= 5;
  r.final_level = level;
  return r;
}

bool ReadoutSequence::any_stuck() const {
  return std::any_of(stuck_flags.begin(), stuck_flags.end(),
                     [](bool b) { return b; });
}

void ReadoutSequence::validate(const SystemParams& params) const {
  const size_t n = outcomes.size();
  require(raw_ancilla_outcomes.size() == n && cycle_durations.size() == n &&
              reset_iterations.size() == n && stuck_flags.size() == n,
          "ReadoutSequence: list lengths differ");
  for (size_t i = 0; i < n; ++i) {
    const double expect =
        params.t_map + reset_iterations[i] * params.t_readout_reset;
    if (std::abs(cycle_durations[i] - expect) > 1e-9)
      throw std::runtime_error("ReadoutSequence: cycle duration bookkeeping");
    if (stuck_flags[i] != (reset_iterations[i] >= 5))
      throw std::runtime_error("ReadoutSequence: stuck flag mismatch");
  }
}

ReadoutSequence simulate_trial(const CodeSpec& code, int initial_n, int cycles,
                               const SystemParams& params,
                               const ErrorModel& errors, RandomStream& rng,
                               long trial_id) {
  require(initial_n >= 0 && initial_n <= params.n_max,
          "simulate_trial: initial photon number outside 0..n_max");
  require(cycles >= 1, "simulate_trial: need at least one cycle");

  ReadoutSequence seq;
  seq.trial_id = trial_id;
  seq.true_initial_n = initial_n;
  seq.outcomes.reserve(static_cast<size_t>(cycles));

  int n = initial_n;
  AncillaLevel ancilla = AncillaLevel::G;
  double pending_reset = 0.0;

  for (int i = 0; i < cycles; ++i) {
    // (1) storage evolves through the mapping window plus the previous
    //     cycle's reset
    n = evolve_storage(n, params.t_map + pending_reset, params, rng);

    // (2) S-controlled mapping with flip errors; the pulse acts on the g-e
    //     manifold only
    const bool want_flip = code.in_flip_set(n);
    const bool do_flip = want_flip ? !rng.bernoulli(errors.eps_map_in)
                                   : rng.bernoulli(errors.eps_map_out);
    if (do_flip) {
      if (ancilla == AncillaLevel::G)
        ancilla = AncillaLevel::E;
      else if (ancilla == AncillaLevel::E)
        ancilla = AncillaLevel::G;
    }

    // (3) per-readout demolition
    if (n >= 1 && rng.bernoulli(params.demolition_prob)) --n;

    // (4)+(5) the reset's first readout is the cycle's vote
    ResetResult reset = reset_ancilla(ancilla, errors, params, rng);
    seq.raw_ancilla_outcomes.push_back(reset.first_outcome);
    seq.outcomes.push_back(reset.first_outcome == 0 ? Outcome::NoFlip
                                                    : Outcome::Flip);
    seq.cycle_durations.push_back(params.t_map + reset.duration);
    seq.reset_iterations.push_back(reset.iterations);
    seq.stuck_flags.push_back(reset.stuck);
    ancilla = reset.final_level;
    pending_reset = reset.duration;
  }
  return seq;
}

namespace {

// Classifies every prefix of one readout sequence. The posterior over the
// initial photon number is tracked jointly with the current hidden state for
// each prior-support value, so extending the prefix by one cycle is O(d^2).
class PrefixClassifier {
 public:
  PrefixClassifier(const CodeSpec& code, const SystemParams& params,
                   const ErrorModel& errors)
      : code_(code),
        n_max_(params.n_max),
        cache_(params.n_max, effective_kappa_down(params),
               params.storage_kappa_up),
        emission_(EmissionMatrix::lumped(code, errors.delta_in,
                                         errors.delta_out, params.n_max)) {
    for (const auto& [n, w] : code.prior) {
      support_.push_back(n);
      weights_.push_back(w);
      is_zero_.push_back(code.zero_supports(n));
    }
    const int d = n_max_ + 1;
    for (int o = 0; o < 2; ++o) {
      emission_col_[o].resize(d);
      for (int n = 0; n < d; ++n)
        emission_col_[o](n) = emission_.prob(n, static_cast<Outcome>(o));
    }
  }

  // fills labels[k] for prefix length k+1, for both classifiers
  void classify(const ReadoutSequence& seq, std::vector<LogicalOutcome>& mle,
                std::vector<LogicalOutcome>& majority) {
    const int cycles = static_cast<int>(seq.outcomes.size());
    const int d = n_max_ + 1;
    const int s = static_cast<int>(support_.size());
    v_.resize(d, s);
    v_.setZero();
    for (int j = 0; j < s; ++j) v_(support_[static_cast<size_t>(j)], j) = 1.0;

    mle.resize(static_cast<size_t>(cycles));
    majority.resize(static_cast<size_t>(cycles));
    int flips = 0;

    for (int i = 0; i < cycles; ++i) {
      const TransitionMatrix& t = cache_(seq.cycle_durations[static_cast<size_t>(i)]);
      tmp_.noalias() = t.matrix() * v_;
      const Outcome o = seq.outcomes[static_cast<size_t>(i)];
      for (int n = 0; n < d; ++n) tmp_.row(n) *= emission_.prob(n, o);
      v_ = tmp_;
      if (v_.maxCoeff() < 1e-250) v_ *= 1e250;

      double mass0 = 0.0, mass1 = 0.0;
      for (int j = 0; j < s; ++j) {
        const double m = weights_[static_cast<size_t>(j)] * v_.col(j).sum();
        (is_zero_[static_cast<size_t>(j)] ? mass0 : mass1) += m;
      }
      mle[static_cast<size_t>(i)] =
          mass1 > mass0 ? LogicalOutcome::OneL : LogicalOutcome::ZeroL;

      if (o == Outcome::Flip) ++flips;
      majority[static_cast<size_t>(i)] = (2 * flips >= i + 1)
                                             ? LogicalOutcome::ZeroL
                                             : LogicalOutcome::OneL;
    }
  }

 private:
  const CodeSpec& code_;
  int n_max_;
  CachedTransitions cache_;
  EmissionMatrix emission_;
  std::vector<int> support_;
  std::vector<double> weights_;
  std::vector<char> is_zero_;
  Eigen::MatrixXd v_, tmp_;
};

struct Tally {
  // [classifier][state][votes]
  std::vector<long> err_all, err_kept;
  long stuck[2] = {0, 0};
  std::vector<std::pair<long, ReadoutSequence>> dumped;

  explicit Tally(int max_votes)
      : err_all(static_cast<size_t>(2 * 2 * max_votes), 0),
        err_kept(static_cast<size_t>(2 * 2 * max_votes), 0) {}

  static size_t at(int classifier, int state, int votes_idx, int max_votes) {
    return static_cast<size_t>((classifier * 2 + state) * max_votes + votes_idx);
  }
};

}  // namespace

ExperimentResult run_experiment(const CodeSpec& code, const SystemParams& params,
                                const ErrorModel& errors, const RunOptions& options,
                                long dump_trials) {
  require(options.trials_per_state >= 1, "run_experiment: trials must be >= 1");
  require(options.max_votes >= 1, "run_experiment: max_votes must be >= 1");
  require(code.max_photon() <= params.n_max,
          "run_experiment: n_max too small for code");

  const int max_votes = options.max_votes;
  const long trials = options.trials_per_state;
  const int workers = resolve_threads(options.threads, 2 * trials);
  std::vector<Tally> tallies(static_cast<size_t>(workers), Tally(max_votes));
  std::vector<std::unique_ptr<PrefixClassifier>> classifiers;
  classifiers.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w)
    classifiers.push_back(
        std::make_unique<PrefixClassifier>(code, params, errors));

  // support and weights per logical state for drawing the prepared Fock state
  std::array<std::vector<std::pair<int, double>>, 2> prep;
  for (const auto& c : code.zero_codeword)
    prep[0].emplace_back(c.n, c.amplitude * c.amplitude);
  for (const auto& c : code.one_codeword)
    prep[1].emplace_back(c.n, c.amplitude * c.amplitude);
  require(prep[0].size() <= 8 && prep[1].size() <= 8,
          "run_experiment: codeword support too large");

  parallel_for(0, 2 * trials, workers, [&](long index, int worker) {
    PrefixClassifier& classifier = *classifiers[static_cast<size_t>(worker)];
    const int state = index < trials ? 0 : 1;
    RandomStream rng(options.seed, static_cast<uint64_t>(index));

    // prepared Fock state within the logical codeword
    int initial_n = prep[static_cast<size_t>(state)][0].first;
    if (prep[static_cast<size_t>(state)].size() > 1) {
      double w[8];
      const auto& comps = prep[static_cast<size_t>(state)];
      for (size_t k = 0; k < comps.size(); ++k) w[k] = comps[k].second;
      initial_n = comps[static_cast<size_t>(rng.pick(
                            w, static_cast<int>(comps.size())))].first;
    }

    ReadoutSequence seq = simulate_trial(code, initial_n, max_votes, params,
                                         errors, rng, index);
    const bool stuck = seq.any_stuck();

    std::vector<LogicalOutcome> mle, majority;
    classifier.classify(seq, mle, majority);

    Tally& t = tallies[static_cast<size_t>(worker)];
    if (stuck) ++t.stuck[state];
    const LogicalOutcome truth =
        state == 0 ? LogicalOutcome::ZeroL : LogicalOutcome::OneL;
    for (int k = 0; k < max_votes; ++k) {
      const bool maj_err = majority[static_cast<size_t>(k)] != truth;
      const bool mle_err = mle[static_cast<size_t>(k)] != truth;
      if (maj_err) ++t.err_all[Tally::at(0, state, k, max_votes)];
      if (mle_err) ++t.err_all[Tally::at(1, state, k, max_votes)];
      if (!stuck) {
        if (maj_err) ++t.err_kept[Tally::at(0, state, k, max_votes)];
        if (mle_err) ++t.err_kept[Tally::at(1, state, k, max_votes)];
      }
    }
    if (index % trials < dump_trials)
      t.dumped.emplace_back(index, std::move(seq));
  });

  Tally total(max_votes);
  for (const auto& t : tallies) {
    for (size_t i = 0; i < total.err_all.size(); ++i) {
      total.err_all[i] += t.err_all[i];
      total.err_kept[i] += t.err_kept[i];
    }
    total.stuck[0] += t.stuck[0];
    total.stuck[1] += t.stuck[1];
    for (const auto& d : t.dumped) total.dumped.push_back(d);
  }
  std::sort(total.dumped.begin(), total.dumped.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  ExperimentResult result;
  result.total_trials = 2 * trials;
  result.stuck_trials = total.stuck[0] + total.stuck[1];
  for (auto& d : total.dumped) result.dumped.push_back(std::move(d.second));

  const auto& err = options.postselect_stuck ? total.err_kept : total.err_all;
  const long kept0 = options.postselect_stuck ? trials - total.stuck[0] : trials;
  const long kept1 = options.postselect_stuck ? trials - total.stuck[1] : trials;
  require(kept0 > 0 && kept1 > 0, "run_experiment: postselection kept nothing");

  for (int c = 0; c < 2; ++c) {
    if (c == 0 && !options.include_majority) continue;
    if (c == 1 && !options.include_mle) continue;
    for (int k = 0; k < max_votes; ++k) {
      InfidelityRow row;
      row.code = code.name;
      row.classifier = c == 0 ? "majority" : "mle";
      row.votes = k + 1;
      row.errors_0to1 = err[Tally::at(c, 0, k, max_votes)];
      row.errors_1to0 = err[Tally::at(c, 1, k, max_votes)];
      row.trials = kept0 + kept1;
      const double p0 = static_cast<double>(row.errors_0to1) / kept0;
      const double p1 = static_cast<double>(row.errors_1to0) / kept1;
      row.infidelity = p0 + p1;
      row.stderr_value = std::sqrt(p0 * (1.0 - p0) / kept0 +
                                   p1 * (1.0 - p1) / kept1);
      result.rows.push_back(row);
    }
  }
  return result;
}

std::vector<QndPoint> qnd_experiment(const SystemParams& params,
                                     const std::vector<double>& intervals,
                                     long trials, uint64_t seed, int threads) {
  require(!intervals.empty(), "qnd_experiment: need at least one interval");
  for (double t : intervals)
    require(t > 0.0, "qnd_experiment: intervals must be positive");
  require(trials >= 100, "qnd_experiment: need at least 100 trials");

  constexpr int kDelays = 8;
  std::vector<double> delays(kDelays);
  for (int j = 0; j < kDelays; ++j)
    delays[static_cast<size_t>(j)] = (j + 1) * 0.25 * params.storage_t1;

  const long jobs = static_cast<long>(intervals.size()) * kDelays;
  std::vector<long> survivors(static_cast<size_t>(jobs), 0);

  const int workers = resolve_threads(threads, jobs);
  parallel_for(0, jobs, workers, [&](long job, int) {
    const size_t i = static_cast<size_t>(job) / kDelays;
    const size_t j = static_cast<size_t>(job) % kDelays;
    const double tau_i = intervals[i];
    const double delay = delays[j];
    const long readouts = static_cast<long>(delay / tau_i);
    const double kappa = 1.0 / params.storage_t1;
    long alive = 0;
    RandomStream rng(seed, static_cast<uint64_t>(job));
    for (long t = 0; t < trials; ++t) {
      if (rng.exponential(kappa) <= delay) continue;
      // number of readouts survived before a demolition event
      long safe;
      if (params.demolition_prob <= 0.0) {
        safe = readouts;
      } else {
        safe = static_cast<long>(std::log1p(-rng.uniform()) /
                                 std::log1p(-params.demolition_prob));
      }
      if (safe >= readouts) ++alive;
    }
    survivors[static_cast<size_t>(job)] = alive;  // one writer per slot
  });

  std::vector<QndPoint> out;
  for (size_t i = 0; i < intervals.size(); ++i) {
    // least squares of ln(survival) against delay
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    std::vector<std::pair<double, double>> pts;
    for (int j = 0; j < kDelays; ++j) {
      const long alive = survivors[i * kDelays + static_cast<size_t>(j)];
      if (alive <= 0) continue;
      const double y = std::log(static_cast<double>(alive) / trials);
      const double x = delays[static_cast<size_t>(j)];
      pts.emplace_back(x, y);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++m;
    }
    require(m >= 3, "qnd_experiment: too few usable delay points");
    const double det = m * sxx - sx * sx;
    const double slope = (m * sxy - sx * sy) / det;
    const double intercept = (sy - slope * sx) / m;
    double ss = 0.0;
    for (const auto& [x, y] : pts) {
      const double r = y - (intercept + slope * x);
      ss += r * r;
    }
    const double var_slope = (ss / (m - 2)) / (sxx - sx * sx / m);
    QndPoint pt;
    pt.interval = intervals[i];
    pt.lifetime = -1.0 / slope;
    pt.lifetime_err = std::sqrt(std::max(var_slope, 0.0)) * pt.lifetime * pt.lifetime;
    out.push_back(pt);
  }
  return out;
}

PreparationBelief herald_preparation(int target_n, int num_checks,
                                     const std::vector<double>& check_pass,
                                     const TransitionMatrix& transition,
                                     double initial_error) {
  const int d = transition.dim();
  require(target_n >= 0 && target_n < d,
          "herald_preparation: target photon number outside 0..n_max");
  require(num_checks >= 0, "herald_preparation: num_checks must be >= 0");
  require(static_cast<int>(check_pass.size()) == d,
          "herald_preparation: check_pass must have n_max+1 entries");
  for (double e : check_pass)
    require(e >= 0.0 && e <= 1.0,
            "herald_preparation: pass probabilities must lie in [0,1]");
  require(initial_error >= 0.0 && initial_error < 1.0,
          "herald_preparation: initial_error must lie in [0,1)");

  std::vector<double> p(static_cast<size_t>(d), 0.0);
  // initial distribution: the preparation error populates the neighbours in
  // proportion to the one-cycle loss/gain probabilities out of the target
  double w_minus = target_n >= 1 ? transition(target_n - 1, target_n) : 0.0;
  double w_plus = target_n + 1 < d ? transition(target_n + 1, target_n) : 0.0;
  const double w_sum = w_minus + w_plus;
  if (w_sum <= 0.0) {
    p[static_cast<size_t>(target_n)] = 1.0;
  } else {
    p[static_cast<size_t>(target_n)] = 1.0 - initial_error;
    if (target_n >= 1)
      p[static_cast<size_t>(target_n - 1)] = initial_error * w_minus / w_sum;
    if (target_n + 1 < d)
      p[static_cast<size_t>(target_n + 1)] = initial_error * w_plus / w_sum;
  }

  std::vector<double> next(static_cast<size_t>(d), 0.0);
  for (int step = 0; step < num_checks; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    for (int n = 0; n < d; ++n) {
      const double mass = p[static_cast<size_t>(n)] * check_pass[static_cast<size_t>(n)];
      if (mass == 0.0) continue;
      for (int to = 0; to < d; ++to)
        next[static_cast<size_t>(to)] += mass * transition(to, n);
    }
    std::swap(p, next);
  }

  PreparationBelief out;
  double total = 0.0;
  for (double v : p) total += v;
  require(total > 0.0, "herald_preparation: acceptance probability is zero");
  out.acceptance_probability = total;
  out.belief.resize(static_cast<size_t>(d));
  for (int n = 0; n < d; ++n) out.belief[static_cast<size_t>(n)] = p[static_cast<size_t>(n)] / total;
  return out;
}

}  // namespace rsim

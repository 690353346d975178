// Acceptance suite: one pass/fail line per criterion, covering analytic
// agreement, measured-scale reproduction, classifier optimality, oracle
// equivalence, transmon scaling, shelving, pulse physics, the QND round trip,
// numerical hygiene and CLI determinism.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "core/codes.hpp"
#include "core/hmm.hpp"
#include "core/io.hpp"
#include "core/lindblad.hpp"
#include "core/markov.hpp"
#include "core/params.hpp"
#include "core/pipelines.hpp"
#include "core/protocol.hpp"
#include "core/theory.hpp"
#include "core/trajectory.hpp"
#include "oracles.hpp"

using namespace rsim;
namespace fs = std::filesystem;

namespace {

int g_failed_criteria = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("[criterion %2d] %s: %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  if (!pass) ++g_failed_criteria;
}

void note(const std::string& line) { std::printf("    %s\n", line.c_str()); }

struct VoteRow {
  double infidelity = 0.0;
  double stderr_value = 0.0;
};

// majority-vote infidelity per odd N from one matched-parameter run
std::map<int, VoteRow> matched_majority_run(int distance, long trials,
                                            int max_votes, uint64_t seed,
                                            int threads) {
  // Fixed cycle time tau with kappa*tau pinned to the measured effective
  // values. The full cycle is carried by the mapping window so that every
  // readout, including the first, sees one tau of evolution, exactly as the
  // closed form counts them.
  SystemParams p;
  const double tau = p.t_map + p.t_readout_reset;
  p.demolition_prob = 0.0;
  p.t_readout_reset = 1e-9;
  p.t_map = tau - p.t_readout_reset;
  p.storage_t1 = tau / 4.8e-3;
  p.storage_kappa_up = 2.7e-4 / tau;
  ErrorModel errors =
      ErrorModel::lumped(AncillaConfusion::perfect(), 5.2e-2, 1.5e-3, 0.0);
  errors.ideal_reset = true;

  RunOptions opt;
  opt.trials_per_state = trials;
  opt.max_votes = max_votes;
  opt.seed = seed;
  opt.threads = threads;
  opt.include_mle = false;
  auto result = run_experiment(find_code("fock-0-" + std::to_string(distance)),
                               p, errors, opt);
  std::map<int, VoteRow> rows;
  for (const auto& r : result.rows)
    if (r.classifier == "majority" && r.votes % 2 == 1)
      rows[r.votes] = {r.infidelity, r.stderr_value};
  return rows;
}

// exact infidelity of the discrete majority-vote chain at the same parameters
double exact_majority_infidelity(int distance, int votes) {
  SystemParams p;
  const double tau = p.t_map + p.t_readout_reset;
  const int n_max = p.n_max;
  auto t = TransitionMatrix::build(n_max, 4.8e-3 / tau, 2.7e-4 / tau, tau);
  const CodeSpec& code = find_code("fock-0-" + std::to_string(distance));
  std::vector<double> p_flip(static_cast<size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n)
    p_flip[static_cast<size_t>(n)] =
        code.in_flip_set(n) ? 1.0 - 5.2e-2 : 1.5e-3;
  const double err0 =
      1.0 - oracle::exact_vote_zero_prob(t.matrix(), p_flip, 0, votes);
  const double err1 =
      oracle::exact_vote_zero_prob(t.matrix(), p_flip, distance, votes);
  return err0 + err1;
}

void criterion_1(int threads) {
  const long trials = 1000000;
  bool pass = true;
  bool mc_matches_chain = true;
  int points = 0, failed_points = 0;
  for (int distance : {2, 3, 4, 5}) {
    auto rows = matched_majority_run(distance, trials, 15, 100 + distance,
                                     threads);
    for (const auto& [votes, row] : rows) {
      const auto theory = fock_infidelity(distance, votes, 4.8e-3, 2.7e-4,
                                          5.2e-2, 1.5e-3);
      if (theory.total <= 1e-5) continue;
      ++points;
      const double gap = std::abs(row.infidelity - theory.total);
      const bool ok = gap <= 3.0 * row.stderr_value;
      const double exact = exact_majority_infidelity(distance, votes);
      if (std::abs(row.infidelity - exact) > 3.0 * row.stderr_value)
        mc_matches_chain = false;
      if (!ok) {
        ++failed_points;
        pass = false;
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "L=%d N=%2d: mc %.4e vs eq4 %.4e (gap %.1f sigma; exact "
                      "chain %.4e)",
                      distance, votes, row.infidelity, theory.total,
                      gap / row.stderr_value, exact);
        note(buf);
      }
    }
  }
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "majority-vote MC vs closed-form totals, %d/%d gated points "
                "within 3 sigma at 1e6 trials/state",
                points - failed_points, points);
  report(1, pass, buf);
  if (!pass)
    note("MC agrees with the exact per-cycle chain at every point (" +
         std::string(mc_matches_chain ? "verified" : "VIOLATED") +
         "); the residual is the closed form's own leading-order truncation, "
         "which exceeds 3 sigma of 1e6 trials at these points");
}

struct CodeRun {
  std::map<int, VoteRow> mle;
  std::map<int, VoteRow> majority;
};

CodeRun full_default_run(const std::string& code, long trials, int max_votes,
                         uint64_t seed, int threads) {
  SystemParams p;
  ErrorModel errors = ErrorModel::defaults();
  RunOptions opt;
  opt.trials_per_state = trials;
  opt.max_votes = max_votes;
  opt.seed = seed;
  opt.threads = threads;
  auto result = run_experiment(find_code(code), p, errors, opt);
  CodeRun out;
  for (const auto& r : result.rows) {
    if (r.classifier == "mle")
      out.mle[r.votes] = {r.infidelity, r.stderr_value};
    else
      out.majority[r.votes] = {r.infidelity, r.stderr_value};
  }
  return out;
}

double min_infidelity(const std::map<int, VoteRow>& rows) {
  double best = 1.0;
  for (const auto& [votes, row] : rows) best = std::min(best, row.infidelity);
  return best;
}

void criteria_2_3(int threads) {
  const long trials = 1200000;
  const int max_votes = 25;
  const std::vector<std::string> codes = {"fock-0-2", "fock-0-3", "fock-0-4",
                                          "fock-0-5", "binomial-1",
                                          "binomial-2"};
  const std::map<std::string, double> targets = {{"fock-0-2", 2.33e-2},
                                                 {"fock-0-3", 9.6e-4},
                                                 {"fock-0-4", 1.3e-4},
                                                 {"fock-0-5", 5.8e-5}};
  std::map<std::string, CodeRun> runs;
  uint64_t seed = 200;
  for (const auto& code : codes)
    runs[code] = full_default_run(code, trials, max_votes, seed++, threads);

  // criterion 2: minima within x3 and strict distance ordering
  bool pass2 = true;
  std::vector<double> fock_minima;
  for (const auto& code : codes) {
    const double got = min_infidelity(runs[code].mle);
    auto it = targets.find(code);
    if (it != targets.end()) {
      fock_minima.push_back(got);
      const bool in_band = got >= it->second / 3.0 && got <= it->second * 3.0;
      if (!in_band) pass2 = false;
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s: mle minimum %.3e (measured %.3e, x3 band %s)",
                    code.c_str(), got, it->second, in_band ? "ok" : "MISSED");
      note(buf);
    } else {
      char buf[120];
      std::snprintf(buf, sizeof buf, "%s: mle minimum %.3e", code.c_str(), got);
      note(buf);
    }
  }
  for (size_t i = 0; i + 1 < fock_minima.size(); ++i)
    if (!(fock_minima[i] > fock_minima[i + 1])) pass2 = false;
  report(2, pass2,
         "measured minima within a factor of 3 and strictly ordered in "
         "code distance");

  // criterion 3: MLE monotone within 3 sigma and never worse than majority
  bool pass3 = true;
  for (const auto& code : codes) {
    const auto& mle = runs[code].mle;
    const auto& maj = runs[code].majority;
    for (int n = 1; n < max_votes; ++n) {
      const auto& a = mle.at(n);
      const auto& b = mle.at(n + 1);
      const double band =
          3.0 * std::sqrt(a.stderr_value * a.stderr_value +
                          b.stderr_value * b.stderr_value);
      if (b.infidelity > a.infidelity + band) {
        pass3 = false;
        note(code + ": mle infidelity rose at N=" + std::to_string(n + 1));
      }
    }
    for (int n = 1; n <= max_votes; ++n) {
      const auto& m = mle.at(n);
      const auto& v = maj.at(n);
      const double band =
          3.0 * std::sqrt(m.stderr_value * m.stderr_value +
                          v.stderr_value * v.stderr_value);
      if (m.infidelity > v.infidelity + band) {
        pass3 = false;
        note(code + ": mle worse than majority at N=" + std::to_string(n));
      }
    }
  }
  report(3, pass3,
         "MLE infidelity non-increasing in N (3 sigma) and <= majority vote "
         "everywhere, all six codes");
}

void criterion_4() {
  const CodeSpec& code = find_code("fock-0-2");
  RandomStream rng(400, 0);
  bool pass = true;
  double worst = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const int n_max = 2 + static_cast<int>(rng.next_u64() % 2);
    const int cycles = 1 + static_cast<int>(rng.next_u64() % 5);
    const double kd = rng.uniform() * 0.3;
    const double ku = rng.uniform() * 0.1;
    auto emission = EmissionMatrix::lumped(code, rng.uniform() * 0.45,
                                           rng.uniform() * 0.45, n_max);
    CachedTransitions cache(n_max, kd, ku);
    TransitionBuilder builder = std::ref(cache);
    PosteriorBelief prior;
    prior.p.assign(static_cast<size_t>(n_max) + 1, 1.0 / (n_max + 1));
    std::vector<Outcome> readouts;
    std::vector<double> durations;
    for (int i = 0; i < cycles; ++i) {
      readouts.push_back(rng.bernoulli(0.5) ? Outcome::Flip : Outcome::NoFlip);
      durations.push_back(rng.uniform() * 2.0);
    }
    auto fast = forward_backward(readouts, durations, prior, builder, emission);
    auto slow =
        brute_force_posterior(readouts, durations, prior, builder, emission);
    for (size_t n = 0; n < fast.p.size(); ++n)
      worst = std::max(worst, std::abs(fast.p[n] - slow.p[n]));
  }
  pass = worst < 1e-10;
  char buf[120];
  std::snprintf(buf, sizeof buf,
                "forward-backward vs path enumeration, 100 instances, worst "
                "deviation %.2e (tolerance 1e-10)",
                worst);
  report(4, pass, buf);
}

double fitted_loglog_slope(const std::vector<MisassignmentPoint>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& p : pts) {
    if (p.wrong < 10) continue;  // too noisy to weight in
    const double x = std::log(p.t_m);
    const double y = std::log(p.probability);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  if (m < 2) return std::nan("");
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

void criterion_5(int threads) {
  SystemParams p;
  ResponseTemplates tpl = ResponseTemplates::defaults();
  bool pass = true;

  // log-log slopes in the relaxation-limited windows
  struct SlopeJob {
    int level;
    double lo, hi;
    long trials;
    double expect;
  };
  const std::vector<SlopeJob> jobs = {{1, 4e-6, 10e-6, 400000, 1.0},
                                      {2, 5e-6, 14e-6, 1500000, 2.0},
                                      {3, 10e-6, 21e-6, 6000000, 3.0}};
  uint64_t seed = 500;
  for (const auto& job : jobs) {
    std::vector<double> grid;
    for (int i = 0; i < 5; ++i)
      grid.push_back(job.lo * std::pow(job.hi / job.lo, i / 4.0));
    const int levels[] = {job.level};
    auto pts = misassignment_curves(levels, grid, job.trials, p, tpl, seed++,
                                    threads);
    const double slope = fitted_loglog_slope(pts);
    const bool ok = std::abs(slope - job.expect) <= 0.3;
    if (!ok) pass = false;
    char buf[140];
    std::snprintf(buf, sizeof buf,
                  "level %d: fitted slope %.2f (expect %.0f +- 0.3)%s",
                  job.level, slope, job.expect, ok ? "" : " MISSED");
    note(buf);
  }

  // thermal floor of the g curve
  {
    std::vector<double> grid = {2e-6, 3e-6, 4e-6, 6e-6, 8e-6, 10e-6};
    const int levels[] = {0};
    auto pts =
        misassignment_curves(levels, grid, 2000000, p, tpl, seed++, threads);
    double minimum = 1.0;
    double t_at_min = grid[0];
    for (const auto& pt : pts) {
      if (pt.probability < minimum) {
        minimum = pt.probability;
        t_at_min = pt.t_m;
      }
    }
    const double thermal_rate = p.ancilla_thermal_pop / p.ancilla_t1_ge;
    const double floor_estimate = 0.5 * thermal_rate * t_at_min;
    const bool ok = minimum > 0.1 * floor_estimate && minimum < 10 * floor_estimate;
    if (!ok) pass = false;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "g floor: min %.2e at t_m %.1f us vs thermal estimate %.2e%s",
                  minimum, t_at_min * 1e6, floor_estimate, ok ? "" : " MISSED");
    note(buf);
  }

  // aggregate g/h misassignment minimum
  {
    std::vector<double> grid = {1.5e-6, 2e-6, 2.5e-6, 3e-6, 4e-6,
                                5e-6,   6e-6, 7e-6};
    const int levels[] = {0, 3};
    auto pts =
        misassignment_curves(levels, grid, 2000000, p, tpl, seed++, threads);
    double best = 1.0;
    double best_tm = 0.0;
    for (size_t i = 0; i < grid.size(); ++i) {
      double sum = 0.0;
      for (const auto& pt : pts)
        if (pt.t_m == grid[i]) sum += pt.probability;
      if (sum < best) {
        best = sum;
        best_tm = grid[i];
      }
    }
    const bool ok = best >= 4.0e-4 / 2 && best <= 4.0e-4 * 2;
    if (!ok) pass = false;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "min over t_m of P(S|h)+P(Sbar|g) = %.2e at %.1f us "
                  "(measured 4.0e-4, x2 band)%s",
                  best, best_tm * 1e6, ok ? "" : " MISSED");
    note(buf);
  }

  report(5, pass,
         "transmon misassignment scaling, thermal floor and aggregate "
         "minimum");
}

void criterion_6() {
  SystemParams p;
  std::vector<double> scales;
  for (double s = 0.0; s <= 0.9001; s += 0.05) scales.push_back(s);
  for (double s = 0.95; s <= 1.1001; s += 0.005) scales.push_back(s);
  for (double s : {1.2, 1.5, 2.0}) scales.push_back(s);
  auto curves =
      shelving_experiment(p, scales, AncillaConfusion::defaults());

  double min_unshelved = 1.0, min_shelved = 1.0;
  for (const auto& pt : curves.unshelved)
    min_unshelved = std::min(min_unshelved, 1.0 - pt.p_not_g);
  for (const auto& pt : curves.shelved)
    min_shelved = std::min(min_shelved, 1.0 - pt.p_not_g);

  const bool band_u = min_unshelved >= 1.2e-2 / 2 && min_unshelved <= 1.2e-2 * 2;
  const bool band_s = min_shelved >= 1.4e-3 / 2 && min_shelved <= 1.4e-3 * 2;
  const double sigma =
      std::sqrt(min_unshelved * (1 - min_unshelved) / 1e6 +
                min_shelved * (1 - min_shelved) / 1e6);
  const bool separated = min_shelved < min_unshelved - 3.0 * sigma;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "Rabi minima: unshelved %.3e (target 1.2e-2%s), shelved %.3e "
                "(target 1.4e-3%s), separation %s3 sigma at 1e6 trials",
                min_unshelved, band_u ? "" : " MISSED", min_shelved,
                band_s ? "" : " MISSED", separated ? ">" : "<");
  report(6, band_u && band_s && separated, buf);
}

void criterion_7() {
  SystemParams p;
  auto ge = optimize_amplitude(default_ge_pulse(), p, level_state(3, 0), 1);
  auto rho_e = evolve(level_state(3, 0), &ge.optimized, p, 0.0, 5e-11);
  const double p_g = rho_e(0, 0).real();

  auto ef = optimize_amplitude(default_ef_pulse(), p, level_state(3, 1), 2);
  auto rho_shelved = evolve(rho_e, &ef.optimized, p, 0.0, 5e-11);
  const double p_g_shelved = rho_shelved(0, 0).real();

  auto pops = rate_equation({rho_shelved(0, 0).real(), rho_shelved(1, 1).real(),
                             rho_shelved(2, 2).real()},
                            0.5 * p.t_readout_reset, p);
  const double p_g_meas = pops[0];

  auto in2 = [](double v, double target) {
    return v >= target / 2 && v <= target * 2;
  };
  const bool ordered = p_g <= p_g_shelved && p_g_shelved <= p_g_meas;
  const bool pass = in2(p_g, 3.7e-4) && in2(p_g_shelved, 7.2e-4) &&
                    in2(p_g_meas, 9.7e-4) && ordered;
  char buf[220];
  std::snprintf(buf, sizeof buf,
                "P_g %.2e (3.7e-4), shelved %.2e (7.2e-4), mid-measurement "
                "%.2e (9.7e-4), ordering %s; all x2 bands %s",
                p_g, p_g_shelved, p_g_meas, ordered ? "ok" : "VIOLATED",
                pass ? "ok" : "MISSED");
  report(7, pass, buf);
}

void criterion_8(int threads) {
  // exact model data: machine-precision recovery
  const double tau0 = 1.01e-3, pd = 2e-4;
  std::vector<double> intervals = {1e-6, 2e-6, 5e-6, 1e-5, 2e-5, 5e-5};
  std::vector<double> exact_lifetimes;
  for (double ti : intervals)
    exact_lifetimes.push_back(1.0 / (1.0 / tau0 + pd / ti));
  auto exact_fit = fit_qnd(intervals, exact_lifetimes);
  const bool exact_ok =
      std::abs(exact_fit.demolition_prob - pd) < 1e-12 &&
      std::abs(exact_fit.tau0 - tau0) < 1e-12;

  // Monte Carlo round trip
  SystemParams p;
  p.storage_t1 = tau0;
  p.demolition_prob = pd;
  p.storage_kappa_up = 0.0;
  auto points = qnd_experiment(p, intervals, 600000, 800, threads);
  std::vector<double> lifetimes;
  for (const auto& pt : points) lifetimes.push_back(pt.lifetime);
  auto fit = fit_qnd(intervals, lifetimes);
  const double pull =
      std::abs(fit.demolition_prob - pd) / std::max(fit.demolition_err, 1e-12);
  const bool mc_ok = pull <= 3.0;

  char buf[200];
  std::snprintf(buf, sizeof buf,
                "exact-data recovery %s; MC recovery P_D %.3e +- %.1e "
                "(truth 2e-4, pull %.1f sigma)",
                exact_ok ? "machine precision" : "FAILED",
                fit.demolition_prob, fit.demolition_err, pull);
  report(8, exact_ok && mc_ok, buf);
}

void criterion_9() {
  bool pass = true;

  // density-matrix tolerances hold through a pulse
  SystemParams p;
  PulseParams pulse = default_ge_pulse();
  try {
    TrajectorySink sink = [](double, const Eigen::MatrixXcd& rho) {
      check_density_matrix(rho);
    };
    evolve(level_state(3, 0), &pulse, p, 0.0, 5e-11, sink, 8);
  } catch (const std::exception& e) {
    pass = false;
    note(std::string("density-matrix tolerance violated: ") + e.what());
  }

  // RK4 convergence ratio ~16 on dt halving
  auto run = [&](double dt) {
    return evolve(level_state(3, 0), &pulse, p, 0.0, dt)(1, 1).real();
  };
  const double e1 = std::abs(run(0.8e-10) - run(0.4e-10));
  const double e2 = std::abs(run(0.4e-10) - run(0.2e-10));
  const double ratio = e1 / e2;
  if (!(ratio > 10.0 && ratio < 25.0)) pass = false;

  // column stochasticity across a parameter sweep
  double worst = 0.0;
  for (double kd : {0.0, 1e-3, 4.8e-3, 0.2}) {
    for (double ku : {0.0, 2.7e-4, 0.05}) {
      auto t = TransitionMatrix::build(10, kd, ku, 1.0);
      for (int from = 0; from <= 10; ++from) {
        double sum = 0.0;
        for (int to = 0; to <= 10; ++to) sum += t(to, from);
        worst = std::max(worst, std::abs(sum - 1.0));
      }
    }
  }
  if (worst > 1e-12) pass = false;

  char buf[180];
  std::snprintf(buf, sizeof buf,
                "RK4 halving ratio %.1f (expect ~16); worst column-sum "
                "deviation %.1e (tolerance 1e-12); density tolerances held",
                ratio, worst);
  report(9, pass, buf);
}

void criterion_10(const std::string& cli) {
  auto run_cli = [&](const std::string& args) {
    const std::string cmd = cli + " " + args + " >/dev/null 2>&1";
    return WEXITSTATUS(std::system(cmd.c_str()));
  };
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  };

  bool pass = true;
  fs::remove_all("acc_cli");
  if (run_cli("protocol run --code fock-0-4 --trials 30000 --N-max 9 --seed 7 "
              "--threads 1 --out acc_cli/p1") != 0 ||
      run_cli("protocol run --code fock-0-4 --trials 30000 --N-max 9 --seed 7 "
              "--threads 4 --out acc_cli/p4") != 0 ||
      run_cli("protocol run --code fock-0-4 --trials 30000 --N-max 9 --seed 7 "
              "--threads 4 --out acc_cli/p4b") != 0) {
    pass = false;
    note("protocol run invocation failed");
  } else {
    const std::string a = slurp("acc_cli/p1/infidelity.csv");
    pass = pass && !a.empty() && a == slurp("acc_cli/p4/infidelity.csv") &&
           a == slurp("acc_cli/p4b/infidelity.csv");
  }

  if (run_cli("trajectory curves --levels g,h --tm-grid 1e-6,2e-6 --trials "
              "20000 --seed 3 --threads 1 --out acc_cli/t1") != 0 ||
      run_cli("trajectory curves --levels g,h --tm-grid 1e-6,2e-6 --trials "
              "20000 --seed 3 --threads 4 --out acc_cli/t4") != 0) {
    pass = false;
    note("trajectory curves invocation failed");
  } else {
    const std::string a = slurp("acc_cli/t1/trajectory.csv");
    pass = pass && !a.empty() && a == slurp("acc_cli/t4/trajectory.csv");
  }

  if (run_cli("protocol qnd --intervals 2e-6,2e-5 --trials 20000 --seed 11 "
              "--threads 1 --out acc_cli/q1") != 0 ||
      run_cli("protocol qnd --intervals 2e-6,2e-5 --trials 20000 --seed 11 "
              "--threads 4 --out acc_cli/q4") != 0) {
    pass = false;
    note("protocol qnd invocation failed");
  } else {
    pass = pass && slurp("acc_cli/q1/qnd.csv") == slurp("acc_cli/q4/qnd.csv") &&
           slurp("acc_cli/q1/qnd_fit.csv") == slurp("acc_cli/q4/qnd_fit.csv");
  }
  fs::remove_all("acc_cli");

  report(10, pass,
         "CLI outputs byte-identical across repeated runs and thread counts");
}

}  // namespace

int main(int argc, char** argv) {
  const int threads = 0;  // hardware concurrency
  std::printf("acceptance suite\n");

  criterion_1(threads);
  criteria_2_3(threads);
  criterion_4();
  criterion_5(threads);
  criterion_6();
  criterion_7();
  criterion_8(threads);
  criterion_9();
  if (argc > 1) {
    criterion_10(argv[1]);
  } else {
    report(10, false, "CLI binary path not supplied");
  }

  if (g_failed_criteria == 0) {
    std::printf("all criteria passed\n");
  } else {
    std::printf("%d criterion(s) failed\n", g_failed_criteria);
  }
  return g_failed_criteria == 0 ? 0 : 1;
}

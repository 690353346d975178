#include "core/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "core/parallel.hpp"

namespace rsim {

namespace {

constexpr std::complex<double> kI(0.0, 1.0);

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

// decay/excitation rate and destination for each level
std::pair<double, int> level_rate(int level, const SystemParams& p) {
  switch (level) {
    case 0:
      return {p.ancilla_thermal_pop / p.ancilla_t1_ge, 1};
    case 1:
      return {1.0 / p.ancilla_t1_ge, 0};
    case 2:
      return {1.0 / p.ancilla_t1_ef, 1};
    case 3:
      return {1.0 / p.ancilla_t1_fh, 2};
    default:
      throw std::invalid_argument("level outside g..h");
  }
}

std::vector<detail::Segment> sample_segments(int initial_level, double t_max,
                                             const SystemParams& params,
                                             const ResponseTemplates& tpl,
                                             RandomStream& rng,
                                             std::vector<JumpEvent>* jumps) {
  std::vector<detail::Segment> segs;
  double t = 0.0;
  int level = initial_level;
  std::complex<double> mean = 0.0;  // resonator starts empty
  segs.push_back({t, level, mean});
  while (true) {
    auto [rate, next] = level_rate(level, params);
    const double wait = rng.exponential(rate);
    if (t + wait >= t_max) break;
    const double start = segs.back().start;
    mean = tpl.steady[static_cast<size_t>(level)] +
           (segs.back().mean_at_start - tpl.steady[static_cast<size_t>(level)]) *
               std::exp(-(t + wait - start) / tpl.t_rise);
    t += wait;
    if (jumps) jumps->push_back({t, level, next});
    level = next;
    segs.push_back({t, level, mean});
  }
  return segs;
}

// PSD-safe Cholesky; singular directions get zero columns.
void cholesky4(const double (&g)[4][4], double (&l)[4][4]) {
  double scale = 0.0;
  for (int i = 0; i < 4; ++i) scale = std::max(scale, g[i][i]);
  const double tol = scale * 1e-12 + 1e-300;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) l[i][j] = 0.0;
  for (int j = 0; j < 4; ++j) {
    double d = g[j][j];
    for (int k = 0; k < j; ++k) d -= l[j][k] * l[j][k];
    if (d <= tol) continue;  // degenerate direction
    l[j][j] = std::sqrt(d);
    for (int i = j + 1; i < 4; ++i) {
      double v = g[i][j];
      for (int k = 0; k < j; ++k) v -= l[i][k] * l[j][k];
      l[i][j] = v / l[j][j];
    }
  }
}

// Gram contributions of one mean-signal segment restricted to samples in
// (t_lo, t_hi]. The mean inside a segment starting at `a` with level P is
// mu(t) = P + C exp(-(t-a)/tau), so mu - zbar_s is a constant plus a decaying
// exponential and all sample sums reduce to geometric series.
struct SegmentWindow {
  std::complex<double> alpha[4];  // constant part per template
  std::complex<double> dexp[4];   // exponential coefficient per template
  double count = 0.0;             // number of samples
  double s1 = 0.0;                // sum exp(-u_k/tau)
  double s2 = 0.0;                // sum exp(-2 u_k/tau)
};

bool segment_window(const detail::Segment& seg, double seg_end,
                    const ResponseTemplates& tpl, double dt, double t_lo,
                    double t_hi, SegmentWindow& out) {
  const double lo = std::max(t_lo, seg.start);
  const double hi = std::min(t_hi, seg_end);
  if (hi <= lo) return false;
  const long k_first = static_cast<long>(std::floor(lo / dt + 1e-9)) + 1;
  const long k_last = static_cast<long>(std::floor(hi / dt + 1e-9));
  if (k_last < k_first) return false;

  const double tau = tpl.t_rise;
  const std::complex<double> p_level = tpl.steady[static_cast<size_t>(seg.level)];
  const std::complex<double> c = seg.mean_at_start - p_level;
  const double decay_to_start = std::exp(-seg.start / tau);
  for (int s = 0; s < 4; ++s) {
    out.alpha[s] = p_level - tpl.steady[static_cast<size_t>(s)];
    // zbar_s(t) = P_s (1 - exp(-t/tau)); the exp(-t/tau) piece re-expressed
    // in segment-local time u = t - start
    out.dexp[s] = c + tpl.steady[static_cast<size_t>(s)] * decay_to_start;
  }
  const double n = static_cast<double>(k_last - k_first + 1);
  const double u_first = k_first * dt - seg.start;
  const double r = std::exp(-dt / tau);
  const double r2 = r * r;
  const double e1 = std::exp(-u_first / tau);
  out.count = n;
  out.s1 = e1 * (1.0 - std::pow(r, n)) / (1.0 - r);
  out.s2 = e1 * e1 * (1.0 - std::pow(r2, n)) / (1.0 - r2);
  return true;
}

void accumulate_gram(const std::vector<detail::Segment>& segments,
                     double t_end, const ResponseTemplates& tpl, double dt,
                     double t_lo, double t_hi, double (&g)[4][4]) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g[i][j] = 0.0;
  for (size_t idx = 0; idx < segments.size(); ++idx) {
    const double seg_end =
        idx + 1 < segments.size() ? segments[idx + 1].start : t_end;
    SegmentWindow w;
    if (!segment_window(segments[idx], seg_end, tpl, dt, t_lo, t_hi, w))
      continue;
    for (int s = 0; s < 4; ++s) {
      for (int t = s; t < 4; ++t) {
        const double v =
            std::real(std::conj(w.alpha[s]) * w.alpha[t]) * w.count +
            std::real(std::conj(w.alpha[s]) * w.dexp[t] +
                      std::conj(w.dexp[s]) * w.alpha[t]) *
                w.s1 +
            std::real(std::conj(w.dexp[s]) * w.dexp[t]) * w.s2;
        g[s][t] += v;
        if (t != s) g[t][s] += v;
      }
    }
  }
}

}  // namespace

namespace detail {
double gram_entry(const std::vector<Segment>& segments, double t_end,
                  const ResponseTemplates& templates, double dt, double t_lo,
                  double t_hi, int s, int t) {
  double g[4][4];
  accumulate_gram(segments, t_end, templates, dt, t_lo, t_hi, g);
  return g[s][t];
}
}  // namespace detail

std::complex<double> ResponseTemplates::mean(int level, double t) const {
  return steady[static_cast<size_t>(level)] * (1.0 - std::exp(-t / t_rise));
}

void ResponseTemplates::validate() const {
  require(noise_std > 0.0, "ResponseTemplates: noise_std must be > 0");
  require(t_rise > 0.0, "ResponseTemplates: t_rise must be > 0");
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      require(std::abs(steady[static_cast<size_t>(a)] -
                       steady[static_cast<size_t>(b)]) > 1e-12,
              "ResponseTemplates: steady-state points must be distinct");
}

ResponseTemplates ResponseTemplates::defaults() {
  ResponseTemplates t;
  const double amplitude = 0.42;
  t.steady = {amplitude, amplitude * kI, -amplitude, -amplitude * kI};
  t.noise_std = 1.0;
  t.t_rise = 200e-9;
  t.validate();
  return t;
}

TrajectoryRecord simulate_record(int initial_level, const SystemParams& params,
                                 const ResponseTemplates& templates, double t_m,
                                 double dt, RandomStream& rng) {
  require(t_m > 0.0 && dt > 0.0, "simulate_record: t_m and dt must be > 0");
  const double steps = t_m / dt;
  const long m = std::lround(steps);
  require(std::abs(steps - static_cast<double>(m)) < 1e-9 && m >= 1,
          "simulate_record: t_m must be an integer number of samples");
  require(initial_level >= 0 && initial_level < 4,
          "simulate_record: level outside g..h");
  templates.validate();

  TrajectoryRecord rec;
  rec.true_initial_level = initial_level;
  rec.dt = dt;
  auto segments = sample_segments(initial_level, t_m, params, templates, rng,
                                  &rec.jumps);
  rec.samples.reserve(static_cast<size_t>(m));
  size_t seg = 0;
  for (long k = 1; k <= m; ++k) {
    const double t = k * dt;
    while (seg + 1 < segments.size() && segments[seg + 1].start < t) ++seg;
    const auto& s = segments[seg];
    const std::complex<double> p = templates.steady[static_cast<size_t>(s.level)];
    const std::complex<double> mu =
        p + (s.mean_at_start - p) * std::exp(-(t - s.start) / templates.t_rise);
    const std::complex<double> noise(rng.normal() * templates.noise_std,
                                     rng.normal() * templates.noise_std);
    rec.samples.push_back(mu + noise);
  }
  return rec;
}

int classify_record(const TrajectoryRecord& record,
                    const ResponseTemplates& templates, double t_m) {
  const long m = std::lround(t_m / record.dt);
  require(m >= 1 && m <= static_cast<long>(record.samples.size()),
          "classify_record: t_m outside the record");
  double dist[4] = {0, 0, 0, 0};
  for (long k = 1; k <= m; ++k) {
    const double t = k * record.dt;
    const std::complex<double> z = record.samples[static_cast<size_t>(k - 1)];
    for (int s = 0; s < 4; ++s) {
      const std::complex<double> d = z - templates.mean(s, t);
      dist[s] += std::norm(d);
    }
  }
  int best = 0;
  for (int s = 1; s < 4; ++s)
    if (dist[s] < dist[best]) best = s;  // ties keep the lower level
  return best;
}

std::vector<MisassignmentPoint> misassignment_curves(
    std::span<const int> levels, std::span<const double> tm_grid, long trials,
    const SystemParams& params, const ResponseTemplates& templates,
    uint64_t seed, int threads) {
  require(!levels.empty() && !tm_grid.empty(),
          "misassignment_curves: empty level or time grid");
  require(trials >= 1, "misassignment_curves: trials must be >= 1");
  templates.validate();
  for (int level : levels)
    require(level >= 0 && level < 4, "misassignment_curves: level outside g..h");
  for (size_t i = 0; i < tm_grid.size(); ++i) {
    require(tm_grid[i] > 0.0, "misassignment_curves: t_m must be > 0");
    if (i) require(tm_grid[i] > tm_grid[i - 1],
                   "misassignment_curves: grid must be increasing");
  }

  const double dt = 20e-9;
  const double t_max = tm_grid.back();
  const size_t n_levels = levels.size();
  const size_t n_tm = tm_grid.size();
  const long jobs = static_cast<long>(n_levels) * trials;
  const int workers = resolve_threads(threads, jobs);

  std::vector<std::vector<long>> wrong_by_worker(
      static_cast<size_t>(workers),
      std::vector<long>(n_levels * n_tm, 0));

  parallel_for(0, jobs, workers, [&](long job, int worker) {
    const size_t level_idx = static_cast<size_t>(job) / static_cast<size_t>(trials);
    const int level = levels[level_idx];
    RandomStream rng(seed, static_cast<uint64_t>(job));
    auto segments =
        sample_segments(level, t_max, params, templates, rng, nullptr);

    double gcum[4] = {0, 0, 0, 0};
    double y[4] = {0, 0, 0, 0};
    double prev = 0.0;
    auto& wrong = wrong_by_worker[static_cast<size_t>(worker)];
    for (size_t ti = 0; ti < n_tm; ++ti) {
      double g[4][4], l[4][4];
      accumulate_gram(segments, t_max, templates, dt, prev, tm_grid[ti], g);
      cholesky4(g, l);
      double z[4];
      for (double& v : z) v = rng.normal();
      for (int s = 0; s < 4; ++s) {
        double acc = 0.0;
        for (int k = 0; k <= s; ++k) acc += l[s][k] * z[k];
        y[s] += templates.noise_std * acc;
        gcum[s] += g[s][s];
      }
      int best = 0;
      double best_d = gcum[0] + 2.0 * y[0];
      for (int s = 1; s < 4; ++s) {
        const double d = gcum[s] + 2.0 * y[s];
        if (d < best_d) {
          best_d = d;
          best = s;
        }
      }
      const bool err = level == 0 ? best != 0 : best == 0;
      if (err) ++wrong[level_idx * n_tm + ti];
      prev = tm_grid[ti];
    }
  });

  std::vector<MisassignmentPoint> out;
  for (size_t li = 0; li < n_levels; ++li) {
    for (size_t ti = 0; ti < n_tm; ++ti) {
      long wrong = 0;
      for (const auto& w : wrong_by_worker) wrong += w[li * n_tm + ti];
      MisassignmentPoint pt;
      pt.t_m = tm_grid[ti];
      pt.level = levels[li];
      pt.trials = trials;
      pt.wrong = wrong;
      pt.probability = static_cast<double>(wrong) / trials;
      pt.stderr_value =
          std::sqrt(pt.probability * (1.0 - pt.probability) / trials);
      out.push_back(pt);
    }
  }
  return out;
}

std::vector<RabiPoint> shelving_rabi(std::span<const double> amplitude_scales,
                                     bool shelved,
                                     const PopulationSource& populations,
                                     const AncillaConfusion& confusion) {
  require(!amplitude_scales.empty(), "shelving_rabi: empty amplitude grid");
  confusion.validate();
  std::vector<RabiPoint> out;
  out.reserve(amplitude_scales.size());
  for (double a : amplitude_scales) {
    const std::array<double, 3> pops = populations(a, shelved);
    double p_g = 0.0;
    for (int s = 0; s < 3; ++s)
      p_g += pops[static_cast<size_t>(s)] * confusion.rows[static_cast<size_t>(s)][0];
    out.push_back({a, 1.0 - p_g});
  }
  return out;
}

}  // namespace rsim

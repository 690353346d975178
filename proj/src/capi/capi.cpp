#include "readoutsim.h"

#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "core/codes.hpp"
#include "core/io.hpp"
#include "core/params.hpp"
#include "core/pipelines.hpp"
#include "core/protocol.hpp"
#include "core/theory.hpp"
#include "core/trajectory.hpp"
#include "json.hpp"

#define RSIM_EXPORT __attribute__((visibility("default")))

namespace {

thread_local std::string g_last_error;

char* copy_out(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

template <typename Fn>
rsim_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return RSIM_OK;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return RSIM_ERR_INVALID;
  } catch (const std::ios_base::failure& e) {
    g_last_error = e.what();
    return RSIM_ERR_IO;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return RSIM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return RSIM_ERR_INTERNAL;
  }
}

rsim_status invalid(const char* what) {
  g_last_error = what;
  return RSIM_ERR_INVALID;
}

}  // namespace

struct rsim_params {
  rsim::SystemParams value;
};

struct rsim_code {
  rsim::CodeSpec value;
};

extern "C" {

RSIM_EXPORT const char* rsim_version(void) { return "0.1.0"; }

RSIM_EXPORT const char* rsim_last_error(void) { return g_last_error.c_str(); }

RSIM_EXPORT void rsim_string_free(char* s) { delete[] s; }

RSIM_EXPORT rsim_status rsim_params_create(rsim_params** out) {
  if (!out) return invalid("null output pointer");
  return guarded([&] { *out = new rsim_params{rsim::SystemParams{}}; });
}

RSIM_EXPORT rsim_status rsim_params_load(const char* path, rsim_params** out) {
  if (!out || !path) return invalid("null argument");
  return guarded([&] { *out = new rsim_params{rsim::params_from_file(path)}; });
}

RSIM_EXPORT rsim_status rsim_params_from_string(const char* text,
                                                rsim_params** out) {
  if (!out || !text) return invalid("null argument");
  return guarded(
      [&] { *out = new rsim_params{rsim::params_from_string(text)}; });
}

RSIM_EXPORT rsim_status rsim_params_set(rsim_params* p, const char* key,
                                        double value) {
  if (!p || !key) return invalid("null argument");
  return guarded([&] {
    rsim::SystemParams copy = p->value;
    rsim::params_set_key(copy, key, value);
    copy.validate();
    p->value = copy;
  });
}

RSIM_EXPORT rsim_status rsim_params_get(const rsim_params* p, const char* key,
                                        double* out) {
  if (!p || !key || !out) return invalid("null argument");
  return guarded([&] { *out = rsim::params_get_key(p->value, key); });
}

RSIM_EXPORT rsim_status rsim_params_to_string(const rsim_params* p,
                                              char** out) {
  if (!p || !out) return invalid("null argument");
  return guarded([&] { *out = copy_out(rsim::params_to_string(p->value)); });
}

RSIM_EXPORT rsim_status rsim_params_save(const rsim_params* p,
                                         const char* path) {
  if (!p || !path) return invalid("null argument");
  return guarded([&] { rsim::params_to_file(p->value, path); });
}

RSIM_EXPORT void rsim_params_free(rsim_params* p) { delete p; }

RSIM_EXPORT rsim_status rsim_code_lookup(const char* name, rsim_code** out) {
  if (!name || !out) return invalid("null argument");
  return guarded([&] { *out = new rsim_code{rsim::find_code(name)}; });
}

RSIM_EXPORT rsim_status rsim_code_list(char** out) {
  if (!out) return invalid("null argument");
  return guarded([&] {
    std::string names;
    for (const auto& c : rsim::builtin_codes()) {
      names += c.name;
      names += "\n";
    }
    *out = copy_out(names);
  });
}

RSIM_EXPORT rsim_status rsim_code_describe(const rsim_code* code,
                                           char** out_json) {
  if (!code || !out_json) return invalid("null argument");
  return guarded([&] {
    nlohmann::json j;
    j["name"] = code->value.name;
    auto word = [](const std::vector<rsim::FockComponent>& w) {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& c : w)
        arr.push_back({{"n", c.n}, {"amplitude", c.amplitude}});
      return arr;
    };
    j["zero_codeword"] = word(code->value.zero_codeword);
    j["one_codeword"] = word(code->value.one_codeword);
    j["flip_set"] = code->value.flip_set;
    j["distance"] = code->value.distance;
    nlohmann::json prior = nlohmann::json::object();
    for (const auto& [n, w] : code->value.prior)
      prior[std::to_string(n)] = w;
    j["prior"] = prior;
    *out_json = copy_out(j.dump(2) + "\n");
  });
}

RSIM_EXPORT void rsim_code_free(rsim_code* code) { delete code; }

RSIM_EXPORT rsim_status rsim_theory_csv(int distance, int votes_max,
                                        double kappa_down_tau,
                                        double kappa_up_tau, double delta0,
                                        double delta1, int include_even,
                                        char** out_csv) {
  if (!out_csv) return invalid("null argument");
  return guarded([&] {
    auto pts = rsim::theory_curves(distance, votes_max, kappa_down_tau,
                                   kappa_up_tau, delta0, delta1,
                                   include_even != 0);
    *out_csv = copy_out(rsim::csv_theory(pts));
  });
}

RSIM_EXPORT void rsim_protocol_options_init(rsim_protocol_options* opt) {
  if (!opt) return;
  opt->trials_per_state = 100000;
  opt->max_votes = 31;
  opt->seed = 0;
  opt->threads = 0;
  opt->postselect_stuck = 0;
  opt->delta0 = 5.2e-2;
  opt->delta1 = 1.5e-3;
  opt->leakage_prob = 8e-5;
  opt->ideal_reset = 0;
}

RSIM_EXPORT rsim_status rsim_protocol_run_csv(const rsim_params* p,
                                              const rsim_code* code,
                                              const rsim_protocol_options* opt,
                                              const char* dump_jsonl_path,
                                              long dump_trials,
                                              char** out_csv) {
  if (!p || !code || !opt || !out_csv) return invalid("null argument");
  return guarded([&] {
    rsim::ErrorModel errors = rsim::ErrorModel::lumped(
        rsim::AncillaConfusion::defaults(), opt->delta0, opt->delta1,
        opt->leakage_prob);
    errors.ideal_reset = opt->ideal_reset != 0;
    rsim::RunOptions run;
    run.trials_per_state = opt->trials_per_state;
    run.max_votes = opt->max_votes;
    run.seed = opt->seed;
    run.threads = opt->threads;
    run.postselect_stuck = opt->postselect_stuck != 0;
    const long dump = dump_jsonl_path ? dump_trials : 0;
    auto result = rsim::run_experiment(code->value, p->value, errors, run, dump);
    if (dump_jsonl_path) {
      std::ofstream out(dump_jsonl_path);
      if (!out)
        throw std::ios_base::failure(std::string("cannot write ") +
                                     dump_jsonl_path);
      out << rsim::jsonl_trials(result.dumped);
    }
    *out_csv = copy_out(rsim::csv_infidelity(result.rows));
  });
}

RSIM_EXPORT rsim_status rsim_protocol_qnd_csv(const rsim_params* p,
                                              const double* intervals,
                                              int n_intervals, long trials,
                                              uint64_t seed, int threads,
                                              char** out_table_csv,
                                              char** out_fit_csv) {
  if (!p || !intervals || n_intervals < 1 || !out_table_csv || !out_fit_csv)
    return invalid("null or empty argument");
  return guarded([&] {
    std::vector<double> iv(intervals, intervals + n_intervals);
    auto points = rsim::qnd_experiment(p->value, iv, trials, seed, threads);
    std::vector<double> taus, lifetimes;
    for (const auto& pt : points) {
      taus.push_back(pt.interval);
      lifetimes.push_back(pt.lifetime);
    }
    auto fit = rsim::fit_qnd(taus, lifetimes);
    *out_table_csv = copy_out(rsim::csv_qnd(points));
    *out_fit_csv = copy_out(rsim::csv_qnd_fit(fit));
  });
}

RSIM_EXPORT rsim_status rsim_hmm_classify_csv(const rsim_params* p,
                                              const rsim_code* code,
                                              const char* jsonl_path,
                                              double delta0, double delta1,
                                              char** out_csv) {
  if (!p || !code || !jsonl_path || !out_csv) return invalid("null argument");
  return guarded([&] {
    std::ifstream in(jsonl_path);
    if (!in)
      throw std::ios_base::failure(std::string("cannot open ") + jsonl_path);
    auto trials = rsim::parse_jsonl_trials(in);
    auto classified =
        rsim::classify_trials(trials, code->value, p->value, delta0, delta1);
    *out_csv = copy_out(rsim::csv_classified(classified));
  });
}

RSIM_EXPORT rsim_status rsim_trajectory_curves_csv(
    const rsim_params* p, const int* levels, int n_levels,
    const double* tm_grid, int n_tm, long trials, uint64_t seed, int threads,
    double template_amplitude, char** out_csv) {
  if (!p || !levels || n_levels < 1 || !tm_grid || n_tm < 1 || !out_csv)
    return invalid("null or empty argument");
  return guarded([&] {
    rsim::ResponseTemplates tpl = rsim::ResponseTemplates::defaults();
    if (template_amplitude > 0.0) {
      const double scale = template_amplitude / std::abs(tpl.steady[0]);
      for (auto& s : tpl.steady) s *= scale;
    }
    auto pts = rsim::misassignment_curves(
        std::span<const int>(levels, static_cast<size_t>(n_levels)),
        std::span<const double>(tm_grid, static_cast<size_t>(n_tm)), trials,
        p->value, tpl, seed, threads);
    *out_csv = copy_out(rsim::csv_trajectory(pts));
  });
}

RSIM_EXPORT rsim_status rsim_trajectory_dump_records(
    const rsim_params* p, int level, double t_m, long count, uint64_t seed,
    double template_amplitude, const char* bin_path, const char* sidecar_path) {
  if (!p || !bin_path || !sidecar_path) return invalid("null argument");
  if (count < 1) return invalid("need at least one record");
  return guarded([&] {
    rsim::ResponseTemplates tpl = rsim::ResponseTemplates::defaults();
    if (template_amplitude > 0.0) {
      const double scale = template_amplitude / std::abs(tpl.steady[0]);
      for (auto& s : tpl.steady) s *= scale;
    }
    std::vector<rsim::TrajectoryRecord> records;
    records.reserve(static_cast<size_t>(count));
    for (long i = 0; i < count; ++i) {
      rsim::RandomStream rng(seed, static_cast<uint64_t>(i));
      records.push_back(
          rsim::simulate_record(level, p->value, tpl, t_m, 20e-9, rng));
    }
    rsim::write_record_dump(bin_path, sidecar_path, records, t_m, level);
  });
}

RSIM_EXPORT rsim_status rsim_trajectory_shelve_csv(const rsim_params* p,
                                                   double scale_min,
                                                   double scale_max,
                                                   int n_scales,
                                                   char** out_csv) {
  if (!p || !out_csv) return invalid("null argument");
  if (n_scales < 2 || !(scale_max > scale_min) || scale_min < 0.0)
    return invalid("need an increasing amplitude grid with >= 2 points");
  return guarded([&] {
    std::vector<double> scales(static_cast<size_t>(n_scales));
    for (int i = 0; i < n_scales; ++i)
      scales[static_cast<size_t>(i)] =
          scale_min + (scale_max - scale_min) * i / (n_scales - 1);
    auto curves = rsim::shelving_experiment(p->value, scales,
                                            rsim::AncillaConfusion::defaults());
    *out_csv = copy_out(rsim::csv_shelve(curves.unshelved, curves.shelved));
  });
}

RSIM_EXPORT rsim_status rsim_pulse_scan_csv(const rsim_params* p,
                                            const char* transition,
                                            char** out_csv,
                                            double* best_scale) {
  if (!p || !transition || !out_csv) return invalid("null argument");
  return guarded([&] {
    const std::string which = transition;
    rsim::PulseParams pulse;
    int target;
    Eigen::MatrixXcd rho0;
    if (which == "ge") {
      pulse = rsim::default_ge_pulse();
      target = 1;
      rho0 = rsim::level_state(3, 0);
    } else if (which == "ef") {
      pulse = rsim::default_ef_pulse();
      target = 2;
      rho0 = rsim::level_state(3, 1);
    } else {
      throw std::invalid_argument("transition must be 'ge' or 'ef'");
    }
    auto scan = rsim::optimize_amplitude(pulse, p->value, rho0, target);
    if (best_scale) *best_scale = scan.best_scale;
    *out_csv = copy_out(rsim::csv_pulse_scan(scan));
  });
}

RSIM_EXPORT rsim_status rsim_pulse_trajectory_csv(const rsim_params* p,
                                                  const char* transition,
                                                  char** out_csv) {
  if (!p || !transition || !out_csv) return invalid("null argument");
  return guarded([&] {
    const std::string which = transition;
    rsim::PulseParams pulse;
    Eigen::MatrixXcd rho0;
    int target;
    if (which == "ge") {
      pulse = rsim::default_ge_pulse();
      rho0 = rsim::level_state(3, 0);
      target = 1;
    } else if (which == "ef") {
      pulse = rsim::default_ef_pulse();
      rho0 = rsim::level_state(3, 1);
      target = 2;
    } else {
      throw std::invalid_argument("transition must be 'ge' or 'ef'");
    }
    auto scan = rsim::optimize_amplitude(pulse, p->value, rho0, target);
    std::string csv = "t,p_g,p_e,p_f,coh_ge,coh_ef,coh_gf\n";
    rsim::TrajectorySink sink = [&](double t, const Eigen::MatrixXcd& rho) {
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", t,
                    rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real(),
                    std::abs(rho(0, 1)), std::abs(rho(1, 2)),
                    std::abs(rho(0, 2)));
      csv += buf;
    };
    rsim::evolve(rho0, &scan.optimized, p->value, 0.0, 5e-11, sink, 8);
    *out_csv = copy_out(csv);
  });
}

RSIM_EXPORT rsim_status rsim_prepare_csv(const rsim_params* p, int target_n,
                                         int num_checks,
                                         double check_pass_target,
                                         double check_pass_other,
                                         double initial_error,
                                         char** out_csv) {
  if (!p || !out_csv) return invalid("null argument");
  return guarded([&] {
    const auto& params = p->value;
    auto transition = rsim::TransitionMatrix::build(
        params.n_max, rsim::effective_kappa_down(params),
        params.storage_kappa_up, params.t_map + params.t_readout_reset);
    std::vector<double> pass(static_cast<size_t>(params.n_max) + 1,
                             check_pass_other);
    if (target_n >= 0 && target_n <= params.n_max)
      pass[static_cast<size_t>(target_n)] = check_pass_target;
    auto belief = rsim::herald_preparation(target_n, num_checks, pass,
                                           transition, initial_error);
    *out_csv = copy_out(rsim::csv_prepare(belief));
  });
}

}  // extern "C"

// Command-line front end. Links the shared C API only; all simulation lives
// behind readoutsim.h.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "readoutsim.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct CliError {
  int exit_code;
  std::string message;
};

[[noreturn]] void fail(rsim_status status) {
  const int code = status == RSIM_ERR_INTERNAL ? 2 : 1;
  throw CliError{code, rsim_last_error()};
}

void check(rsim_status status) {
  if (status != RSIM_OK) fail(status);
}

std::string take(char* s) {
  std::string out = s ? s : "";
  rsim_string_free(s);
  return out;
}

uint64_t fnv1a64(const std::string& bytes) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct ParamsHandle {
  rsim_params* p = nullptr;
  ~ParamsHandle() { rsim_params_free(p); }
};

struct CodeHandle {
  rsim_code* c = nullptr;
  ~CodeHandle() { rsim_code_free(c); }
};

// Global options shared by every subcommand.
struct Globals {
  std::string config_path;
  uint64_t seed = 0;
  long trials = -1;  // -1: subcommand default
  std::string out_dir;
  int threads = 0;
  bool postselect_stuck = false;
};

void load_params(const Globals& g, ParamsHandle& params) {
  std::string path = g.config_path;
  if (path.empty()) {
    if (const char* env = std::getenv("READOUTSIM_CONFIG")) path = env;
  }
  if (path.empty())
    check(rsim_params_create(&params.p));
  else
    check(rsim_params_load(path.c_str(), &params.p));
}

// Collects named CSV payloads and extra files, then either streams to stdout
// or writes everything plus a manifest under --out.
class OutputSet {
 public:
  OutputSet(std::string subcommand, const Globals& globals,
            std::vector<std::string> argv, const std::string& config_snapshot)
      : subcommand_(std::move(subcommand)),
        globals_(globals),
        argv_(std::move(argv)),
        config_snapshot_(config_snapshot),
        start_(std::chrono::steady_clock::now()) {}

  void add_csv(const std::string& name, const std::string& payload) {
    payloads_.emplace_back(name, payload);
  }
  // files written directly by the library (dumps); recorded in the manifest
  void add_external_file(const std::string& path) {
    external_.push_back(path);
  }

  // path for a library-written file when --out is set; empty disables it
  std::string out_path(const std::string& name) const {
    if (globals_.out_dir.empty()) return "";
    return (fs::path(globals_.out_dir) / name).string();
  }

  void finish() {
    if (globals_.out_dir.empty()) {
      for (size_t i = 0; i < payloads_.size(); ++i) {
        if (i) std::cout << "# --- " << payloads_[i].first << " ---\n";
        std::cout << payloads_[i].second;
      }
      std::cout.flush();
      return;
    }
    fs::create_directories(globals_.out_dir);
    json outputs = json::array();
    for (const auto& [name, payload] : payloads_) {
      const fs::path path = fs::path(globals_.out_dir) / name;
      atomic_write(path, payload);
      outputs.push_back({{"path", path.string()},
                         {"bytes", payload.size()},
                         {"fnv1a64", hex64(fnv1a64(payload))}});
      std::cerr << "wrote " << path.string() << "\n";
    }
    for (const auto& path : external_) {
      std::ifstream in(path, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      outputs.push_back({{"path", path},
                         {"bytes", buf.str().size()},
                         {"fnv1a64", hex64(fnv1a64(buf.str()))}});
      std::cerr << "wrote " << path << "\n";
    }

    json manifest;
    manifest["schema"] = "readoutsim-manifest/1";
    manifest["subcommand"] = subcommand_;
    manifest["argv"] = argv_;
    manifest["seed"] = globals_.seed;
    manifest["threads_requested"] = globals_.threads;
    manifest["config"] = config_snapshot_;
    std::string hashed = config_snapshot_;
    for (const auto& a : argv_) {
      hashed += '\0';
      hashed += a;
    }
    manifest["content_hash"] = hex64(fnv1a64(hashed));
    manifest["outputs"] = outputs;
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start_)
            .count();
    manifest["duration_seconds"] = seconds;
    const fs::path mpath =
        fs::path(globals_.out_dir) / (manifest_stem() + ".manifest.json");
    atomic_write(mpath, manifest.dump(2) + "\n");
    std::cerr << "wrote " << mpath.string() << "\n";
  }

 private:
  std::string manifest_stem() const {
    std::string s = subcommand_;
    for (char& c : s)
      if (c == ' ') c = '_';
    return s;
  }

  static void atomic_write(const fs::path& path, const std::string& payload) {
    const fs::path tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary);
      if (!out) throw CliError{1, "cannot write " + tmp.string()};
      out << payload;
    }
    fs::rename(tmp, path);
  }

  std::string subcommand_;
  const Globals& globals_;
  std::vector<std::string> argv_;
  std::string config_snapshot_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::pair<std::string, std::string>> payloads_;
  std::vector<std::string> external_;
};

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw CliError{1, "empty list: " + text};
  return out;
}

int level_from_name(const std::string& name) {
  if (name == "g") return 0;
  if (name == "e") return 1;
  if (name == "f") return 2;
  if (name == "h") return 3;
  throw CliError{1, "unknown level '" + name + "' (expected g, e, f or h)"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"simulation and inference toolkit for repeated readout of "
               "multilevel-encoded qubits"};
  app.require_subcommand(1);
  app.fallthrough(true);

  Globals globals;
  app.add_option("--config", globals.config_path,
                 "device parameter file (key = value); also honors "
                 "READOUTSIM_CONFIG");
  app.add_option("--seed", globals.seed, "base RNG seed")->capture_default_str();
  app.add_option("--trials", globals.trials,
                 "Monte Carlo trials (per prepared state where applicable)");
  app.add_option("--out", globals.out_dir,
                 "output directory; omit to stream CSV to stdout");
  app.add_option("--threads", globals.threads,
                 "worker threads (0: hardware concurrency)")
      ->capture_default_str();
  app.add_flag("--postselect-stuck", globals.postselect_stuck,
               "drop trials containing a stuck ancilla reset");

  // theory
  auto* theory = app.add_subcommand("theory", "analytic infidelity terms");
  int theory_distance = 5;
  int theory_nmax = 31;
  double theory_kdt = 4.8e-3, theory_kut = 2.7e-4;
  double theory_d0 = 5.2e-2, theory_d1 = 1.5e-3;
  bool theory_even = false;
  theory->add_option("--distance,--L", theory_distance, "code distance (>= 2)")
      ->capture_default_str();
  theory->add_option("--N-max", theory_nmax, "largest vote count")
      ->capture_default_str();
  theory->add_option("--kdt", theory_kdt, "kappa_down * tau")
      ->capture_default_str();
  theory->add_option("--kut", theory_kut, "kappa_up * tau")
      ->capture_default_str();
  theory->add_option("--delta0", theory_d0, "per-round error, state in S")
      ->capture_default_str();
  theory->add_option("--delta1", theory_d1, "per-round error, state outside S")
      ->capture_default_str();
  theory->add_flag("--include-even", theory_even,
                   "evaluate even vote counts as well");

  // hmm classify
  auto* hmm = app.add_subcommand("hmm", "posterior inference on sequences");
  hmm->require_subcommand(1);
  auto* classify = hmm->add_subcommand("classify",
                                       "classify recorded readout sequences");
  std::string classify_file;
  std::string classify_code = "fock-0-5";
  double classify_d0 = 5.2e-2, classify_d1 = 1.5e-3;
  classify->add_option("file", classify_file, "JSONL sequence file")
      ->required();
  classify->add_option("--code", classify_code, "bosonic code name")
      ->capture_default_str();
  classify->add_option("--delta0", classify_d0, "per-round error, state in S")
      ->capture_default_str();
  classify->add_option("--delta1", classify_d1,
                       "per-round error, state outside S")
      ->capture_default_str();

  // protocol run / qnd
  auto* protocol = app.add_subcommand("protocol", "repeated-readout protocol");
  protocol->require_subcommand(1);
  auto* run = protocol->add_subcommand("run", "infidelity vs vote count");
  std::string run_code = "fock-0-5";
  int run_nmax = 31;
  double run_d0 = 5.2e-2, run_d1 = 1.5e-3, run_leak = 8e-5;
  bool run_ideal_reset = false;
  long run_dump = 0;
  std::string run_dump_file;
  run->add_option("--code", run_code, "bosonic code name")
      ->capture_default_str();
  run->add_option("--N-max", run_nmax, "readout cycles per trial")
      ->capture_default_str();
  run->add_option("--delta0", run_d0, "per-cycle vote error, state in S")
      ->capture_default_str();
  run->add_option("--delta1", run_d1, "per-cycle vote error, state outside S")
      ->capture_default_str();
  run->add_option("--leakage", run_leak, "per-readout ancilla leakage above h")
      ->capture_default_str();
  run->add_flag("--ideal-reset", run_ideal_reset,
                "single-iteration reset with a fixed cycle time");
  run->add_option("--dump-trials", run_dump,
                  "sequences per prepared state to dump as JSONL");
  run->add_option("--dump-file", run_dump_file,
                  "JSONL path (default <out>/trials.jsonl)");

  auto* qnd = protocol->add_subcommand(
      "qnd", "storage lifetime vs readout repetition rate");
  std::string qnd_intervals = "1e-6,2e-6,5e-6,1e-5,2e-5,5e-5";
  qnd->add_option("--intervals", qnd_intervals,
                  "comma-separated readout intervals [s]")
      ->capture_default_str();

  // trajectory curves / shelve
  auto* trajectory =
      app.add_subcommand("trajectory", "dispersive readout records");
  trajectory->require_subcommand(1);
  auto* curves = trajectory->add_subcommand(
      "curves", "misassignment vs acquisition time");
  std::string curves_levels = "g,e,f,h";
  std::string curves_grid;
  double curves_tmin = 0.4e-6, curves_tmax = 8e-6;
  int curves_points = 12;
  bool curves_log = false;
  double curves_amplitude = 0.0;
  long curves_dump = 0;
  std::string curves_dump_level = "g";
  double curves_dump_tm = 2e-6;
  curves->add_option("--levels", curves_levels, "levels to prepare (g,e,f,h)")
      ->capture_default_str();
  curves->add_option("--tm-grid", curves_grid,
                     "explicit comma-separated acquisition times [s]");
  curves->add_option("--tm-min", curves_tmin, "grid start [s]")
      ->capture_default_str();
  curves->add_option("--tm-max", curves_tmax, "grid end [s]")
      ->capture_default_str();
  curves->add_option("--tm-points", curves_points, "grid size")
      ->capture_default_str();
  curves->add_flag("--tm-log", curves_log, "logarithmic grid spacing");
  curves->add_option("--amplitude", curves_amplitude,
                     "template amplitude in noise units (0: default)");
  curves->add_option("--dump-records", curves_dump,
                     "raw records to dump alongside the curves");
  curves->add_option("--dump-level", curves_dump_level,
                     "prepared level for the dump")
      ->capture_default_str();
  curves->add_option("--dump-tm", curves_dump_tm,
                     "record length for the dump [s]")
      ->capture_default_str();

  auto* shelve =
      trajectory->add_subcommand("shelve", "shelved gate-error calibration");
  double shelve_min = 0.0, shelve_max = 2.0;
  int shelve_points = 201;
  shelve->add_option("--scale-min", shelve_min, "amplitude scale range start")
      ->capture_default_str();
  shelve->add_option("--scale-max", shelve_max, "amplitude scale range end")
      ->capture_default_str();
  shelve->add_option("--points", shelve_points, "grid size")
      ->capture_default_str();

  // pulse
  auto* pulse = app.add_subcommand("pulse", "pi-pulse simulation");
  std::string pulse_transition = "ge";
  bool pulse_traj = false;
  pulse->add_option("--transition", pulse_transition, "'ge' or 'ef'")
      ->capture_default_str();
  pulse->add_flag("--trajectory", pulse_traj,
                  "emit the time-resolved populations of the optimized pulse");

  // prepare
  auto* prepare =
      app.add_subcommand("prepare", "heralded state-preparation belief");
  int prep_target = 5;
  int prep_checks = 3;
  double prep_pass_target = 0.948, prep_pass_other = 0.052;
  double prep_initial_error = 0.10;
  prepare->add_option("--target-n", prep_target, "photon number to prepare")
      ->capture_default_str();
  prepare->add_option("--checks", prep_checks, "number of passed checks")
      ->capture_default_str();
  prepare->add_option("--pass-target", prep_pass_target,
                      "check pass probability for the target state")
      ->capture_default_str();
  prepare->add_option("--pass-other", prep_pass_other,
                      "check pass probability for any other state")
      ->capture_default_str();
  prepare->add_option("--initial-error", prep_initial_error,
                      "pre-herald preparation error")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::vector<std::string> argv_copy(argv, argv + argc);

  try {
    ParamsHandle params;
    load_params(globals, params);
    const std::string config_snapshot = [&] {
      char* s = nullptr;
      check(rsim_params_to_string(params.p, &s));
      return take(s);
    }();

    auto make_outputs = [&](const std::string& name) {
      return OutputSet(name, globals, argv_copy, config_snapshot);
    };

    if (theory->parsed()) {
      auto outputs = make_outputs("theory");
      char* csv = nullptr;
      check(rsim_theory_csv(theory_distance, theory_nmax, theory_kdt,
                            theory_kut, theory_d0, theory_d1,
                            theory_even ? 1 : 0, &csv));
      outputs.add_csv("theory.csv", take(csv));
      outputs.finish();
    } else if (hmm->parsed() && classify->parsed()) {
      auto outputs = make_outputs("hmm_classify");
      CodeHandle code;
      check(rsim_code_lookup(classify_code.c_str(), &code.c));
      char* csv = nullptr;
      check(rsim_hmm_classify_csv(params.p, code.c, classify_file.c_str(),
                                  classify_d0, classify_d1, &csv));
      outputs.add_csv("classify.csv", take(csv));
      outputs.finish();
    } else if (protocol->parsed() && run->parsed()) {
      auto outputs = make_outputs("protocol_run");
      CodeHandle code;
      check(rsim_code_lookup(run_code.c_str(), &code.c));
      rsim_protocol_options opt;
      rsim_protocol_options_init(&opt);
      if (globals.trials > 0) opt.trials_per_state = globals.trials;
      opt.max_votes = run_nmax;
      opt.seed = globals.seed;
      opt.threads = globals.threads;
      opt.postselect_stuck = globals.postselect_stuck ? 1 : 0;
      opt.delta0 = run_d0;
      opt.delta1 = run_d1;
      opt.leakage_prob = run_leak;
      opt.ideal_reset = run_ideal_reset ? 1 : 0;

      std::string dump_path = run_dump_file;
      if (run_dump > 0 && dump_path.empty()) {
        dump_path = outputs.out_path("trials.jsonl");
        if (dump_path.empty())
          throw CliError{1, "--dump-trials needs --dump-file or --out"};
        std::filesystem::create_directories(globals.out_dir);
      }
      char* csv = nullptr;
      check(rsim_protocol_run_csv(params.p, code.c, &opt,
                                  run_dump > 0 ? dump_path.c_str() : nullptr,
                                  run_dump, &csv));
      outputs.add_csv("infidelity.csv", take(csv));
      if (run_dump > 0) outputs.add_external_file(dump_path);
      outputs.finish();
    } else if (protocol->parsed() && qnd->parsed()) {
      auto outputs = make_outputs("protocol_qnd");
      auto intervals = parse_double_list(qnd_intervals);
      const long trials = globals.trials > 0 ? globals.trials : 200000;
      char* table = nullptr;
      char* fit = nullptr;
      check(rsim_protocol_qnd_csv(params.p, intervals.data(),
                                  static_cast<int>(intervals.size()), trials,
                                  globals.seed, globals.threads, &table, &fit));
      outputs.add_csv("qnd.csv", take(table));
      outputs.add_csv("qnd_fit.csv", take(fit));
      outputs.finish();
    } else if (trajectory->parsed() && curves->parsed()) {
      auto outputs = make_outputs("trajectory_curves");
      std::vector<int> levels;
      {
        std::stringstream ss(curves_levels);
        std::string item;
        while (std::getline(ss, item, ','))
          if (!item.empty()) levels.push_back(level_from_name(item));
      }
      std::vector<double> grid;
      if (!curves_grid.empty()) {
        grid = parse_double_list(curves_grid);
      } else {
        if (curves_points < 2) throw CliError{1, "--tm-points must be >= 2"};
        for (int i = 0; i < curves_points; ++i) {
          const double f = static_cast<double>(i) / (curves_points - 1);
          grid.push_back(curves_log ? curves_tmin *
                                          std::pow(curves_tmax / curves_tmin, f)
                                    : curves_tmin +
                                          (curves_tmax - curves_tmin) * f);
        }
      }
      const long trials = globals.trials > 0 ? globals.trials : 200000;
      char* csv = nullptr;
      check(rsim_trajectory_curves_csv(
          params.p, levels.data(), static_cast<int>(levels.size()),
          grid.data(), static_cast<int>(grid.size()), trials, globals.seed,
          globals.threads, curves_amplitude, &csv));
      outputs.add_csv("trajectory.csv", take(csv));
      if (curves_dump > 0) {
        std::string bin = outputs.out_path("records.bin");
        std::string side = outputs.out_path("records.json");
        if (bin.empty())
          throw CliError{1, "--dump-records needs --out"};
        std::filesystem::create_directories(globals.out_dir);
        check(rsim_trajectory_dump_records(
            params.p, level_from_name(curves_dump_level), curves_dump_tm,
            curves_dump, globals.seed, curves_amplitude, bin.c_str(),
            side.c_str()));
        outputs.add_external_file(bin);
        outputs.add_external_file(side);
      }
      outputs.finish();
    } else if (trajectory->parsed() && shelve->parsed()) {
      auto outputs = make_outputs("trajectory_shelve");
      char* csv = nullptr;
      check(rsim_trajectory_shelve_csv(params.p, shelve_min, shelve_max,
                                       shelve_points, &csv));
      outputs.add_csv("shelve.csv", take(csv));
      outputs.finish();
    } else if (pulse->parsed()) {
      auto outputs = make_outputs("pulse");
      char* csv = nullptr;
      double best = 0.0;
      check(rsim_pulse_scan_csv(params.p, pulse_transition.c_str(), &csv,
                                &best));
      outputs.add_csv("pulse_scan.csv", take(csv));
      std::cerr << "optimal amplitude scale: " << best << "\n";
      if (pulse_traj) {
        char* traj = nullptr;
        check(rsim_pulse_trajectory_csv(params.p, pulse_transition.c_str(),
                                        &traj));
        outputs.add_csv("pulse_traj.csv", take(traj));
      }
      outputs.finish();
    } else if (prepare->parsed()) {
      auto outputs = make_outputs("prepare");
      char* csv = nullptr;
      check(rsim_prepare_csv(params.p, prep_target, prep_checks,
                             prep_pass_target, prep_pass_other,
                             prep_initial_error, &csv));
      outputs.add_csv("prepare.csv", take(csv));
      outputs.finish();
    } else {
      std::cerr << "error: missing subcommand\n";
      return 1;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

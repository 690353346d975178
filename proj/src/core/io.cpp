#include "core/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace rsim {

namespace {

using nlohmann::json;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

const char* level_name(int level) {
  static const char* names[4] = {"g", "e", "f", "h"};
  if (level < 0 || level > 3) throw std::invalid_argument("level outside g..h");
  return names[level];
}

const char* label_name(LogicalOutcome o) {
  return o == LogicalOutcome::ZeroL ? "0_L" : "1_L";
}

}  // namespace

std::string csv_theory(const std::vector<TheoryPoint>& points) {
  std::string out =
      "N,relaxation_term,excitation_term,vote_error_0,vote_error_1,total\n";
  for (const auto& p : points) {
    out += std::to_string(p.votes) + "," + num(p.breakdown.relaxation_term) +
           "," + num(p.breakdown.excitation_term) + "," +
           num(p.breakdown.vote_error_0) + "," + num(p.breakdown.vote_error_1) +
           "," + num(p.breakdown.total) + "\n";
  }
  return out;
}

std::string csv_infidelity(const std::vector<InfidelityRow>& rows) {
  std::string out =
      "code,classifier,N,errors_0to1,errors_1to0,trials,infidelity,stderr\n";
  for (const auto& r : rows) {
    out += r.code + "," + r.classifier + "," + std::to_string(r.votes) + "," +
           std::to_string(r.errors_0to1) + "," + std::to_string(r.errors_1to0) +
           "," + std::to_string(r.trials) + "," + num(r.infidelity) + "," +
           num(r.stderr_value) + "\n";
  }
  return out;
}

std::string csv_qnd(const std::vector<QndPoint>& points) {
  std::string out = "tau_i,tau_tot,tau_tot_err\n";
  for (const auto& p : points)
    out += num(p.interval) + "," + num(p.lifetime) + "," +
           num(p.lifetime_err) + "\n";
  return out;
}

std::string csv_qnd_fit(const QndFit& fit) {
  std::string out = "tau0,tau0_err,demolition_prob,demolition_err\n";
  out += num(fit.tau0) + "," + num(fit.tau0_err) + "," +
         num(fit.demolition_prob) + "," + num(fit.demolition_err) + "\n";
  return out;
}

std::string csv_trajectory(const std::vector<MisassignmentPoint>& points) {
  std::string out = "t_m,level,misassignment,stderr\n";
  for (const auto& p : points)
    out += num(p.t_m) + "," + level_name(p.level) + "," + num(p.probability) +
           "," + num(p.stderr_value) + "\n";
  return out;
}

std::string csv_shelve(const std::vector<RabiPoint>& unshelved,
                       const std::vector<RabiPoint>& shelved) {
  if (unshelved.size() != shelved.size())
    throw std::invalid_argument("csv_shelve: grids differ");
  std::string out = "amplitude_scale,p_not_g_unshelved,p_not_g_shelved\n";
  for (size_t i = 0; i < unshelved.size(); ++i) {
    if (unshelved[i].amplitude_scale != shelved[i].amplitude_scale)
      throw std::invalid_argument("csv_shelve: grids differ");
    out += num(unshelved[i].amplitude_scale) + "," + num(unshelved[i].p_not_g) +
           "," + num(shelved[i].p_not_g) + "\n";
  }
  return out;
}

std::string csv_pulse_scan(const AmplitudeScan& scan) {
  std::string out = "amplitude_scale,p_g,p_e,p_f\n";
  for (const auto& p : scan.points)
    out += num(p.amplitude_scale) + "," + num(p.p_g) + "," + num(p.p_e) + "," +
           num(p.p_f) + "\n";
  return out;
}

std::string csv_prepare(const PreparationBelief& belief) {
  std::string out =
      "# acceptance_probability = " + num(belief.acceptance_probability) + "\n";
  out += "n,probability\n";
  for (size_t n = 0; n < belief.belief.size(); ++n)
    out += std::to_string(n) + "," + num(belief.belief[n]) + "\n";
  return out;
}

std::string jsonl_trials(const std::vector<ReadoutSequence>& trials) {
  std::string out;
  for (const auto& t : trials) {
    json j;
    j["trial"] = t.trial_id;
    j["true_initial_n"] = t.true_initial_n;
    json outcomes = json::array();
    for (Outcome o : t.outcomes) outcomes.push_back(o == Outcome::Flip ? 1 : 0);
    j["outcomes"] = outcomes;
    j["raw_ancilla_outcomes"] = t.raw_ancilla_outcomes;
    j["durations"] = t.cycle_durations;
    j["reset_iterations"] = t.reset_iterations;
    json stuck = json::array();
    for (bool b : t.stuck_flags) stuck.push_back(b);
    j["stuck"] = stuck;
    out += j.dump();
    out += "\n";
  }
  return out;
}

std::vector<TrialRecord> parse_jsonl_trials(std::istream& in) {
  std::vector<TrialRecord> out;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw std::invalid_argument("trial file line " + std::to_string(lineno) +
                                  ": " + e.what());
    }
    TrialRecord r;
    r.trial_id = j.contains("trial") ? j["trial"].get<long>() : lineno - 1;
    if (j.contains("true_initial_n")) r.true_initial_n = j["true_initial_n"];
    if (!j.contains("outcomes") || !j.contains("durations"))
      throw std::invalid_argument("trial file line " + std::to_string(lineno) +
                                  ": needs 'outcomes' and 'durations'");
    for (int o : j["outcomes"].get<std::vector<int>>()) {
      if (o != 0 && o != 1)
        throw std::invalid_argument("trial file line " +
                                    std::to_string(lineno) +
                                    ": outcomes must be 0 or 1");
      r.outcomes.push_back(o ? Outcome::Flip : Outcome::NoFlip);
    }
    r.durations = j["durations"].get<std::vector<double>>();
    if (r.durations.size() != r.outcomes.size())
      throw std::invalid_argument("trial file line " + std::to_string(lineno) +
                                  ": outcomes/durations length mismatch");
    out.push_back(std::move(r));
  }
  return out;
}

std::string csv_classified(const std::vector<ClassifiedTrial>& trials) {
  std::string out = "trial,n0,probability,mle_label,majority_label\n";
  for (const auto& t : trials) {
    for (size_t n = 0; n < t.posterior.p.size(); ++n) {
      out += std::to_string(t.trial_id) + "," + std::to_string(n) + "," +
             num(t.posterior.p[n]) + "," + label_name(t.mle) + "," +
             label_name(t.majority) + "\n";
    }
  }
  return out;
}

void write_record_dump(const std::string& bin_path,
                       const std::string& sidecar_path,
                       const std::vector<TrajectoryRecord>& records,
                       double t_m, int level) {
  if (records.empty())
    throw std::invalid_argument("write_record_dump: no records");
  std::ofstream bin(bin_path, std::ios::binary);
  if (!bin) throw std::invalid_argument("cannot write " + bin_path);
  const size_t samples = records[0].samples.size();
  for (const auto& r : records) {
    if (r.samples.size() != samples)
      throw std::invalid_argument("write_record_dump: ragged records");
    for (const auto& z : r.samples) {
      const double iq[2] = {z.real(), z.imag()};
      bin.write(reinterpret_cast<const char*>(iq), sizeof iq);
    }
  }
  bin.close();

  json side;
  side["dt"] = records[0].dt;
  side["t_m"] = t_m;
  side["level"] = level_name(level);
  side["records"] = records.size();
  side["samples_per_record"] = samples;
  side["dtype"] = "float64";
  side["byte_order"] = "little";
  side["layout"] = "I,Q interleaved per sample, records concatenated";
  std::ofstream sidecar(sidecar_path);
  if (!sidecar) throw std::invalid_argument("cannot write " + sidecar_path);
  sidecar << side.dump(2) << "\n";
}

std::string fnv1a64_hex(const std::string& bytes) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace rsim

#pragma once

#include <cstdint>
#include <istream>
#include <string>
#include <vector>

#include "core/hmm.hpp"
#include "core/lindblad.hpp"
#include "core/protocol.hpp"
#include "core/theory.hpp"
#include "core/trajectory.hpp"

namespace rsim {

// CSV renderers. All of them emit a header row and one record per line with
// '\n' endings; numeric formatting is fixed so identical data produces
// identical bytes.

std::string csv_theory(const std::vector<TheoryPoint>& points);
std::string csv_infidelity(const std::vector<InfidelityRow>& rows);
std::string csv_qnd(const std::vector<QndPoint>& points);
std::string csv_qnd_fit(const QndFit& fit);
std::string csv_trajectory(const std::vector<MisassignmentPoint>& points);
std::string csv_shelve(const std::vector<RabiPoint>& unshelved,
                       const std::vector<RabiPoint>& shelved);
std::string csv_pulse_scan(const AmplitudeScan& scan);
std::string csv_prepare(const PreparationBelief& belief);

// One trial per line; outcomes are 0 (no-flip) / 1 (flip).
std::string jsonl_trials(const std::vector<ReadoutSequence>& trials);

struct TrialRecord {
  long trial_id = 0;
  int true_initial_n = -1;  // -1 when absent
  std::vector<Outcome> outcomes;
  std::vector<double> durations;
};

std::vector<TrialRecord> parse_jsonl_trials(std::istream& in);

struct ClassifiedTrial {
  long trial_id = 0;
  PosteriorBelief posterior;
  LogicalOutcome mle = LogicalOutcome::ZeroL;
  LogicalOutcome majority = LogicalOutcome::ZeroL;
};

std::string csv_classified(const std::vector<ClassifiedTrial>& trials);

// Raw record dump: little-endian float64 (I,Q) pairs, records concatenated,
// with a JSON sidecar describing the layout.
void write_record_dump(const std::string& bin_path,
                       const std::string& sidecar_path,
                       const std::vector<TrajectoryRecord>& records,
                       double t_m, int level);

// FNV-1a 64-bit content hash, rendered as 16 hex digits.
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace rsim

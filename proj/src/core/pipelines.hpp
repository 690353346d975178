#pragma once

// Experiment pipelines that span modules: pulse simulations feeding readout
// composition, and posterior classification of recorded sequences.

#include <span>
#include <vector>

#include "core/confusion.hpp"
#include "core/io.hpp"
#include "core/lindblad.hpp"
#include "core/params.hpp"
#include "core/trajectory.hpp"

namespace rsim {

struct ShelvingCurves {
  std::vector<RabiPoint> unshelved;
  std::vector<RabiPoint> shelved;
  double ge_best_scale = 1.0;  // refined g-e pi amplitude, for reference
  double ef_best_scale = 1.0;
};

// Sweep the g-e pulse amplitude, optionally append the optimized e-f shelving
// pulse, and compose the resulting populations with the readout confusion.
ShelvingCurves shelving_experiment(const SystemParams& params,
                                   std::span<const double> amplitude_scales,
                                   const AncillaConfusion& confusion);

// Smoothing posterior + both classifiers for recorded sequences.
std::vector<ClassifiedTrial> classify_trials(
    const std::vector<TrialRecord>& trials, const CodeSpec& code,
    const SystemParams& params, double delta0, double delta1);

}  // namespace rsim

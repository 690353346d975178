#include "core/pipelines.hpp"

#include <functional>

namespace rsim {

ShelvingCurves shelving_experiment(const SystemParams& params,
                                   std::span<const double> amplitude_scales,
                                   const AncillaConfusion& confusion) {
  const PulseParams ge_template = default_ge_pulse();
  const PulseParams ef_template = default_ef_pulse();
  auto ge_scan =
      optimize_amplitude(ge_template, params, level_state(3, 0), 1);
  auto ef_scan =
      optimize_amplitude(ef_template, params, level_state(3, 1), 2);
  const PulseParams ef_pi = ef_scan.optimized;

  PopulationSource source = [&](double scale,
                                bool shelved) -> std::array<double, 3> {
    PulseParams ge = ge_template;
    ge.amplitude = ge_template.amplitude * scale;
    Eigen::MatrixXcd rho = level_state(3, 0);
    if (ge.amplitude > 0.0) rho = evolve(rho, &ge, params, 0.0, 5e-11);
    if (shelved) rho = evolve(rho, &ef_pi, params, 0.0, 5e-11);
    return {rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real()};
  };

  ShelvingCurves out;
  out.ge_best_scale = ge_scan.best_scale;
  out.ef_best_scale = ef_scan.best_scale;
  out.unshelved = shelving_rabi(amplitude_scales, false, source, confusion);
  out.shelved = shelving_rabi(amplitude_scales, true, source, confusion);
  return out;
}

std::vector<ClassifiedTrial> classify_trials(
    const std::vector<TrialRecord>& trials, const CodeSpec& code,
    const SystemParams& params, double delta0, double delta1) {
  CachedTransitions cache(params.n_max, effective_kappa_down(params),
                          params.storage_kappa_up);
  TransitionBuilder builder = std::ref(cache);
  const EmissionMatrix emission =
      EmissionMatrix::lumped(code, delta0, delta1, params.n_max);
  const PosteriorBelief prior = code_prior(code, params.n_max);

  std::vector<ClassifiedTrial> out;
  out.reserve(trials.size());
  for (const auto& t : trials) {
    ClassifiedTrial c;
    c.trial_id = t.trial_id;
    c.posterior =
        forward_backward(t.outcomes, t.durations, prior, builder, emission);
    c.mle = classify_mle(c.posterior, code);
    c.majority = majority_vote(t.outcomes);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace rsim

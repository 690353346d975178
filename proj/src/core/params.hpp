#pragma once

#include <map>
#include <string>

namespace rsim {

// Measured cQED device parameters, SI units throughout (seconds, rad/s,
// dimensionless fractions). Defaults are the values of the system this
// toolkit models; every field can be overridden from a flat key=value
// config file.
struct SystemParams {
  // storage mode
  double storage_t1 = 0.99e-3;            // energy relaxation time [s]
  double storage_thermal_pop = 0.021;     // equilibrium excited fraction
  // Effective photon gain rate of the storage [1/s]. Fitted directly
  // (kappa_up * cycle_time = 2.7e-4 at the nominal 4.56 us cycle), not
  // derived from storage_thermal_pop.
  double storage_kappa_up = 2.7e-4 / (2.4e-6 + 2.16e-6);

  // ancilla transmon
  double ancilla_t1_ge = 51e-6;
  double ancilla_t1_ef = 47e-6;
  double ancilla_t1_fh = 40e-6;
  double ancilla_t2_ge = 74e-6;
  double ancilla_t2_gf = 57e-6;
  double ancilla_thermal_pop = 0.004;

  // Hamiltonian terms [rad/s]
  double anharmonicity = -2.0 * 3.14159265358979323846 * 137e6;
  double dispersive_shift_chi_st = -2.0 * 3.14159265358979323846 * 900e3;

  // protocol timing
  double t_map = 2.4e-6;                  // mapping pulse duration [s]
  double t_readout_reset = 2.16e-6;       // one readout+reset attempt [s]
  double demolition_prob = 2e-4;          // per-readout storage photon loss

  // Fock-space truncation for storage simulations and inference.
  int n_max = 10;

  // Documentation-only fields: stored and round-tripped, drive no
  // computation anywhere in the toolkit.
  double storage_freq = 2.0 * 3.14159265358979323846 * 4.5e9;
  double ancilla_freq = 2.0 * 3.14159265358979323846 * 4.2e9;
  double readout_freq = 2.0 * 3.14159265358979323846 * 9.33e9;
  double storage_kerr = -2.0 * 3.14159265358979323846 * 2.2e3;

  double storage_kappa_down() const { return 1.0 / storage_t1; }

  // Throws std::invalid_argument on any violated constraint: all times
  // strictly positive, populations in [0,1), T2 <= 2*T1 for the (ge) and
  // (gf)/(ef) pairs, n_max >= 1.
  void validate() const;
};

// Parse "key = value" text (one key per line, '#' comments). Unknown keys
// and unparsable values are rejected. Returns defaults overridden by the
// provided keys, validated.
SystemParams params_from_string(const std::string& text);
SystemParams params_from_file(const std::string& path);

// Serialize every field at 17 significant digits; params_from_string of the
// result reproduces the input bit-exactly.
std::string params_to_string(const SystemParams& p);
void params_to_file(const SystemParams& p, const std::string& path);

// Ordered key -> value view used by serialization and the C API.
std::map<std::string, double> params_as_map(const SystemParams& p);
void params_set_key(SystemParams& p, const std::string& key, double value);
double params_get_key(const SystemParams& p, const std::string& key);

// Effective storage loss rate seen by the repeated-readout protocol: natural
// decay plus the per-readout demolition spread over the nominal cycle time.
inline double effective_kappa_down(const SystemParams& p) {
  return 1.0 / p.storage_t1 +
         p.demolition_prob / (p.t_map + p.t_readout_reset);
}

}  // namespace rsim

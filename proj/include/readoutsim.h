/* readoutsim: simulation and inference toolkit for repeated readout of
 * multilevel-encoded superconducting qubits.
 *
 * C API of the shared library. All functions return RSIM_OK (0) on success;
 * on failure they return a nonzero status and leave a message retrievable via
 * rsim_last_error() (thread local). Strings returned through char** are
 * heap-allocated; release them with rsim_string_free(). Handles are opaque;
 * release them with the matching *_free().
 *
 * Every simulation entry point takes an explicit 64-bit seed and a thread
 * count; results are byte-identical for a fixed seed regardless of the
 * thread count.
 */
#ifndef READOUTSIM_H
#define READOUTSIM_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rsim_status {
  RSIM_OK = 0,
  RSIM_ERR_INVALID = 1, /* bad arguments, config or input files */
  RSIM_ERR_IO = 2,      /* filesystem failures */
  RSIM_ERR_INTERNAL = 3 /* violated invariant inside the library */
} rsim_status;

typedef struct rsim_params rsim_params;
typedef struct rsim_code rsim_code;

const char* rsim_version(void);
/* Message of the most recent failure on this thread ("" if none). */
const char* rsim_last_error(void);
void rsim_string_free(char* s);

/* ---- device parameters ------------------------------------------------- */

rsim_status rsim_params_create(rsim_params** out);
rsim_status rsim_params_load(const char* path, rsim_params** out);
rsim_status rsim_params_from_string(const char* text, rsim_params** out);
rsim_status rsim_params_set(rsim_params* p, const char* key, double value);
rsim_status rsim_params_get(const rsim_params* p, const char* key,
                            double* out);
/* Flat key = value form; reloads losslessly. */
rsim_status rsim_params_to_string(const rsim_params* p, char** out);
rsim_status rsim_params_save(const rsim_params* p, const char* path);
void rsim_params_free(rsim_params* p);

/* ---- bosonic codes ------------------------------------------------------ */

rsim_status rsim_code_lookup(const char* name, rsim_code** out);
/* Newline-separated names of the built-in codes. */
rsim_status rsim_code_list(char** out);
/* JSON description: codewords, flip set, distance, prior. */
rsim_status rsim_code_describe(const rsim_code* code, char** out_json);
void rsim_code_free(rsim_code* code);

/* ---- analytic infidelity theory ----------------------------------------- */

/* CSV: N,relaxation_term,excitation_term,vote_error_0,vote_error_1,total */
rsim_status rsim_theory_csv(int distance, int votes_max, double kappa_down_tau,
                            double kappa_up_tau, double delta0, double delta1,
                            int include_even, char** out_csv);

/* ---- repeated-readout protocol ------------------------------------------ */

typedef struct rsim_protocol_options {
  long trials_per_state;  /* per prepared logical state */
  int max_votes;
  uint64_t seed;
  int threads;            /* <= 0: hardware concurrency */
  int postselect_stuck;   /* drop trials containing a stuck reset */
  double delta0;          /* per-cycle vote error targets */
  double delta1;
  double leakage_prob;    /* per-readout ancilla leakage above h */
  int ideal_reset;        /* fixed single-iteration reset (theory matching) */
} rsim_protocol_options;

/* Sensible defaults: 1e5 trials, 31 votes, measured deltas, leakage 8e-5. */
void rsim_protocol_options_init(rsim_protocol_options* opt);

/* CSV: code,classifier,N,errors_0to1,errors_1to0,trials,infidelity,stderr.
 * dump_jsonl_path (optional, may be NULL): writes the first dump_trials
 * sequences per prepared state as JSON lines. */
rsim_status rsim_protocol_run_csv(const rsim_params* p, const rsim_code* code,
                                  const rsim_protocol_options* opt,
                                  const char* dump_jsonl_path,
                                  long dump_trials, char** out_csv);

/* CSV table tau_i,tau_tot,tau_tot_err plus a one-row fit CSV
 * tau0,tau0_err,demolition_prob,demolition_err. */
rsim_status rsim_protocol_qnd_csv(const rsim_params* p,
                                  const double* intervals, int n_intervals,
                                  long trials, uint64_t seed, int threads,
                                  char** out_table_csv, char** out_fit_csv);

/* ---- posterior classification of recorded sequences --------------------- */

/* Reads one trial per line ({"outcomes":[0/1...],"durations":[s...]}), runs
 * the smoothing classifier and majority vote with the code's prior.
 * CSV: trial,n0,probability,mle_label,majority_label. */
rsim_status rsim_hmm_classify_csv(const rsim_params* p, const rsim_code* code,
                                  const char* jsonl_path, double delta0,
                                  double delta1, char** out_csv);

/* ---- dispersive readout trajectories ------------------------------------ */

/* levels: 0..3 for g..h. CSV: t_m,level,misassignment,stderr.
 * template_amplitude <= 0 selects the calibrated default. */
rsim_status rsim_trajectory_curves_csv(const rsim_params* p, const int* levels,
                                       int n_levels, const double* tm_grid,
                                       int n_tm, long trials, uint64_t seed,
                                       int threads, double template_amplitude,
                                       char** out_csv);

/* Dump raw records (little-endian float64 I,Q pairs) plus a JSON sidecar. */
rsim_status rsim_trajectory_dump_records(const rsim_params* p, int level,
                                         double t_m, long count, uint64_t seed,
                                         double template_amplitude,
                                         const char* bin_path,
                                         const char* sidecar_path);

/* Rabi-style gate calibration curves composed from pulse simulations and the
 * readout confusion matrix.
 * CSV: amplitude_scale,p_not_g_unshelved,p_not_g_shelved. */
rsim_status rsim_trajectory_shelve_csv(const rsim_params* p, double scale_min,
                                       double scale_max, int n_scales,
                                       char** out_csv);

/* ---- pulse simulations --------------------------------------------------- */

/* transition: "ge" or "ef". CSV: amplitude_scale,p_g,p_e,p_f over the
 * amplitude scan; best_scale receives the refined optimum (may be NULL). */
rsim_status rsim_pulse_scan_csv(const rsim_params* p, const char* transition,
                                char** out_csv, double* best_scale);

/* Time-resolved populations and coherence magnitudes of one optimized pulse.
 * CSV: t,p_g,p_e,p_f,coh_ge,coh_ef,coh_gf. */
rsim_status rsim_pulse_trajectory_csv(const rsim_params* p,
                                      const char* transition, char** out_csv);

/* ---- heralded state preparation ------------------------------------------ */

/* Belief over the storage photon number after num_checks passed checks.
 * check_pass_target / check_pass_other: per-check pass probabilities for the
 * target and for every other number state. CSV: n,probability with the
 * acceptance probability in a leading comment line. */
rsim_status rsim_prepare_csv(const rsim_params* p, int target_n,
                             int num_checks, double check_pass_target,
                             double check_pass_other, double initial_error,
                             char** out_csv);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* READOUTSIM_H */

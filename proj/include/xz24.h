/*
 * xz24 — hybrid eigensolver based on ancilla-controlled time evolution and
 * discrete Fourier analysis of Q(t) = <ref| cos(H t) |ref>.
 *
 * C API over the C++ core. Conventions:
 *   - every fallible call returns xz24_status; on failure the thread-local
 *     message from xz24_last_error() describes what went wrong
 *   - objects are opaque handles created by xz24_*_…(…, out) constructors
 *     and released with the matching xz24_*_free (free functions accept NULL)
 *   - strings returned through char** are heap-allocated; release them with
 *     xz24_string_free
 *   - handles are immutable after construction and may be shared across
 *     threads; the XZ24_WORKERS environment variable caps internal
 *     parallelism
 */

#ifndef XZ24_H
#define XZ24_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32) && defined(XZ24_SHARED)
#ifdef XZ24_BUILDING
#define XZ24_API __declspec(dllexport)
#else
#define XZ24_API __declspec(dllimport)
#endif
#else
#define XZ24_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum xz24_status {
  XZ24_OK = 0,
  XZ24_ERR_INVALID_ARGUMENT = 1,
  XZ24_ERR_PARSE = 2,
  XZ24_ERR_DIMENSION = 3,
  XZ24_ERR_NUMERIC = 4,
  XZ24_ERR_IO = 5,
  XZ24_ERR_INTERNAL = 6
} xz24_status;

/* Sign labels used by eigen-estimates and sign-resolution pairs. */
typedef enum xz24_sign {
  XZ24_SIGN_POSITIVE = 0,
  XZ24_SIGN_NEGATIVE = 1,
  XZ24_SIGN_AMBIGUOUS = 2,
  XZ24_SIGN_UNKNOWN = 3
} xz24_sign;

XZ24_API const char* xz24_version(void);
/* Message of the most recent failure on the calling thread. */
XZ24_API const char* xz24_last_error(void);
XZ24_API void xz24_string_free(char* s);

typedef struct xz24_hamiltonian xz24_hamiltonian;
typedef struct xz24_reference xz24_reference;
typedef struct xz24_oracle xz24_oracle;
typedef struct xz24_overlap_table xz24_overlap_table;
typedef struct xz24_plan xz24_plan;
typedef struct xz24_signal xz24_signal;
typedef struct xz24_spectrum xz24_spectrum;
typedef struct xz24_estimates xz24_estimates;
typedef struct xz24_resolution xz24_resolution;
typedef struct xz24_recovery xz24_recovery;

/* ------------------------------------------------------------------ */
/* Pauli-string Hamiltonians                                          */

XZ24_API xz24_status xz24_hamiltonian_parse(const char* text,
                                            xz24_hamiltonian** out);
XZ24_API xz24_status xz24_hamiltonian_load(const char* path,
                                           xz24_hamiltonian** out);
XZ24_API void xz24_hamiltonian_free(xz24_hamiltonian* h);
XZ24_API uint32_t xz24_hamiltonian_n_qubits(const xz24_hamiltonian* h);
XZ24_API size_t xz24_hamiltonian_term_count(const xz24_hamiltonian* h);
/* Sum of |coefficients|; a safe upper bound on max |eigenvalue|. */
XZ24_API double xz24_hamiltonian_l1_norm_bound(const xz24_hamiltonian* h);
/* H + s0 * I; shifts every eigenvalue by exactly s0. */
XZ24_API xz24_status xz24_hamiltonian_offset(const xz24_hamiltonian* h, double s0,
                                             xz24_hamiltonian** out);
XZ24_API xz24_status xz24_hamiltonian_basis_expectation(const xz24_hamiltonian* h,
                                                        const char* bits,
                                                        double* out);
XZ24_API xz24_status xz24_hamiltonian_serialize(const xz24_hamiltonian* h,
                                                char** out);

/* ------------------------------------------------------------------ */
/* Reference states                                                   */

XZ24_API xz24_status xz24_reference_basis(const char* bits, xz24_reference** out);
XZ24_API xz24_status xz24_reference_weighted(const char* const* bitstrings,
                                             const double* amplitudes,
                                             size_t count, xz24_reference** out);
/* Text format: one "<bitstring> <amplitude>" per line, '#' comments. */
XZ24_API xz24_status xz24_reference_parse(const char* text, xz24_reference** out);
XZ24_API void xz24_reference_free(xz24_reference* ref);

/* ------------------------------------------------------------------ */
/* Exact oracle: dense diagonalization                                */

XZ24_API xz24_status xz24_oracle_create(const xz24_hamiltonian* h,
                                        xz24_oracle** out);
XZ24_API void xz24_oracle_free(xz24_oracle* oracle);
XZ24_API size_t xz24_oracle_count(const xz24_oracle* oracle);
/* Eigenvalues ascend; index 0 is the ground energy. */
XZ24_API double xz24_oracle_energy(const xz24_oracle* oracle, size_t i);

XZ24_API xz24_status xz24_oracle_overlaps(const xz24_oracle* oracle,
                                          const xz24_reference* ref,
                                          xz24_overlap_table** out);
XZ24_API void xz24_overlap_table_free(xz24_overlap_table* table);
XZ24_API size_t xz24_overlap_table_count(const xz24_overlap_table* table);
XZ24_API xz24_status xz24_overlap_table_entry(const xz24_overlap_table* table,
                                              size_t i, double* energy,
                                              double* weight);
/* sum_i w_i cos(E_i t) — the analytic signal. */
XZ24_API double xz24_overlap_table_signal(const xz24_overlap_table* table,
                                          double t);
XZ24_API xz24_status xz24_oracle_to_json(const xz24_hamiltonian* h,
                                         const xz24_overlap_table* table,
                                         char** out);

/* ------------------------------------------------------------------ */
/* Circuit simulation                                                 */

/* Full ancilla circuit at time t: p0/p1 are the ancilla collapse
 * probabilities, q = p1 - p0 = <ref| cos(H t) |ref>. */
XZ24_API xz24_status xz24_circuit_point(const xz24_hamiltonian* h,
                                        const xz24_reference* ref, double t,
                                        double* p0, double* p1, double* q);
/* Same q without the ancilla register (direct expectation). */
XZ24_API xz24_status xz24_expectation_point(const xz24_hamiltonian* h,
                                            const xz24_reference* ref, double t,
                                            double* q);
/* Finite-shot estimate of a point with exact probability p1. */
XZ24_API xz24_status xz24_shot_sample(double p1_exact, uint64_t shots,
                                      uint64_t seed, double* p0, double* p1,
                                      double* q);

/* ------------------------------------------------------------------ */
/* Sampling plans                                                     */

/* requested_interval <= 0 means "maximize"; shots == 0 means exact mode. */
XZ24_API xz24_status xz24_plan_make(double target_delta, double energy_bound,
                                    double requested_interval, uint64_t shots,
                                    int mirror_mode, xz24_plan** out);
XZ24_API void xz24_plan_free(xz24_plan* plan);
XZ24_API double xz24_plan_delta(const xz24_plan* plan);
XZ24_API double xz24_plan_interval(const xz24_plan* plan);
XZ24_API uint64_t xz24_plan_count(const xz24_plan* plan);
XZ24_API double xz24_plan_t_max(const xz24_plan* plan);
XZ24_API double xz24_plan_energy_bound(const xz24_plan* plan);
XZ24_API uint64_t xz24_plan_shots(const xz24_plan* plan); /* 0 = exact */
XZ24_API int xz24_plan_is_mirror(const xz24_plan* plan);
XZ24_API xz24_status xz24_plan_to_json(const xz24_plan* plan, char** out);
XZ24_API xz24_status xz24_plan_from_json(const char* text, xz24_plan** out);

/* Nyquist limit pi / energy_bound. */
XZ24_API double xz24_max_interval(double energy_bound);
/* l1 bound by default; with use_basis_heuristic != 0, |<ref|H|ref>| for a
 * basis reference (may undershoot the true |E|_max). */
XZ24_API xz24_status xz24_energy_bound(const xz24_hamiltonian* h,
                                       const xz24_reference* ref,
                                       int use_basis_heuristic, double* out);

/* ------------------------------------------------------------------ */
/* Signal acquisition                                                 */

XZ24_API xz24_status xz24_signal_acquire(const xz24_hamiltonian* h,
                                         const xz24_reference* ref,
                                         const xz24_plan* plan, uint64_t seed,
                                         int use_circuit, xz24_signal** out);
XZ24_API void xz24_signal_free(xz24_signal* signal);
XZ24_API size_t xz24_signal_count(const xz24_signal* signal);
XZ24_API double xz24_signal_value(const xz24_signal* signal, size_t n);
XZ24_API double xz24_signal_time(const xz24_signal* signal, size_t n);
/* Borrowed view of the signal's plan; valid while the signal lives. */
XZ24_API const xz24_plan* xz24_signal_plan(const xz24_signal* signal);
XZ24_API xz24_status xz24_signal_to_csv(const xz24_signal* signal, char** out);
XZ24_API xz24_status xz24_signal_from_csv(const char* text, xz24_signal** out);

/* ------------------------------------------------------------------ */
/* Spectral analysis                                                  */

XZ24_API xz24_status xz24_spectrum_transform(const xz24_signal* signal,
                                             xz24_spectrum** out);
XZ24_API void xz24_spectrum_free(xz24_spectrum* spectrum);
XZ24_API uint64_t xz24_spectrum_bin_count(const xz24_spectrum* spectrum);
XZ24_API double xz24_spectrum_a0(const xz24_spectrum* spectrum);
/* Coefficient a_k for k in 1..bin_count. */
XZ24_API double xz24_spectrum_coefficient(const xz24_spectrum* spectrum,
                                          uint64_t k);
XZ24_API double xz24_spectrum_x(const xz24_spectrum* spectrum, uint64_t k);
XZ24_API double xz24_spectrum_max_abs_imag(const xz24_spectrum* spectrum);
XZ24_API xz24_status xz24_spectrum_to_csv(const xz24_spectrum* spectrum,
                                          char** out);

XZ24_API xz24_status xz24_detect_peaks(const xz24_spectrum* spectrum,
                                       double threshold, xz24_estimates** out);
XZ24_API void xz24_estimates_free(xz24_estimates* estimates);
XZ24_API size_t xz24_estimates_count(const xz24_estimates* estimates);
/* Any out-pointer may be NULL. sign is an xz24_sign value. */
XZ24_API xz24_status xz24_estimates_get(const xz24_estimates* estimates, size_t i,
                                        uint64_t* bin, double* x,
                                        double* abs_energy, double* amplitude,
                                        int* sign, int* has_energy,
                                        double* energy);
XZ24_API xz24_status xz24_estimates_to_json(const xz24_estimates* estimates,
                                            char** out);
XZ24_API xz24_status xz24_estimates_from_json(const char* text,
                                              xz24_estimates** out);

/* ------------------------------------------------------------------ */
/* Eigenvalue sign resolution                                         */

/* max(4 * delta, 0.05) — resolvable on any plan. */
XZ24_API double xz24_default_offset(const xz24_plan* plan);
XZ24_API xz24_status xz24_resolve_signs(const xz24_hamiltonian* h,
                                        const xz24_reference* ref,
                                        const xz24_plan* plan, double s0,
                                        const xz24_estimates* base_estimates,
                                        double threshold, uint64_t seed,
                                        int use_circuit, xz24_resolution** out);
XZ24_API void xz24_resolution_free(xz24_resolution* resolution);
XZ24_API size_t xz24_resolution_count(const xz24_resolution* resolution);
XZ24_API xz24_status xz24_resolution_pair(const xz24_resolution* resolution,
                                          size_t i, double* base_abs_energy,
                                          int* has_shifted,
                                          double* shifted_abs_energy,
                                          double* shift, int* sign,
                                          int* has_signed_energy,
                                          double* signed_energy);
XZ24_API xz24_status xz24_resolution_to_json(const xz24_resolution* resolution,
                                             char** out);
/* New estimates list with signs/energies copied onto matching peaks. */
XZ24_API xz24_status xz24_resolution_apply(const xz24_resolution* resolution,
                                           const xz24_estimates* estimates,
                                           xz24_estimates** out);

/* ------------------------------------------------------------------ */
/* Oracle comparison                                                  */

/* Success means every oracle energy with weight >= weight_threshold has a
 * detected peak within delta. */
XZ24_API xz24_status xz24_recover_report(const xz24_estimates* estimates,
                                         const xz24_overlap_table* oracle,
                                         double weight_threshold, double delta,
                                         xz24_recovery** out);
XZ24_API void xz24_recovery_free(xz24_recovery* recovery);
XZ24_API int xz24_recovery_success(const xz24_recovery* recovery);
XZ24_API double xz24_recovery_max_error(const xz24_recovery* recovery);
XZ24_API size_t xz24_recovery_count(const xz24_recovery* recovery);
XZ24_API xz24_status xz24_recovery_entry(const xz24_recovery* recovery, size_t i,
                                         double* oracle_energy,
                                         double* oracle_weight,
                                         double* abs_error, int* within_delta);
XZ24_API xz24_status xz24_recovery_to_json(const xz24_recovery* recovery,
                                           char** out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* XZ24_H */

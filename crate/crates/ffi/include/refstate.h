#ifndef REFSTATE_H
#define REFSTATE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum RsStatus {
  RS_STATUS_OK = 0,
  RS_STATUS_NULL_POINTER = 1,
  RS_STATUS_INVALID_INPUT = 2,
  RS_STATUS_DEGENERATE = 3,
  RS_STATUS_NO_ROOT = 4,
  RS_STATUS_INVALID_PARAMS = 5,
  RS_STATUS_UNDEFINED_MERIT = 6,
  RS_STATUS_BUFFER_TOO_SMALL = 7,
  RS_STATUS_PANIC = 8,
} RsStatus;

// Optimal single-particle ancilla found by the recurrence solver.
typedef struct RsRecurrence RsRecurrence;

// Two-mode state of fixed total particle number.
typedef struct RsState RsState;

// `|c_n|^2 = (a - cos(xi n + xi epsilon)) / b`, with `beta = 4 a^2`.
typedef struct RsAnsatzParams {
  size_t m;
  double a;
  double b;
  double epsilon;
  double xi;
  double beta;
} RsAnsatzParams;

typedef struct RsComplex {
  double re;
  double im;
} RsComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the last error message of this thread into `buf` (NUL-terminated,
// truncated to fit) and returns the full message length without the NUL.
// Returns 0 when no error has been recorded.
//
// # Safety
// `buf` must be null or point to `len` writable bytes.
size_t rs_last_error_message(char *buf, size_t len);

// Library version as a static NUL-terminated string.
const char *rs_version(void);

// Builds a state from `len` complex amplitudes of `|n, len-1-n>`. `im` may
// be null for real amplitudes. The norm must be 1 within 1e-12.
//
// # Safety
// `re` (and `im` unless null) must point to `len` readable doubles; `out`
// must be writable.
enum RsStatus rs_state_new(const double *re, const double *im, size_t len, struct RsState **out);

// Builds a state with real amplitudes `sqrt(probs[n])`.
//
// # Safety
// `probs` must point to `len` readable doubles; `out` must be writable.
enum RsStatus rs_state_from_probs(const double *probs, size_t len, struct RsState **out);

// Equal-weight state of `total` particles. Never null.
struct RsState *rs_state_uniform(size_t total);

// # Safety
// `state` must be null or a handle from this library not yet freed.
void rs_state_free(struct RsState *state);

// Total particle number, or 0 for a null handle.
//
// # Safety
// `state` must be null or a live handle.
size_t rs_state_total(const struct RsState *state);

// Writes the `total + 1` probabilities `|a_n|^2`.
//
// # Safety
// `state` must be a live handle; `out` must point to `len` writable doubles.
enum RsStatus rs_state_probs(const struct RsState *state, double *out, size_t len);

// Keeps `|a_n|` and multiplies each amplitude by `exp(-i vartheta n(n-1))`.
//
// # Safety
// `state` must be a live handle; `out` must be writable.
enum RsStatus rs_apply_kerr(const struct RsState *state, double vartheta, struct RsState **out);

// Particle entanglement in bits of `system` with `ancilla`.
//
// # Safety
// Both handles must be live; `out` must be writable.
enum RsStatus rs_particle_entanglement(const struct RsState *system,
                                       const struct RsState *ancilla,
                                       double *out);

// Entanglement between the two modes of one state, in bits.
//
// # Safety
// `state` must be a live handle; `out` must be writable.
enum RsStatus rs_modal_entanglement(const struct RsState *state, double *out);

// Relative shortfall of `ancilla` against the optimal ancilla of the same
// size, for one shared particle.
//
// # Safety
// `ancilla` must be a live handle; `out` must be writable.
enum RsStatus rs_figure_of_merit(const struct RsState *ancilla, double *out);

// Solves for the optimal `m`-particle ancilla of one shared particle.
//
// # Safety
// `out` must be writable.
enum RsStatus rs_solve_recurrence(size_t m, double tol, struct RsRecurrence **out);

// # Safety
// `sol` must be null or a handle from this library not yet freed.
void rs_recurrence_free(struct RsRecurrence *sol);

// Lagrange parameter `beta`; NaN for `m = 0` or a null handle.
//
// # Safety
// `sol` must be null or a live handle.
double rs_recurrence_beta(const struct RsRecurrence *sol);

// Normalized `|c_{M+1}|^2` left by the solver; NaN for a null handle.
//
// # Safety
// `sol` must be null or a live handle.
double rs_recurrence_boundary_residual(const struct RsRecurrence *sol);

// Number of coefficients, `m + 1`; 0 for a null handle.
//
// # Safety
// `sol` must be null or a live handle.
size_t rs_recurrence_len(const struct RsRecurrence *sol);

// # Safety
// `sol` must be a live handle; `out` must point to `len` writable doubles.
enum RsStatus rs_recurrence_probs(const struct RsRecurrence *sol, double *out, size_t len);

// New state handle holding the optimal ancilla.
//
// # Safety
// `sol` must be a live handle; `out` must be writable.
enum RsStatus rs_recurrence_state(const struct RsRecurrence *sol, struct RsState **out);

// Exact trigonometric form of the optimal ancilla for `m >= 1`.
//
// # Safety
// `out` must be writable.
enum RsStatus rs_solve_ansatz_exact(size_t m, double tol, struct RsAnsatzParams *out);

// Evaluates the trigonometric form into `m + 1` probabilities.
//
// # Safety
// `params` must be readable; `out` must point to `len` writable doubles.
enum RsStatus rs_ansatz_coefficients(const struct RsAnsatzParams *params, double *out, size_t len);

// Optimal `m`-particle ancilla for the uniform `N = M` system. Writes
// `m + 1` probabilities and, unless `spread` is null, the stationarity
// spread of the result.
//
// # Safety
// `out` must point to `len` writable doubles; `spread` must be null or
// writable.
enum RsStatus rs_solve_shared_phase(size_t m, double tol, double *out, size_t len, double *spread);

// Ratio `|c_1|^2 / |c_0|^2` of the optimal one-particle ancilla for a
// one-particle system with weights `d0_sq`, `d1_sq`.
//
// # Safety
// `out` must be writable.
enum RsStatus rs_solve_n1m1(double d0_sq, double d1_sq, double *out);

// Phase-difference density sampled at `2 pi k / points`, `k < points`.
// Requires `points >= 4(M + 1)`.
//
// # Safety
// `state` must be a live handle; `out` must point to `len` writable doubles.
enum RsStatus rs_phase_difference_density(const struct RsState *state,
                                          size_t points,
                                          double *out,
                                          size_t len);

// Decomposes `exp(-i pi j/k n(n-1))` into `k` phase shifts `phi` with
// weights `coeffs`.
//
// # Safety
// `coeffs` and `phi` must each point to `len` writable elements.
enum RsStatus rs_kerr_decomposition(uint64_t j,
                                    uint64_t k,
                                    struct RsComplex *coeffs,
                                    double *phi,
                                    size_t len);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REFSTATE_H */

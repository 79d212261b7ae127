/*
 * Copyright 2026 The quasiprob Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit.
 */

#ifndef QUASIPROB_H
#define QUASIPROB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every exported function.
typedef enum {
  QPR_STATUS_OK = 0,
  QPR_STATUS_NULL_POINTER = 1,
  QPR_STATUS_INVALID_UTF8 = 2,
  QPR_STATUS_INVALID_INPUT = 3,
  QPR_STATUS_IMPOSSIBLE = 4,
  QPR_STATUS_PANIC = 5,
} QprStatus;

// Opaque affine effect representation.
typedef struct QprEffectRep QprEffectRep;

// Opaque affine state representation.
typedef struct QprStateRep QprStateRep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or an empty string. The
// pointer stays valid until the next call into this library on the thread.
const char *qpr_last_error_message(void);

// Creates the tetrahedral baseline representation.
//
// # Safety
// Both output pointers must be valid for writes.
QprStatus qpr_sic_baseline(QprStateRep **out_state, QprEffectRep **out_effect);

// Parses `{"space"?, "A", "C"}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be valid for writes.
QprStatus qpr_state_rep_from_json(const char *json, QprStateRep **out);

// Parses `{"space"?, "B", "D", "F"}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be valid for writes.
QprStatus qpr_effect_rep_from_json(const char *json, QprEffectRep **out);

// # Safety
// `rep` must come from this library and not be used afterwards. Null is
// ignored.
void qpr_state_rep_free(QprStateRep *rep);

// # Safety
// `rep` must come from this library and not be used afterwards. Null is
// ignored.
void qpr_effect_rep_free(QprEffectRep *rep);

// Number of ontic points.
//
// # Safety
// `rep` must be a live handle; `out_len` valid for writes.
QprStatus qpr_state_rep_size(const QprStateRep *rep, uintptr_t *out_len);

// `Tr(ρE) = m + x·p` for Bloch vector `bloch` and effect `(m, p)`.
//
// # Safety
// `bloch` and `p` must point to 3 doubles; `out` valid for writes.
QprStatus qpr_born_probability(const double *bloch, double m, const double *p, double *out);

// Writes `μ_ρ` for Bloch vector `bloch` into `out_values[0..len]`; `len`
// must equal the number of ontic points.
//
// # Safety
// `rep` must be a live handle, `bloch` must point to 3 doubles and
// `out_values` to `len` writable doubles.
QprStatus qpr_mu_eval(const QprStateRep *rep,
                      const double *bloch,
                      double *out_values,
                      uintptr_t len);

// Minimum of `μ_ρ(λ)` over all states and points, the point attaining it
// and (if `out_bloch` is non-null) the minimizing Bloch vector.
//
// # Safety
// `rep` must be a live handle; `out_min` and `out_point` valid for writes;
// `out_bloch` null or valid for 3 doubles.
QprStatus qpr_negativity(const QprStateRep *rep,
                         double *out_min,
                         uintptr_t *out_point,
                         double *out_bloch);

// Certifies a candidate and returns the certificate as JSON.
//
// # Safety
// Handles must be live; `out_json` valid for writes. Release the string
// with [`qpr_string_free`].
QprStatus qpr_certify_json(const QprStateRep *state,
                           const QprEffectRep *effect,
                           double tol,
                           bool with_chain,
                           char **out_json);

// Certifies `trials` seeded random nonnegative candidates and returns the
// battery report as JSON.
//
// # Safety
// `out_json` must be valid for writes. Release the string with
// [`qpr_string_free`].
QprStatus qpr_random_battery_json(uintptr_t trials, uint64_t seed, double tol, char **out_json);

// Translated-linear extension of `{"points", "values"}` data. Returns
// [`QprStatus::Impossible`] when the data are not convex-linear.
//
// # Safety
// `pvs_json` must be a NUL-terminated string; `out_json` valid for writes.
// Release the string with [`qpr_string_free`].
QprStatus qpr_extend_json(const char *pvs_json, double tol, char **out_json);

// # Safety
// `s` must come from this library and not be used afterwards. Null is
// ignored.
void qpr_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QUASIPROB_H */

/* C interface to the phasetype singularity classifier. */

#ifndef PHASETYPE_H
#define PHASETYPE_H

/* Generated by the build script from src/lib.rs; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Version of this C interface; bump on any incompatible change.
#define PT_ABI_VERSION 1

// Result of a call into the library.
//
// `PT_STATUS_ERR_OUT_OF_SCOPE` mirrors the CLI's exit code 2: the phase was
// understood but falls outside the classified range, and
// [`pt_last_error_json`] carries a full document saying why.
typedef enum PtStatus {
  PT_STATUS_OK = 0,
  // The expression did not parse.
  PT_STATUS_ERR_PARSE = 1,
  // The phase violates a precondition (zero phase, nonzero value or
  // gradient at the origin, or a phase depending on one variable only).
  PT_STATUS_ERR_PRECONDITION = 2,
  // Recognised but outside the classified range.
  PT_STATUS_ERR_OUT_OF_SCOPE = 3,
  // The requested jet order is too small to resolve the branch data.
  PT_STATUS_ERR_JET_ORDER = 4,
  // The request needs data this singularity type does not carry.
  PT_STATUS_ERR_NOT_APPLICABLE = 5,
  // A required pointer argument was null.
  PT_STATUS_ERR_NULL_ARGUMENT = 6,
  // The expression was not valid UTF-8.
  PT_STATUS_ERR_UTF8 = 7,
  // Unexpected internal failure.
  PT_STATUS_ERR_INTERNAL = 8,
} PtStatus;

// Opaque handle to a classification result.
typedef struct PtReport PtReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Returns the ABI version of the loaded library.
uint32_t pt_abi_version(void);

// Classifies the phase written in `expression` (for example
// `"x1*x2^2 - x1^3"`) and stores a fresh handle in `*out`.
//
// On success returns `PT_STATUS_OK`; the handle must be released with
// [`pt_report_free`].  On failure `*out` is set to null, the status says
// what went wrong, and [`pt_last_error`] / [`pt_last_error_json`] describe
// the failure.
enum PtStatus pt_classify(const char *expression, struct PtReport **out);

// Like [`pt_classify`], but computes series data at the fixed jet order
// instead of letting the library raise it as needed.
enum PtStatus pt_classify_jet(const char *expression, uint32_t jet_order, struct PtReport **out);

// Releases a handle returned by [`pt_classify`].  Passing null is a no-op.
void pt_report_free(struct PtReport *report);

// Message for the most recent failing call on this thread, or null.
// Borrowed; valid until the next failing call on the same thread.
const char *pt_last_error(void);

// JSON error document for the most recent failing call on this thread, or
// null when the failure produced none (null arguments, invalid UTF-8,
// internal errors).  Borrowed; same lifetime as [`pt_last_error`].
const char *pt_last_error_json(void);

// Full report document as JSON, identical to the CLI output for the same
// expression.  Borrowed from the handle.
const char *pt_report_json(const struct PtReport *report);

// Singularity class label (`"A2"`, `"D4+"`, `"E6"`, `"nondegenerate"`,
// ...).  Borrowed from the handle.
const char *pt_report_label(const struct PtReport *report);

// Rank of the Hessian of the phase at the origin (0, 1, or 2).
uint32_t pt_report_hessian_rank(const struct PtReport *report);

// Series index `n` for the A and D series (3 for the two `D4` forms, 2 at
// a Morse point), or -1 when the class carries none.
int32_t pt_report_series_index(const struct PtReport *report);

// Whether the input coordinates are already adapted.
bool pt_report_adapted(const struct PtReport *report);

// Newton distance in the input coordinates, rounded to double.
double pt_report_distance(const struct PtReport *report);

// Height of the phase (the Newton distance in adapted coordinates),
// rounded to double.
double pt_report_height(const struct PtReport *report);

// Exponent status: `"applicable"`, `"classical"`, or `"deferred"`.
// Borrowed from the handle.
const char *pt_report_exponent_status(const struct PtReport *report);

// Critical integrability exponent, when one is claimed.  Returns
// `PT_STATUS_OK` and writes the rounded value, or
// `PT_STATUS_ERR_NOT_APPLICABLE` when the report defers.
enum PtStatus pt_report_critical_exponent(const struct PtReport *report, double *out);

// Predicted oscillatory decay exponent for the class, rounded to double.
// Returns `PT_STATUS_ERR_NOT_APPLICABLE` when no prediction is tabulated.
enum PtStatus pt_report_predicted_gamma(const struct PtReport *report, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PHASETYPE_H */

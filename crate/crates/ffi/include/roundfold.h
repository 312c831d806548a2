#ifndef ROUNDFOLD_H
#define ROUNDFOLD_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RfRing {
  RF_RING_INTEGERS = 0,
  RF_RING_MOD_TWO = 1,
} RfRing;

typedef enum RfRule {
  RF_RULE_AUTO = 0,
  RF_RULE_THM1 = 1,
  RF_RULE_THM2 = 2,
  RF_RULE_THM3 = 3,
  RF_RULE_THM4 = 4,
  RF_RULE_PROP34 = 5,
} RfRule;

typedef enum RfStatus {
  RF_STATUS_OK = 0,
  RF_STATUS_NULL_ARGUMENT = 1,
  RF_STATUS_INVALID_UTF8 = 2,
  RF_STATUS_PARSE = 3,
  RF_STATUS_INVALID_DESCRIPTOR = 4,
  RF_STATUS_INCOMPLETE = 5,
  RF_STATUS_PARAMETER = 6,
  RF_STATUS_PRECONDITION = 7,
  RF_STATUS_MISSING_BUNDLE_DATA = 8,
  RF_STATUS_NOT_APPLICABLE = 9,
  // Overflow, dimension mismatch, ill-defined map or unsupported Tor term.
  RF_STATUS_ALGEBRA = 10,
  RF_STATUS_PANIC = 11,
} RfStatus;

// A circle-bundle descriptor.
typedef struct RfBundle RfBundle;

// A round fold map descriptor.
typedef struct RfDescriptor RfDescriptor;

// The outcome of an applicability check.
typedef struct RfReport RfReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on this thread.
const char *rf_last_error(void);

// # Safety
// `s` must come from this library or be null.
void rf_string_free(char *s);

// # Safety
// `src` is a NUL-terminated string; `out` is writable.
enum RfStatus rf_descriptor_parse(const char *src, struct RfDescriptor **out);

// Builds a catalog item; `params` holds `count` NUL-terminated strings.
//
// # Safety
// Pointers must be valid for the stated lengths.
enum RfStatus rf_descriptor_catalog(const char *name,
                                    const char *const *params,
                                    size_t count,
                                    struct RfDescriptor **out);

// # Safety
// `d` must come from this library or be null.
void rf_descriptor_free(struct RfDescriptor *d);

// # Safety
// `d` is a live handle; `out` is writable.
enum RfStatus rf_descriptor_serialize(const struct RfDescriptor *d, char **out);

// Writes the number of validation diagnostics; zero means valid.
//
// # Safety
// `d` is a live handle; `out` is writable.
enum RfStatus rf_descriptor_diagnostics(const struct RfDescriptor *d, size_t *out);

// Source dimension, target dimension and number of singular components.
//
// # Safety
// `d` is a live handle; out-pointers are writable.
enum RfStatus rf_descriptor_dims(const struct RfDescriptor *d, size_t *m, size_t *n, size_t *l);

// # Safety
// `d` is a live handle; `out` is writable.
enum RfStatus rf_graph_dot(const struct RfDescriptor *d, size_t degree, enum RfRing r, char **out);

// # Safety
// `d` is a live handle; `set` holds `len` region indices; `out` is writable.
enum RfStatus rf_graph_is_starting_set(const struct RfDescriptor *d,
                                       size_t degree,
                                       enum RfRing r,
                                       const size_t *set,
                                       size_t len,
                                       bool *out);

// The product circle bundle.
//
// # Safety
// `out` is writable.
enum RfStatus rf_bundle_trivial(struct RfBundle **out);

// # Safety
// `src` is a NUL-terminated string; `out` is writable.
enum RfStatus rf_bundle_parse(const char *src, struct RfBundle **out);

// # Safety
// `b` must come from this library or be null.
void rf_bundle_free(struct RfBundle *b);

// Runs a criterion. With `start_len == 0` a starting set is searched.
//
// # Safety
// Handles are live; `start` holds `start_len` indices; `out` is writable.
enum RfStatus rf_check(const struct RfDescriptor *d,
                       const struct RfBundle *b,
                       enum RfRule rule,
                       const size_t *start,
                       size_t start_len,
                       struct RfReport **out);

// # Safety
// `r` is a live handle; `out` is writable.
enum RfStatus rf_report_applicable(const struct RfReport *r, bool *out);

// # Safety
// `r` is a live handle; `out` is writable.
enum RfStatus rf_report_text(const struct RfReport *r, char **out);

// # Safety
// `r` must come from this library or be null.
void rf_report_free(struct RfReport *r);

// P-operation by the fiber `fiber` (an expression such as `sphere(1)`).
// A null `report` declares the bundle a global product.
//
// # Safety
// `d` is a live handle, `report` is a live handle or null, `fiber` is a
// NUL-terminated string and `out` is writable.
enum RfStatus rf_apply_p_operation(const struct RfDescriptor *d,
                                   const char *fiber,
                                   const struct RfReport *report,
                                   struct RfDescriptor **out);

// Text report for `thm6` (k[, m]), `thm7` (k) or `thm8` (k1, k2).
//
// # Safety
// `family` is a NUL-terminated string, `params` holds `count` values and
// `out` is writable.
enum RfStatus rf_family_report(const char *family, const int64_t *params, size_t count, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ROUNDFOLD_H */

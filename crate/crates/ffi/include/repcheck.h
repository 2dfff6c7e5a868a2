#ifndef REPCHECK_H
#define REPCHECK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum RcStatus {
  RC_STATUS_OK = 0,
  RC_STATUS_NULL_POINTER = 1,
  RC_STATUS_INVALID_UTF8 = 2,
  RC_STATUS_INVALID_ARGUMENT = 3,
  RC_STATUS_UNKNOWN_GROUP = 4,
  RC_STATUS_VERIFICATION_FAILED = 5,
  RC_STATUS_INTERNAL = 6,
  RC_STATUS_PANIC = 7,
} RcStatus;

// A verified character table.
typedef struct RcCharTable RcCharTable;

// A built-in finite group.
typedef struct RcGroup RcGroup;

// The classification report for all seven families.
typedef struct RcReport RcReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Valid until the
// next call into this library from the same thread.
const char *rc_last_error(void);

// Library version as a static NUL-terminated string.
const char *rc_version(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void rc_string_free(char *s);

// Looks up a built-in group by name (`K4`, `Z4`, `D4`, `D8`, `Pauli1`).
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum RcStatus rc_group_new(const char *name, struct RcGroup **out);

// # Safety
// `g` must be a live handle; `out` must be writable.
enum RcStatus rc_group_order(const struct RcGroup *g, size_t *out);

// # Safety
// `g` must be a live handle; `out` must be writable.
enum RcStatus rc_group_class_count(const struct RcGroup *g, size_t *out);

// Index of `a·b`.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum RcStatus rc_group_mul(const struct RcGroup *g, size_t a, size_t b, size_t *out);

// Multiplication table dump as text.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum RcStatus rc_group_dump(const struct RcGroup *g, char **out);

// # Safety
// `g` must come from `rc_group_new` and not have been freed. NULL is ignored.
void rc_group_free(struct RcGroup *g);

// Verified character table of a built-in group.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum RcStatus rc_char_table_new(const char *name, struct RcCharTable **out);

// Number of irreducible characters.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum RcStatus rc_char_table_len(const struct RcCharTable *t, size_t *out);

// Table as JSON with exact `{num, den}` coefficients.
//
// # Safety
// `t` must be a live handle; `out` must be writable.
enum RcStatus rc_char_table_json(const struct RcCharTable *t, char **out);

// # Safety
// `t` must come from `rc_char_table_new` and not have been freed. NULL is ignored.
void rc_char_table_free(struct RcCharTable *t);

// Classifies all seven families.
//
// # Safety
// `out` must be writable.
enum RcStatus rc_report_new(struct RcReport **out);

// Number of families in the report.
//
// # Safety
// `r` must be a live handle; `out` must be writable.
enum RcStatus rc_report_family_count(const struct RcReport *r, size_t *out);

// Writes 1 to `out` if the family at `index` is realizable, else 0.
//
// # Safety
// `r` must be a live handle; `out` must be writable.
enum RcStatus rc_report_is_realizable(const struct RcReport *r, size_t index, int32_t *out);

// Name of the family at `index`.
//
// # Safety
// `r` must be a live handle; `out` must be writable.
enum RcStatus rc_report_family_name(const struct RcReport *r, size_t index, char **out);

// # Safety
// `r` must be a live handle; `out` must be writable.
enum RcStatus rc_report_json(const struct RcReport *r, char **out);

// # Safety
// `r` must be a live handle; `out` must be writable.
enum RcStatus rc_report_text(const struct RcReport *r, char **out);

// # Safety
// `r` must come from `rc_report_new` and not have been freed. NULL is ignored.
void rc_report_free(struct RcReport *r);

// Runs the full verification battery. Writes the number of failed checks to
// `failed` (may be NULL) and returns `VerificationFailed` if any failed.
//
// # Safety
// `failed` must be NULL or writable.
enum RcStatus rc_verify_all(size_t *failed);

// Seeded chain of `rounds` entanglement swaps as JSON:
// `{"path": [...], "chsh": [...]}` with exact CHSH values.
//
// # Safety
// `out` must be writable.
enum RcStatus rc_swap_chain_json(size_t rounds, uint64_t seed, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* REPCHECK_H */

#ifndef TORIC_SPECTRUM_H
#define TORIC_SPECTRUM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

// Result codes. Values 2 to 4 match the exit codes of the command line tool.
typedef enum TsStatus {
  TS_STATUS_OK = 0,
  TS_STATUS_NULL_POINTER = 1,
  TS_STATUS_INVALID_INPUT = 2,
  TS_STATUS_UNSUPPORTED = 3,
  TS_STATUS_INTERNAL = 4,
  TS_STATUS_PANIC = 5,
} TsStatus;

// Opaque face atlas of a semigroup.
typedef struct TsAtlas TsAtlas;

// The message of the last failed call on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *ts_last_error_message(void);

// Parses a JSON input document and builds its atlas.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer to write to.
enum TsStatus ts_atlas_from_json(const char *json, struct TsAtlas **out);

// Releases an atlas. NULL is ignored.
//
// # Safety
// `atlas` must come from [`ts_atlas_from_json`] and not be freed twice.
void ts_atlas_free(struct TsAtlas *atlas);

// Number of faces (idempotents); 0 for NULL.
//
// # Safety
// `atlas` must be NULL or a live handle.
size_t ts_atlas_face_count(const struct TsAtlas *atlas);

// Ambient rank `n`; 0 for NULL.
//
// # Safety
// `atlas` must be NULL or a live handle.
size_t ts_atlas_ambient_rank(const struct TsAtlas *atlas);

// Writes whether `S ∩ (−S) = {0}`.
//
// # Safety
// `atlas` must be a live handle and `out` writable.
enum TsStatus ts_atlas_is_antisymmetric(const struct TsAtlas *atlas, bool *out);

// Dimension, lattice rank and number of torsion factors of one face.
//
// # Safety
// `atlas` must be a live handle; the output pointers must be writable.
enum TsStatus ts_atlas_face_info(const struct TsAtlas *atlas,
                                 size_t face,
                                 size_t *dim,
                                 size_t *rank,
                                 size_t *torsion_len);

// Writes whether `x ∈ S` for the point `x[0..len]`.
//
// # Safety
// `atlas` must be live, `x` must point to `len` integers and `out` be writable.
enum TsStatus ts_atlas_contains(const struct TsAtlas *atlas,
                                const int64_t *x,
                                size_t len,
                                bool *out);

// Writes whether `x` lies in the hull of `S`.
//
// # Safety
// Same as [`ts_atlas_contains`].
enum TsStatus ts_atlas_hull_contains(const struct TsAtlas *atlas,
                                     const int64_t *x,
                                     size_t len,
                                     bool *out);

// The JSON report as a new string (free with [`ts_string_free`]); NULL on failure.
//
// # Safety
// `atlas` must be NULL or a live handle.
char *ts_atlas_report_json(const struct TsAtlas *atlas);

// The idempotent Hasse diagram in DOT format (free with [`ts_string_free`]).
//
// # Safety
// `atlas` must be NULL or a live handle.
char *ts_atlas_dot(const struct TsAtlas *atlas);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void ts_string_free(char *s);

#endif /* TORIC_SPECTRUM_H */

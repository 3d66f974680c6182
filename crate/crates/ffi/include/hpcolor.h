#ifndef HPCOLOR_H
#define HPCOLOR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HpStatus {
  HP_STATUS_OK = 0,
  HP_STATUS_NULL_POINTER = 1,
  HP_STATUS_INVALID_INPUT = 2,
  HP_STATUS_LENGTH_MISMATCH = 3,
  HP_STATUS_INDEX_OUT_OF_RANGE = 4,
  HP_STATUS_SOLVE_FAILED = 5,
  HP_STATUS_TOO_LARGE = 6,
  // The oracle proved that no good colouring exists.
  HP_STATUS_NO_COLORING = 7,
  // The colouring leaves a deep point monochromatic.
  HP_STATUS_VIOLATION = 8,
  HP_STATUS_PANIC = 9,
} HpStatus;

typedef enum HpSide {
  // `y <= a x + b`
  HP_SIDE_UPPER = 0,
  // `y >= a x + b`
  HP_SIDE_LOWER = 1,
} HpSide;

typedef enum HpColor {
  HP_COLOR_BLUE = 0,
  HP_COLOR_RED = 1,
} HpColor;

// Opaque colouring, one colour per half-plane.
typedef struct HpColoring HpColoring;

// Opaque list of half-planes.
typedef struct HpInstance HpInstance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code.
const char *hp_status_message(enum HpStatus status);

// A new empty instance. Release with [`hp_instance_free`].
struct HpInstance *hp_instance_new(void);

// Parses the JSON instance format into `*out`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum HpStatus hp_instance_from_json(const char *json, struct HpInstance **out);

// Appends the half-plane with boundary `y = (a_num/a_den) x + b_num/b_den`.
//
// # Safety
// `inst` must come from this library and not be freed.
enum HpStatus hp_instance_push(struct HpInstance *inst,
                               int64_t a_num,
                               int64_t a_den,
                               int64_t b_num,
                               int64_t b_den,
                               enum HpSide side);

// Number of half-planes, 0 for a null handle.
//
// # Safety
// `inst` must be null or come from this library.
size_t hp_instance_len(const struct HpInstance *inst);

// The instance as JSON. Release with [`hp_string_free`]; null on failure.
//
// # Safety
// `inst` must be null or come from this library.
char *hp_instance_to_json(const struct HpInstance *inst);

// # Safety
// `inst` must be null or come from this library, and is invalid afterwards.
void hp_instance_free(struct HpInstance *inst);

// Colours `inst` so that every point covered three times sees both colours.
//
// # Safety
// `inst` must come from this library and `out` be a valid pointer.
enum HpStatus hp_solve(const struct HpInstance *inst, struct HpColoring **out);

// First good colouring for threshold `k` by exhaustive search, at most 20
// half-planes. [`HpStatus::NoColoring`] when none exists.
//
// # Safety
// `inst` must come from this library and `out` be a valid pointer.
enum HpStatus hp_oracle(const struct HpInstance *inst, size_t k, struct HpColoring **out);

// [`HpStatus::Ok`] when every point covered at least `k` times sees both
// colours, [`HpStatus::Violation`] otherwise.
//
// # Safety
// Both handles must come from this library.
enum HpStatus hp_verify(const struct HpInstance *inst, const struct HpColoring *coloring, size_t k);

// A colouring built from `len` colours.
//
// # Safety
// `colors` must point to `len` valid [`HpColor`] values and `out` be valid.
enum HpStatus hp_coloring_new(const enum HpColor *colors, size_t len, struct HpColoring **out);

// # Safety
// `c` must be null or come from this library.
size_t hp_coloring_len(const struct HpColoring *c);

// Colour of half-plane `i`.
//
// # Safety
// `c` must come from this library and `out` be a valid pointer.
enum HpStatus hp_coloring_get(const struct HpColoring *c, size_t i, enum HpColor *out);

// The colouring as JSON. Release with [`hp_string_free`]; null on failure.
//
// # Safety
// `c` must be null or come from this library.
char *hp_coloring_to_json(const struct HpColoring *c);

// # Safety
// `c` must be null or come from this library, and is invalid afterwards.
void hp_coloring_free(struct HpColoring *c);

// # Safety
// `s` must be null or a string returned by this library.
void hp_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HPCOLOR_H */

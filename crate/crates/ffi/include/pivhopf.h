#ifndef PIVHOPF_H
#define PIVHOPF_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every call.
typedef enum PhStatus {
  PH_STATUS_OK = 0,
  // The call succeeded but a mathematical check failed.
  PH_STATUS_CHECK_FAILED = 1,
  // Malformed input: bad JSON, shapes, or arguments.
  PH_STATUS_INVALID_INPUT = 2,
  // A computation could not be carried out, e.g. a singular matrix.
  PH_STATUS_MATH_ERROR = 3,
  PH_STATUS_NULL_POINTER = 4,
  PH_STATUS_PANIC = 5,
} PhStatus;

// An object intertwined with a pivotal pair.
typedef struct PhObject PhObject;

// A pivotal pair.
typedef struct PhPair PhPair;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread, or null. Owned by the library.
const char *ph_last_error(void);

// Release a string returned by this library.
//
// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void ph_string_free(char *s);

// Build the pair of an invertible `n×n` matrix. `den` may be null for integer entries.
//
// # Safety
// `num` (and `den` if non-null) must point to `n*n` values; `out` must be writable.
enum PhStatus ph_pair_from_matrix(size_t n,
                                  const int64_t *num,
                                  const int64_t *den,
                                  struct PhPair **out);

// Parse a pair from its JSON form.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum PhStatus ph_pair_from_json(const char *json, struct PhPair **out);

// Check the snake identities: `Ok` when all hold, `CheckFailed` otherwise.
//
// # Safety
// `pair` must be a live handle.
enum PhStatus ph_pair_check(const struct PhPair *pair);

// Serialize a pair; free the result with [`ph_string_free`].
//
// # Safety
// `pair` must be a live handle; `out` must be writable.
enum PhStatus ph_pair_to_json(const struct PhPair *pair, char **out);

// # Safety
// `pair` must be null or a live handle, not used afterwards.
void ph_pair_free(struct PhPair *pair);

// Parse an object `{"dimX", "sigma", "pair" | "Q"}`.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum PhStatus ph_object_from_json(const char *json, struct PhObject **out);

// The carrier dimension of an object, or 0 for a null handle.
//
// # Safety
// `obj` must be null or a live handle.
size_t ph_object_dim(const struct PhObject *obj);

// Check that the induced `Q`-intertwining is inverse to `σ`.
//
// # Safety
// `obj` must be a live handle.
enum PhStatus ph_object_check(const struct PhObject *obj);

// The tensor product `a⊗b`.
//
// # Safety
// `a` and `b` must be live handles; `out` must be writable.
enum PhStatus ph_object_tensor(const struct PhObject *a,
                               const struct PhObject *b,
                               struct PhObject **out);

// Serialize an object; free the result with [`ph_string_free`].
//
// # Safety
// `obj` must be a live handle; `out` must be writable.
enum PhStatus ph_object_to_json(const struct PhObject *obj, char **out);

// # Safety
// `obj` must be null or a live handle, not used afterwards.
void ph_object_free(struct PhObject *obj);

// Verify the Hopf algebra axioms of the matrix `Q` up to `degree`.
// When `report` is non-null it receives the JSON report.
//
// # Safety
// `num` (and `den` if non-null) must point to `n*n` values; `report` must be null or writable.
enum PhStatus ph_hopf_verify(size_t n,
                             const int64_t *num,
                             const int64_t *den,
                             size_t degree,
                             char **report);

// `dim T_{≤degree}(X)` for `dim X = dim_x` over the pair of `Q`.
//
// # Safety
// `num` (and `den` if non-null) must point to `n*n` values; `out` must be writable.
enum PhStatus ph_monad_quotient_dim(size_t n,
                                    const int64_t *num,
                                    const int64_t *den,
                                    size_t dim_x,
                                    size_t degree,
                                    size_t *out);

// Run the seeded verification battery and return its JSON report.
//
// # Safety
// `out` must be writable.
enum PhStatus ph_suite_run(uint64_t seed, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PIVHOPF_H */

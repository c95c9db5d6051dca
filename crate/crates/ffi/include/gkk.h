#ifndef GKK_H
#define GKK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes returned by every function.
 */
typedef enum GkkStatus {
  GKK_STATUS_OK = 0,
  GKK_STATUS_NULL_POINTER = 1,
  GKK_STATUS_INVALID_UTF8 = 2,
  GKK_STATUS_INVALID_ARGUMENT = 3,
  GKK_STATUS_PARSE = 4,
  GKK_STATUS_CAP_EXCEEDED = 5,
  GKK_STATUS_COMPUTATION = 6,
  GKK_STATUS_PANIC = 7,
} GkkStatus;

/*
 Opaque matrix handle.
 */
typedef struct GkkMatrix GkkMatrix;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Build `A(n, k, t)`; `t` is a decimal or fraction string such as `"1/2"`.

 # Safety
 `t` must be a valid C string and `out` a valid pointer.
 */
enum GkkStatus gkk_matrix_family(size_t n, size_t k, const char *t, struct GkkMatrix **out);

/*
 Build the limit matrix `B_k` of order `2k + 2`.

 # Safety
 `out` must be a valid pointer.
 */
enum GkkStatus gkk_matrix_limit(size_t k, struct GkkMatrix **out);

/*
 The `n x n` identity.

 # Safety
 `out` must be a valid pointer.
 */
enum GkkStatus gkk_matrix_identity(size_t n, struct GkkMatrix **out);

/*
 Parse a matrix from the JSON format the CLI writes.

 # Safety
 `json` must be a valid C string and `out` a valid pointer.
 */
enum GkkStatus gkk_matrix_from_json(const char *json, struct GkkMatrix **out);

/*
 Release a handle. Null is ignored.

 # Safety
 `m` must come from this library and not be freed twice.
 */
void gkk_matrix_free(struct GkkMatrix *m);

/*
 Order of a square matrix.

 # Safety
 `m` must be a live handle and `out` a valid pointer.
 */
enum GkkStatus gkk_matrix_order(const struct GkkMatrix *m, size_t *out);

/*
 Exact determinant as a `"p/q"` string.

 # Safety
 `m` must be a live handle and `out` a valid pointer.
 */
enum GkkStatus gkk_matrix_det(const struct GkkMatrix *m, char **out);

/*
 The matrix as JSON.

 # Safety
 `m` must be a live handle and `out` a valid pointer.
 */
enum GkkStatus gkk_matrix_to_json(const struct GkkMatrix *m, char **out);

/*
 Test one property (`"P"`, `"WSS"`, `"GKK"`, `"OMEGA"`, `"TAU"`,
 `"POS_STABLE"` or `"VARGA_WEDGE"`) with default caps. `holds` receives
 1 or 0.

 # Safety
 `m` must be a live handle, `property` a valid C string and `holds` a
 valid pointer.
 */
enum GkkStatus gkk_classify(const struct GkkMatrix *m, const char *property, int32_t *holds);

/*
 Full report for one property as JSON, witness included.

 # Safety
 `m` must be a live handle, `property` a valid C string and `out` a
 valid pointer.
 */
enum GkkStatus gkk_classify_json(const struct GkkMatrix *m, const char *property, char **out);

/*
 Message for the last failing call on this thread, or null. The caller
 owns the copy.
 */
char *gkk_last_error(void);

/*
 Release a string returned by this library. Null is ignored.

 # Safety
 `s` must come from this library and not be freed twice.
 */
void gkk_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GKK_H */

#ifndef COXTOR_H
#define COXTOR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define CT_MODE_PLAIN 0

#define CT_MODE_HAT 1

// Result code of every fallible call.
typedef enum CtStatus {
  CT_STATUS_OK = 0,
  // A required pointer argument was null.
  CT_STATUS_NULL_POINTER = 1,
  // A string argument was not valid UTF-8.
  CT_STATUS_INVALID_UTF8 = 2,
  // Malformed symbol JSON or an invalid symbol.
  CT_STATUS_INVALID_INPUT = 3,
  // Bad type name, node number, mode or dimension.
  CT_STATUS_INVALID_ARGUMENT = 4,
  // The mathematical construction does not apply to this input.
  CT_STATUS_PRECONDITION = 5,
  // A certificate step or consistency check failed.
  CT_STATUS_CHECK_FAILED = 6,
  // The input exceeds a documented size cap.
  CT_STATUS_TOO_LARGE = 7,
  // Internal error; please report it.
  CT_STATUS_INTERNAL = 8,
} CtStatus;

// Opaque dagger symbol.
typedef struct CtDagger CtDagger;

// Opaque Coxeter symbol.
typedef struct CtSymbol CtSymbol;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Static description of a status code (taken as an integer so unknown
// values are safe). Never null.
const char *ct_status_message(int32_t status);

// Detailed message of the last failing call on this thread, or "" after a
// success. Valid until the next library call on the same thread.
const char *ct_last_error(void);

// Releases a string returned by the library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void ct_string_free(char *s);

// Parses symbol JSON (`{"nodes": [...], "edges": [[a, b, m], ...]}`).
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum CtStatus ct_symbol_parse(const char *json, struct CtSymbol **out);

// # Safety
// `g` must be null or a handle from [`ct_symbol_parse`] not yet freed.
void ct_symbol_free(struct CtSymbol *g);

// Number of nodes, or 0 for a null handle.
//
// # Safety
// `g` must be null or a live handle.
size_t ct_symbol_len(const struct CtSymbol *g);

// Euler characteristic as JSON `{"num": .., "den": ..}`.
//
// # Safety
// `g` must be a live handle; `out` must be writable.
enum CtStatus ct_symbol_euler(const struct CtSymbol *g, char **out);

// Signature of the cosine matrix; `inf_value` is used for infinite labels.
//
// # Safety
// `g` must be a live handle; the three out-pointers must be writable.
enum CtStatus ct_symbol_signature(const struct CtSymbol *g,
                                  double inf_value,
                                  size_t *positive,
                                  size_t *negative,
                                  size_t *zero);

// Builds the dagger symbol on the Weyl type `psi` (e.g. "E6") with pendants
// at the given 1-based nodes.
//
// # Safety
// `psi` must be NUL-terminated, `nodes` must point to `len` values, `out`
// must be writable.
enum CtStatus ct_dagger_build(const char *psi,
                              const uint32_t *nodes,
                              size_t len,
                              struct CtDagger **out);

// # Safety
// `d` must be null or a handle from [`ct_dagger_build`] not yet freed.
void ct_dagger_free(struct CtDagger *d);

// The extended symbol Γ as symbol JSON.
//
// # Safety
// `d` must be a live handle; `out` must be writable.
enum CtStatus ct_dagger_gamma(const struct CtDagger *d, char **out);

// Torsion-freeness certificate as JSON. `*ok` is set to whether every step
// passed; a failed certificate still returns `CT_STATUS_OK`.
//
// # Safety
// `d` must be a live handle; `out` and `ok` must be writable.
enum CtStatus ct_dagger_certify(const struct CtDagger *d, uint32_t mode, char **out, bool *ok);

// Cyclic extension `{zeta, p, index, certificate}` as JSON. Returns
// `CT_STATUS_CHECK_FAILED` (and no string) if the certificate fails.
//
// # Safety
// `d` must be a live handle; `out` must be writable.
enum CtStatus ct_dagger_extend(const struct CtDagger *d, char **out);

// Volume, Euler characteristic, index and deck order of the manifold built
// from the Vinberg simplex group in dimension `n` (4, 6 or 8), as JSON.
//
// # Safety
// `out` must be writable.
enum CtStatus ct_manifold_volume(uint32_t n, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COXTOR_H */

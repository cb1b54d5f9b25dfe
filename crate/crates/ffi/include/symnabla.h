#ifndef SYMNABLA_H
#define SYMNABLA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum SymnablaStatus {
  SYMNABLA_STATUS_OK = 0,
  SYMNABLA_STATUS_NULL_POINTER = 1,
  SYMNABLA_STATUS_INVALID_UTF8 = 2,
  SYMNABLA_STATUS_DOMAIN = 3,
  SYMNABLA_STATUS_SIZE_LIMIT = 4,
  SYMNABLA_STATUS_PARSE = 5,
  SYMNABLA_STATUS_FORMAT = 6,
  SYMNABLA_STATUS_COVERAGE = 7,
  SYMNABLA_STATUS_TRANSPORT = 8,
  SYMNABLA_STATUS_VERIFICATION = 9,
  SYMNABLA_STATUS_IO = 10,
  SYMNABLA_STATUS_PANIC = 11,
} SymnablaStatus;

typedef enum SymnablaMethod {
  SYMNABLA_METHOD_AUTO = 0,
  SYMNABLA_METHOD_BRUTE = 1,
  SYMNABLA_METHOD_FAST = 2,
  SYMNABLA_METHOD_MATRIX = 3,
  SYMNABLA_METHOD_REDUCE = 4,
} SymnablaMethod;

// Opaque handle to a parsed b-file.
typedef struct SymnablaBFile SymnablaBFile;

// Opaque handle to a set of `k`-smooth numbers.
typedef struct SymnablaSet SymnablaSet;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the last failed call on this thread, or NULL.
//
// The pointer stays valid until the next failing call on the same thread.
const char *symnabla_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library and not yet freed.
void symnabla_string_free(char *s);

// `a_k(n)` as a decimal string in `*out`. `element_cap` bounds the brute-force
// oracle; 0 selects the default.
//
// # Safety
// `out` must be a valid pointer to writable storage for one pointer.
enum SymnablaStatus symnabla_term(uint32_t k,
                                  uint64_t n,
                                  enum SymnablaMethod method,
                                  size_t element_cap,
                                  char **out);

// `theta_t = a_k(2^t - 1)` for `k` in `2..=8` as a decimal string.
//
// # Safety
// `out` must be a valid pointer to writable storage for one pointer.
enum SymnablaStatus symnabla_sparse_theta(uint32_t k, uint32_t t, char **out);

// The structural vector `(b,c,u,v,r)` of `H_8^∇n`, from the matrix word.
//
// # Safety
// `out` must be a valid pointer to writable storage for one pointer.
enum SymnablaStatus symnabla_structure_a8(uint64_t n, char **out);

// `a_8(n)` by the reduction rules. When `trace_json` is not NULL it receives
// the derivation tree as JSON.
//
// # Safety
// `value` must be valid for one pointer write; `trace_json` must be NULL or valid.
enum SymnablaStatus symnabla_reduce(uint64_t n,
                                    bool optional_rules,
                                    char **value,
                                    char **trace_json);

// `H_k^∇n` as a new handle in `*out`.
//
// # Safety
// `out` must be a valid pointer to writable storage for one pointer.
enum SymnablaStatus symnabla_set_power(uint32_t k,
                                       uint64_t n,
                                       size_t element_cap,
                                       struct SymnablaSet **out);

// `a ∇ b` as a new handle.
//
// # Safety
// `a` and `b` must be live handles; `out` must be valid for one pointer write.
enum SymnablaStatus symnabla_set_product(const struct SymnablaSet *a,
                                         const struct SymnablaSet *b,
                                         size_t element_cap,
                                         struct SymnablaSet **out);

// `a △ b` as a new handle.
//
// # Safety
// `a` and `b` must be live handles; `out` must be valid for one pointer write.
enum SymnablaStatus symnabla_set_difference(const struct SymnablaSet *a,
                                            const struct SymnablaSet *b,
                                            struct SymnablaSet **out);

// Number of elements; 0 for NULL.
//
// # Safety
// `set` must be NULL or a live handle.
size_t symnabla_set_len(const struct SymnablaSet *set);

// Whether the natural number `value` is a member; false for NULL.
//
// # Safety
// `set` must be NULL or a live handle.
bool symnabla_set_contains(const struct SymnablaSet *set, uint64_t value);

// The members in increasing order, space separated.
//
// # Safety
// `set` must be a live handle; `out` must be valid for one pointer write.
enum SymnablaStatus symnabla_set_to_string(const struct SymnablaSet *set, char **out);

// # Safety
// `set` must be NULL or a handle not yet freed.
void symnabla_set_free(struct SymnablaSet *set);

// Parse NUL-terminated b-file text into a new handle.
//
// # Safety
// `text` must be a valid NUL-terminated string; `out` must be valid for one pointer write.
enum SymnablaStatus symnabla_bfile_parse(const char *text, struct SymnablaBFile **out);

// Number of entries; 0 for NULL.
//
// # Safety
// `bfile` must be NULL or a live handle.
size_t symnabla_bfile_len(const struct SymnablaBFile *bfile);

// Compare `a_k(0..=limit)` with the b-file. `*agrees` is set; on disagreement
// `*first_mismatch` (if not NULL) receives the first differing index.
//
// # Safety
// `bfile` must be a live handle; `agrees` must be valid; `first_mismatch` may be NULL.
enum SymnablaStatus symnabla_bfile_crosscheck(const struct SymnablaBFile *bfile,
                                              uint32_t k,
                                              uint64_t limit,
                                              bool *agrees,
                                              uint64_t *first_mismatch);

// # Safety
// `bfile` must be NULL or a handle not yet freed.
void symnabla_bfile_free(struct SymnablaBFile *bfile);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYMNABLA_H */

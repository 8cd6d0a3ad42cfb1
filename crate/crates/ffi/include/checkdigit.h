#ifndef CHECKDIGIT_H
#define CHECKDIGIT_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Outcome of [`cd_postnet_correct`].
 */
typedef enum CdCorrection {
  CD_CORRECTION_CLEAN = 0,
  CD_CORRECTION_CORRECTED = 1,
  CD_CORRECTION_UNCORRECTABLE = 2,
} CdCorrection;

typedef enum CdFormat {
  CD_FORMAT_CGEN = 0,
  CD_FORMAT_JSON = 1,
} CdFormat;

typedef enum CdScheme {
  CD_SCHEME_AIRLINE = 0,
  CD_SCHEME_ROUTING = 1,
  CD_SCHEME_LUHN = 2,
  CD_SCHEME_ISBN10 = 3,
} CdScheme;

/**
 * Result code of every fallible call.
 */
typedef enum CdStatus {
  CD_STATUS_OK = 0,
  CD_STATUS_NULL_POINTER = 1,
  CD_STATUS_INVALID_UTF8 = 2,
  CD_STATUS_EMPTY_INPUT = 3,
  CD_STATUS_NON_DIGIT_CHARACTER = 4,
  CD_STATUS_DIGIT_OUT_OF_RANGE = 5,
  CD_STATUS_WRONG_LENGTH = 6,
  CD_STATUS_INDEX_OUT_OF_RANGE = 7,
  CD_STATUS_NUMBER_TOO_LARGE = 8,
  CD_STATUS_NON_BIT_CHARACTER = 9,
  CD_STATUS_BAD_LENGTH = 10,
  CD_STATUS_INVALID_CODEWORD = 11,
  CD_STATUS_CHECKSUM_MISMATCH = 12,
  CD_STATUS_DOMAIN_TOO_LARGE = 13,
  CD_STATUS_INVALID_TYPE = 14,
  CD_STATUS_PREDICATE_FAILURE = 15,
  CD_STATUS_UNKNOWN_SCHEME = 16,
  CD_STATUS_UNKNOWN_PROPERTY = 17,
  CD_STATUS_INVALID_ARGUMENT = 18,
  CD_STATUS_PANIC = 99,
} CdStatus;

/**
 * Opaque digit sequence.
 */
typedef struct CdDigits CdDigits;

/**
 * Opaque result of a property run.
 */
typedef struct CdSummary CdSummary;

/**
 * Plain counts from a summary.
 */
typedef struct CdCounts {
  uint64_t tested;
  uint64_t satisfied;
  uint64_t satisfied_unique;
  uint64_t counterexamples;
  uint64_t witnesses;
  bool vacuous;
} CdCounts;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code. Never free the result.
 */
const char *cd_status_name(enum CdStatus status);

/**
 * # Safety
 * `s` must be null or a string returned by this library, freed once.
 */
void cd_string_free(char *s);

/**
 * Parses decimal text (spaces, `-` and `|` are skipped).
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum CdStatus cd_digits_parse(const char *text, struct CdDigits **out);

/**
 * Builds a handle from `len` raw values, each in `0..=9`.
 *
 * # Safety
 * `values` must point to `len` bytes (it may be null when `len` is 0).
 */
enum CdStatus cd_digits_from_values(const uint8_t *values, size_t len, struct CdDigits **out);

/**
 * # Safety
 * `d` must be null or a live handle.
 */
size_t cd_digits_len(const struct CdDigits *d);

/**
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum CdStatus cd_digits_get(const struct CdDigits *d, size_t index, uint8_t *out);

/**
 * Renders the digits; free the result with [`cd_string_free`].
 *
 * # Safety
 * `d` must be null or a live handle.
 */
char *cd_digits_to_string(const struct CdDigits *d);

/**
 * # Safety
 * `d` must be null or a handle from this library, freed once.
 */
void cd_digits_free(struct CdDigits *d);

/**
 * Checks a complete number written as text. ISBN input may end in `X`.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `valid` must be writable.
 */
enum CdStatus cd_verify(enum CdScheme scheme, const char *text, bool *valid);

/**
 * Appends the check digit to `body` and writes the full number as text.
 *
 * # Safety
 * `body` must be a live handle; `out` must be writable.
 */
enum CdStatus cd_complete(enum CdScheme scheme, const struct CdDigits *body, char **out);

/**
 * Encodes a message as a `0`/`1` string, check block included.
 *
 * # Safety
 * `message` must be a live handle; `out` must be writable.
 */
enum CdStatus cd_postnet_encode(const struct CdDigits *message, char **out);

/**
 * Decodes a `0`/`1` string. Any corruption is reported as a status.
 *
 * # Safety
 * `bits` must be a NUL-terminated string; `out` must be writable.
 */
enum CdStatus cd_postnet_decode(const char *bits, struct CdDigits **out);

/**
 * Repairs at most one damaged block. `message` receives the recovered
 * digits, or null when the input is uncorrectable.
 *
 * # Safety
 * `bits` must be a NUL-terminated string; `outcome` and `message` must be
 * writable.
 */
enum CdStatus cd_postnet_correct(const char *bits,
                                 enum CdCorrection *outcome,
                                 struct CdDigits **message);

/**
 * Runs a catalog property on `trials` random cases. `workers` of 0 uses
 * every available core.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum CdStatus cd_property_run(const char *name,
                              uint64_t trials,
                              uint64_t seed,
                              size_t workers,
                              struct CdSummary **out);

/**
 * Enumerates a catalog property over `sample_size` sampled valid instances.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` must be writable.
 */
enum CdStatus cd_property_exhaustive(const char *name,
                                     size_t sample_size,
                                     uint64_t seed,
                                     size_t workers,
                                     struct CdSummary **out);

/**
 * # Safety
 * `s` must be a live handle; `out` must be writable.
 */
enum CdStatus cd_summary_counts(const struct CdSummary *s, struct CdCounts *out);

/**
 * Renders a summary; free the result with [`cd_string_free`].
 *
 * # Safety
 * `s` must be null or a live handle.
 */
char *cd_summary_format(const struct CdSummary *s, enum CdFormat format);

/**
 * # Safety
 * `s` must be null or a handle from this library, freed once.
 */
void cd_summary_free(struct CdSummary *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CHECKDIGIT_H */

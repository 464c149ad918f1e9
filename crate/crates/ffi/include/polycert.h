#ifndef POLYCERT_H
#define POLYCERT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PolycertStatus {
  POLYCERT_STATUS_OK = 0,
  POLYCERT_STATUS_NULL_ARGUMENT = 1,
  POLYCERT_STATUS_INVALID_UTF8 = 2,
  POLYCERT_STATUS_PARSE_ERROR = 3,
  POLYCERT_STATUS_INVALID_ARGUMENT = 4,
  /**
   * The certification pipeline could not reach a decision.
   */
  POLYCERT_STATUS_UNDECIDED = 5,
  POLYCERT_STATUS_MALFORMED_CERTIFICATE = 6,
  POLYCERT_STATUS_PANIC = 7,
} PolycertStatus;

typedef enum PolycertMode {
  POLYCERT_MODE_AUTO = 0,
  POLYCERT_MODE_POS = 1,
  POLYCERT_MODE_NEG = 2,
  POLYCERT_MODE_NO_PERT = 3,
} PolycertMode;

/**
 * Nonnegativity certificate or witness.
 */
typedef struct PolycertCertificate PolycertCertificate;

/**
 * Parsed polynomial.
 */
typedef struct PolycertPoly PolycertPoly;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next failing call on the same thread.
 */
const char *polycert_last_error(void);

/**
 * Parses a polynomial in `x1, x2, …`.
 *
 * # Safety
 * `text` must be a nul-terminated string; `out_poly` must be writable.
 */
enum PolycertStatus polycert_poly_parse(const char *text, struct PolycertPoly **out_poly);

/**
 * Number of variables of a polynomial, or 0 for a null handle.
 *
 * # Safety
 * `poly` must be null or a live handle.
 */
size_t polycert_poly_nvars(const struct PolycertPoly *poly);

/**
 * Exact value at a point given as `"p1/q1,…,pn/qn"`; the result is a
 * string `"num/den"` to be released with `polycert_string_free`.
 *
 * # Safety
 * Pointers must be valid as described.
 */
enum PolycertStatus polycert_poly_eval(const struct PolycertPoly *poly,
                                       const char *point,
                                       char **out_value);

/**
 * # Safety
 * `poly` must be null or a handle from `polycert_poly_parse`.
 */
void polycert_poly_free(struct PolycertPoly *poly);

/**
 * Runs the certification pipeline. A negative polynomial yields a
 * certificate carrying a witness; `Undecided` means no certificate.
 *
 * # Safety
 * Pointers must be valid as described.
 */
enum PolycertStatus polycert_certify(const struct PolycertPoly *poly,
                                     enum PolycertMode mode,
                                     uint64_t seed,
                                     uint32_t k,
                                     struct PolycertCertificate **out_cert);

/**
 * Whether the certificate proves nonnegativity (`true`) or carries a
 * witness of a negative value (`false`).
 *
 * # Safety
 * Pointers must be valid as described.
 */
enum PolycertStatus polycert_certificate_is_nonneg(const struct PolycertCertificate *cert,
                                                   bool *out_nonneg);

/**
 * Canonical JSON text, released with `polycert_string_free`.
 *
 * # Safety
 * Pointers must be valid as described.
 */
enum PolycertStatus polycert_certificate_to_json(const struct PolycertCertificate *cert,
                                                 char **out_json);

/**
 * # Safety
 * Pointers must be valid as described.
 */
enum PolycertStatus polycert_certificate_from_json(const char *json,
                                                   struct PolycertCertificate **out_cert);

/**
 * # Safety
 * `cert` must be null or a handle from this library.
 */
void polycert_certificate_free(struct PolycertCertificate *cert);

/**
 * Checks a certificate against polynomial text, reading the variable names
 * from the certificate. `out_report` may be null; otherwise it receives the
 * JSON report, released with `polycert_string_free`.
 *
 * # Safety
 * Pointers must be valid as described.
 */
enum PolycertStatus polycert_verify(const char *poly_text,
                                    const struct PolycertCertificate *cert,
                                    bool *out_valid,
                                    char **out_report);

/**
 * Gram matrix check for `f + ε(1 + ‖X‖²)^t`; `t = 0` selects the
 * guaranteed threshold. `out_report` may be null.
 *
 * # Safety
 * Pointers must be valid as described.
 */
enum PolycertStatus polycert_sospert(const struct PolycertPoly *poly,
                                     const char *epsilon,
                                     uint32_t t,
                                     bool *out_psd,
                                     char **out_report);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void polycert_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* POLYCERT_H */

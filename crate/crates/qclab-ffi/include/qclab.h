/* C interface to the qclab query-cost laboratory.
 *
 * Maintained by hand against crates/qclab-ffi/src/lib.rs.
 *
 * Conventions: functions return a status code (QCLAB_OK on success,
 * positive codes for domain outcomes, negative codes for errors);
 * results are returned through out-pointers or opaque handles with
 * explicit _free functions. qclab_last_error_message() describes the
 * most recent failure on the calling thread.
 */

#ifndef QCLAB_H
#define QCLAB_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. */
#define QCLAB_OK 0
/* A verification suite completed but some criterion failed. */
#define QCLAB_VERIFY_FAILURES 1
#define QCLAB_ERR_NULL_POINTER (-1)
#define QCLAB_ERR_BAD_UTF8 (-2)
#define QCLAB_ERR_INVALID_CONFIG (-3)
#define QCLAB_ERR_RUNTIME (-4)
#define QCLAB_ERR_BAD_PARAM (-5)

/* Opaque aggregated result of one experiment run. */
typedef struct QclabSummary QclabSummary;

/* Library version as a static string; do not free. */
const char *qclab_version(void);

/* Message for the calling thread's most recent error; valid until the
 * next failing call on the same thread. Do not free. */
const char *qclab_last_error_message(void);

/* Evaluates a named Boolean function ("or", "maj", "parity",
 * "threshold", "simon") on a hex-serialised input of `arity` bits.
 * `block_n` is the hidden-period block width for "simon" (pass 0
 * otherwise). The input hex encoding packs bit i into byte i/8 at bit
 * position i%8, bytes in order, two lowercase hex digits per byte.
 * On success writes 0 or 1 into *out_value. */
int32_t qclab_evaluate(const char *kind,
                       uint32_t arity,
                       int32_t block_n,
                       const char *input_hex,
                       uint8_t *out_value);

/* Parses a `kind = run` experiment configuration (the same grammar the
 * qclab binary reads) and measures the configured algorithm. Pass a
 * negative seed_override to keep the configured seed. On success
 * *out_summary receives an owned handle. */
int32_t qclab_run_experiment(const char *config_text,
                             int64_t seed_override,
                             QclabSummary **out_summary);

/* Accessors; NaN / 0 on NULL handles. */
double qclab_summary_mean_queries(const QclabSummary *summary);
double qclab_summary_std_error(const QclabSummary *summary);
double qclab_summary_success_rate(const QclabSummary *summary);
uint64_t qclab_summary_trials(const QclabSummary *summary);

void qclab_summary_free(QclabSummary *summary);

/* Runs a verification suite ("simon", "or-gap", "majority", "parity",
 * "bounds", "all") at the given seed, writing result files to out_dir
 * unless it is NULL. Returns QCLAB_OK when every criterion passed and
 * QCLAB_VERIFY_FAILURES when some failed. */
int32_t qclab_verify_suite(const char *suite, uint64_t seed, const char *out_dir);

#ifdef __cplusplus
}
#endif

#endif /* QCLAB_H */

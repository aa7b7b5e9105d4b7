/* C interface to the fusion-assurance library. Objects are opaque handles
 * released with their *_destroy function; every call returns an fa_status and
 * leaves a message in fa_last_error_message() on failure. */
#ifndef FUSIONASSURE_H
#define FUSIONASSURE_H

#include <stddef.h>
#include <stdint.h>

#if defined(FA_BUILDING_LIBRARY)
#define FA_API __attribute__((visibility("default")))
#else
#define FA_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fa_status {
  FA_OK = 0,
  FA_ERR_INVALID_ARGUMENT = 1,
  FA_ERR_INVALID_THRESHOLD = 2,
  FA_ERR_INVALID_COMPROMISE_COUNT = 3,
  FA_ERR_INVALID_PROBABILITY = 4,
  FA_ERR_DIVISION_BY_ZERO = 5,
  FA_ERR_REGIME = 6,
  FA_ERR_PRECONDITION = 7,
  FA_ERR_UNSUPPORTED_PF = 8,
  FA_ERR_SIZE_BOUND = 9,
  FA_ERR_NON_TERMINATION = 10,
  FA_ERR_BUFFER_TOO_SMALL = 11,
  FA_ERR_INTERNAL = 12
} fa_status;

typedef enum fa_scheme { FA_SCHEME_WITNESS = 0, FA_SCHEME_VARIANT_ROUND = 1, FA_SCHEME_ONE_ROUND = 2 } fa_scheme;

typedef enum fa_metric {
  FA_METRIC_OVERHEAD = 0,
  FA_METRIC_TRANSMITTED_BITS = 1,
  FA_METRIC_ROUND_DELAY = 2,
  FA_METRIC_POLLING_DELAY = 3
} fa_metric;

typedef enum fa_outcome { FA_OUTCOME_VALID = 0, FA_OUTCOME_NO_VALID = 1, FA_OUTCOME_FORGED = 2 } fa_outcome;

typedef struct fa_params {
  int nodes;       /* M */
  int threshold;   /* T */
  int compromised; /* C */
  double pf;
  int64_t agree_bits;    /* k */
  int64_t disagree_bits; /* k' */
  int64_t mac_bits;      /* k_w */
  int64_t result_bits;   /* K */
} fa_params;

typedef struct fa_sim_options {
  unsigned threads;        /* 0: one per hardware thread */
  int one_round_self_vote; /* nonzero: chosen node's result starts with one vote */
} fa_sim_options;

typedef struct fa_exact fa_exact;
typedef struct fa_aggregate fa_aggregate;
typedef struct fa_report fa_report;

FA_API const char* fa_version(void);
/* "Ok", "InvalidArgument", "RegimeError", ... */
FA_API const char* fa_status_name(fa_status status);
/* Message of the last failed call on this thread; "" if none. */
FA_API const char* fa_last_error_message(void);

FA_API fa_status fa_validate(const fa_params* params);
FA_API fa_status fa_scheme_parse(const char* name, fa_scheme* out);
FA_API const char* fa_scheme_name(fa_scheme scheme);
FA_API fa_status fa_metric_parse(const char* name, fa_metric* out);

/* Strings are returned with the two-call pattern: *needed receives the size
 * including the terminating NUL; buf may be NULL to query it. */

/* ---- exact expectations ---- */
FA_API fa_status fa_analytic(fa_scheme scheme, const fa_params* params, fa_exact** out);
/* vote_rng_depth < 0: deterministic enumeration (P_f in {0,1});
 * otherwise every coin sequence up to that depth. */
FA_API fa_status fa_oracle(fa_scheme scheme, const fa_params* params, int vote_rng_depth, fa_exact** out);
FA_API int fa_exact_has(const fa_exact* e, fa_metric metric);
FA_API fa_status fa_exact_value(const fa_exact* e, fa_metric metric, double* out);
FA_API fa_status fa_exact_fraction(const fa_exact* e, fa_metric metric, char* buf, size_t cap, size_t* needed);
/* *out is -1, 0 or 1. */
FA_API fa_status fa_exact_compare(const fa_exact* a, const fa_exact* b, fa_metric metric, int* out);
FA_API fa_status fa_exact_outcome_fraction(const fa_exact* e, fa_outcome outcome, char* buf, size_t cap,
                                           size_t* needed);
FA_API void fa_exact_destroy(fa_exact* e);

/* Probability that guessed k_w-bit MACs get a forged result accepted. */
FA_API fa_status fa_forged_acceptance(int nodes, int threshold, int mac_bits, double* value, char* buf, size_t cap,
                                      size_t* needed);
/* *holds = probability <= 2^exponent, compared exactly. */
FA_API fa_status fa_forged_acceptance_at_most_pow2(int nodes, int threshold, int mac_bits, int exponent, int* holds);

/* ---- Monte Carlo ---- */
FA_API fa_status fa_simulate(fa_scheme scheme, const fa_params* params, uint64_t trials, uint64_t seed,
                             const fa_sim_options* options, fa_aggregate** out);
FA_API fa_status fa_aggregate_mean(const fa_aggregate* a, fa_metric metric, double* out);
FA_API fa_status fa_aggregate_stderr(const fa_aggregate* a, fa_metric metric, double* out);
FA_API fa_status fa_aggregate_trials(const fa_aggregate* a, uint64_t* out);
FA_API fa_status fa_aggregate_outcome_count(const fa_aggregate* a, fa_outcome outcome, uint64_t* out);
FA_API fa_status fa_aggregate_max_correct_copies(const fa_aggregate* a, int* out);
FA_API fa_status fa_aggregate_max_round_delay(const fa_aggregate* a, int* out);
FA_API void fa_aggregate_destroy(fa_aggregate* a);

/* ---- CSV reports ---- */
typedef struct fa_table_options {
  uint64_t trials;
  uint64_t seed;
  int64_t one_round_agree_bits;
  fa_sim_options sim;
} fa_table_options;

typedef struct fa_sweep_spec {
  int nodes;
  int threshold;
  const fa_scheme* schemes;
  size_t scheme_count;
  const double* pfs;
  size_t pf_count;
  int c_first;
  int c_last; /* c_last < c_first: no points */
  int64_t agree_bits;
  int64_t disagree_bits;
  int64_t mac_bits;
  int64_t result_bits;
  uint64_t trials;
  uint64_t seed;
  int has_metric; /* nonzero: only emit `metric` */
  fa_metric metric;
  fa_sim_options sim;
} fa_sweep_spec;

FA_API fa_status fa_report_analytic(fa_scheme scheme, const fa_params* params, fa_report** out);
FA_API fa_status fa_report_simulate(fa_scheme scheme, const fa_params* params, uint64_t trials, uint64_t seed,
                                    const fa_sim_options* options, fa_report** out);
FA_API fa_status fa_report_table(int table, const fa_table_options* options, fa_report** out);
FA_API fa_status fa_report_sweep(const fa_sweep_spec* spec, fa_report** out);
FA_API fa_status fa_report_add_comment(fa_report* r, const char* line);
FA_API fa_status fa_report_row_count(const fa_report* r, size_t* out);
FA_API fa_status fa_report_csv(const fa_report* r, char* buf, size_t cap, size_t* needed);
FA_API void fa_report_destroy(fa_report* r);

#ifdef __cplusplus
}
#endif

#endif

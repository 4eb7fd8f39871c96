#ifndef IDONEAL_IDONEAL_H
#define IDONEAL_IDONEAL_H

#include <stddef.h>
#include <stdint.h>

#if defined(IDN_BUILDING_LIBRARY)
#define IDN_API __attribute__((visibility("default")))
#else
#define IDN_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum idn_status {
  IDN_OK = 0,
  IDN_ERR_INVALID_ARGUMENT = 1, /* null pointer, malformed number */
  IDN_ERR_DOMAIN = 2,
  IDN_ERR_TOO_LARGE = 3,
  IDN_ERR_CONFIG = 4,
  IDN_ERR_CHECKPOINT_MISMATCH = 5,
  IDN_ERR_IO = 6,
  IDN_ERR_VERIFICATION = 7,
  IDN_ERR_INTERNAL = 8
} idn_status;

/* Message for the most recent failure on the calling thread; never NULL. */
IDN_API const char* idn_last_error(void);
IDN_API const char* idn_version(void);

/* Frees strings and arrays returned through out-parameters. */
IDN_API void idn_string_free(char* s);
IDN_API void idn_u64_array_free(uint64_t* a);

/* Discriminants and |d| values are passed as decimal text so that values past
   2^63 are exact. Report functions return JSON with sorted keys; `digits` is
   the number of significant digits shown for reals (0 selects 12). */

/* ---- forms ---- */
IDN_API idn_status idn_class_number(const char* d, uint64_t* out);
IDN_API idn_status idn_genus_report_json(const char* d, char** out_json);
IDN_API idn_status idn_reduce(const int64_t form[3], int64_t out[3]);
IDN_API idn_status idn_is_reduced(const int64_t form[3], int* out);
IDN_API idn_status idn_is_ambiguous(const int64_t form[3], int* out);
IDN_API idn_status idn_idoneal_scan(uint64_t max_n, uint64_t** out, size_t* count);

/* ---- arithmetic ---- */
IDN_API idn_status idn_kronecker(const char* top, const char* bottom, int* out);
/* x in [0, m1 m2) with x = r1 mod m1 and x = r2 mod m2, as decimal text. */
IDN_API idn_status idn_crt(uint64_t r1, uint64_t m1, uint64_t r2, uint64_t m2, char** out);
/* Lowercase hex SHA-256 of a byte buffer. */
IDN_API idn_status idn_sha256_hex(const void* data, size_t size, char** out);

/* ---- analytic ---- */
/* out = {q1, q2, k} */
IDN_API idn_status idn_choose_k(const char* d, uint64_t out[3]);
/* k = 0 selects choose_k(d). */
IDN_API idn_status idn_identity_json(const char* d, uint64_t k, int digits, char** out_json);

/* ---- bounds ---- */
/* abs_d may be an exact integer (sign ignored) or a decimal such as "9.8e18";
   P = 0 omits the hypothesis checks, which need an exact integer. */
IDN_API idn_status idn_bounds_json(const char* abs_d, uint64_t P, int digits, char** out_json);
IDN_API idn_status idn_threshold_json(const char* abs_d, int digits, char** out_json);

/* ---- sieve ---- */
typedef struct idn_sieve_config idn_sieve_config;
typedef struct idn_sieve_outcome idn_sieve_outcome;

typedef enum idn_p2_tally { IDN_P2_TALLY_AUTO = 0, IDN_P2_TALLY_EXACT = 1, IDN_P2_TALLY_AGGREGATE = 2 } idn_p2_tally;

/* Defaults: P1 primes 3..19, P2 primes 23..47, sieve primes 16th..169th,
   limit 1e6, small cutoff 1e7, cadence 8. */
IDN_API idn_status idn_sieve_config_new(idn_sieve_config** out);
IDN_API void idn_sieve_config_free(idn_sieve_config* cfg);
IDN_API idn_status idn_sieve_config_set_p1(idn_sieve_config* cfg, const uint32_t* primes, size_t count);
IDN_API idn_status idn_sieve_config_set_p2(idn_sieve_config* cfg, const uint32_t* primes, size_t count);
/* 1-based indices into the prime sequence, inclusive. */
IDN_API idn_status idn_sieve_config_set_sieve_range(idn_sieve_config* cfg, uint32_t lo_index, uint32_t hi_index);
IDN_API idn_status idn_sieve_config_set_limit(idn_sieve_config* cfg, uint64_t limit);
IDN_API idn_status idn_sieve_config_set_small_cutoff(idn_sieve_config* cfg, uint64_t cutoff);
IDN_API idn_status idn_sieve_config_set_cadence(idn_sieve_config* cfg, uint32_t cadence);
IDN_API idn_status idn_sieve_config_set_p2_tally(idn_sieve_config* cfg, idn_p2_tally mode);
IDN_API idn_status idn_sieve_config_validate(const idn_sieve_config* cfg);
IDN_API idn_status idn_sieve_config_json(const idn_sieve_config* cfg, char** out_json);
IDN_API idn_status idn_sieve_config_hash(const idn_sieve_config* cfg, char** out_hex);
/* 32 * P1 * P2 as decimal text. */
IDN_API idn_status idn_sieve_config_coverage(const idn_sieve_config* cfg, char** out);

typedef void (*idn_progress_fn)(uint64_t outer_done, uint64_t outer_total, uint64_t survivors, void* user);

typedef struct idn_run_options {
  unsigned threads;            /* 0 means 1 */
  const char* checkpoint_path; /* NULL disables checkpointing */
  uint64_t block_size;         /* outer indices per checkpoint block; 0 = automatic */
  uint64_t max_blocks;         /* stop after this many blocks; 0 = run to completion */
  idn_progress_fn progress;    /* may be NULL */
  void* progress_user;
} idn_run_options;

IDN_API void idn_run_options_init(idn_run_options* opts);
IDN_API idn_status idn_sieve_run(const idn_sieve_config* cfg, const idn_run_options* opts, idn_sieve_outcome** out);
IDN_API void idn_sieve_outcome_free(idn_sieve_outcome* o);
IDN_API int idn_sieve_outcome_complete(const idn_sieve_outcome* o);
IDN_API size_t idn_sieve_outcome_survivor_count(const idn_sieve_outcome* o);
/* Copies survivor |d| values and passed-sieve flags; either array may be NULL. */
IDN_API idn_status idn_sieve_outcome_survivors(const idn_sieve_outcome* o, uint64_t* abs_d, uint8_t* passed_sieve);
IDN_API idn_status idn_sieve_outcome_summary_json(const idn_sieve_outcome* o, char** out_json);
IDN_API idn_status idn_sieve_outcome_csv(const idn_sieve_outcome* o, char** out_csv);
/* Full check of every survivor; JSON lists the one-class-per-genus |d|. */
IDN_API idn_status idn_sieve_outcome_check_json(const idn_sieve_outcome* o, int use_prefilter, char** out_json);

/* Reduced form (p, b, k) of discriminant d proving d is not one class per genus. */
IDN_API idn_status idn_witness_json(const char* d, uint32_t p, char** out_json);

#ifdef __cplusplus
}
#endif

#endif

/* C interface to the cheblab library. */
#ifndef CHEBLAB_H
#define CHEBLAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(CHEBLAB_BUILDING)
#define CHEBLAB_API __attribute__((visibility("default")))
#else
#define CHEBLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every function returning int returns one of these; on
 * failure cheblab_last_error() describes it (per thread). */
enum {
  CHEBLAB_OK = 0,
  CHEBLAB_ERR_INVALID_ARGUMENT = 1,
  CHEBLAB_ERR_DEGREE_MISMATCH = 2,
  CHEBLAB_ERR_ORDER_CAP_EXCEEDED = 3,
  CHEBLAB_ERR_TRIVIAL_GROUP = 4,
  CHEBLAB_ERR_NOT_NORMAL = 5,
  CHEBLAB_ERR_UNKNOWN_GROUP = 6,
  CHEBLAB_ERR_UNKNOWN_CLASS_ID = 7,
  CHEBLAB_ERR_DELTA_OUT_OF_RANGE = 8,
  CHEBLAB_ERR_BAD_MODULUS = 9,
  CHEBLAB_ERR_INVALID_SCENARIO = 10,
  CHEBLAB_ERR_ZERO_WEIGHT = 11,
  CHEBLAB_ERR_HORIZON_EXCEEDS_POPULATION = 12,
  CHEBLAB_ERR_RAMIFIED_PRIME = 13,
  CHEBLAB_ERR_NOT_PRIME = 14,
  CHEBLAB_ERR_REDUCIBLE = 15,
  CHEBLAB_ERR_BOUND_TOO_LARGE = 16,
  CHEBLAB_ERR_CONFIG = 17,
  CHEBLAB_ERR_PARSE = 18,
  CHEBLAB_ERR_IO = 19,
  CHEBLAB_ERR_OVERFLOW = 20,
  CHEBLAB_ERR_NULL_POINTER = 90,
  CHEBLAB_ERR_INTERNAL = 99
};

enum { CHEBLAB_FORMAT_CSV = 0, CHEBLAB_FORMAT_JSON = 1, CHEBLAB_FORMAT_TEXT = 2 };

typedef struct cheblab_group cheblab_group;
typedef struct cheblab_sigma cheblab_sigma;
typedef struct cheblab_sim_config cheblab_sim_config;
typedef struct cheblab_fields cheblab_fields;

CHEBLAB_API const char* cheblab_version(void);
/* Message of the last failure on this thread; "" if none. */
CHEBLAB_API const char* cheblab_last_error(void);
CHEBLAB_API const char* cheblab_status_name(int status);
/* Releases strings returned through char** out-parameters. */
CHEBLAB_API void cheblab_free_string(char* s);

/* Groups: a catalog name (C2, C3, S3, S4, D4, S5, C3wrC2) or a catalog JSON
 * file. CHEBLAB_ORDER_CAP bounds the order. */
CHEBLAB_API int cheblab_group_open(const char* name_or_path, cheblab_group** out);
CHEBLAB_API void cheblab_group_free(cheblab_group* group);
CHEBLAB_API int cheblab_group_order(const cheblab_group* group, uint64_t* out);
CHEBLAB_API int cheblab_group_class_count(const cheblab_group* group, size_t* out);
/* Order, kappa, class table, normal subgroups and a(G). TEXT, JSON, or CSV
 * (the class table). */
CHEBLAB_API int cheblab_group_report(const cheblab_group* group, int format, char** out);

/* Independence bound at nonadmissible density delta ("0.3", "3/10"), with
 * the per-class table. bound_out may be NULL. */
CHEBLAB_API int cheblab_bound_report(const cheblab_group* group, const char* delta, int format, char** out,
                                     uint64_t* bound_out);

/* Sigma rule document. group may be NULL if the document names one. A
 * subfield rule without a Frobenius seed uses default_seed. */
CHEBLAB_API int cheblab_sigma_parse(const char* json, const cheblab_group* group, uint64_t default_seed,
                                    cheblab_sigma** out);
CHEBLAB_API int cheblab_sigma_read(const char* path, const cheblab_group* group, uint64_t default_seed,
                                   cheblab_sigma** out);
/* Allow-all rule over the group. */
CHEBLAB_API int cheblab_sigma_allow_all(const cheblab_group* group, cheblab_sigma** out);
CHEBLAB_API void cheblab_sigma_free(cheblab_sigma* sigma);

/* Euler-factor constant terms and running product over primes <= bound. */
CHEBLAB_API int cheblab_euler_report(const cheblab_sigma* sigma, uint64_t prime_bound, int format, char** out);

/* Simulation configs; relative sigma paths resolve against base_dir (may be
 * NULL for "."). */
CHEBLAB_API int cheblab_sim_config_parse(const char* json, const char* base_dir, cheblab_sim_config** out);
CHEBLAB_API int cheblab_sim_config_read(const char* path, cheblab_sim_config** out);
/* Replaces the seed and/or T; NULL leaves a value unchanged. */
CHEBLAB_API int cheblab_sim_config_override(cheblab_sim_config* config, const uint64_t* seed,
                                            const uint64_t* horizon);
CHEBLAB_API void cheblab_sim_config_free(cheblab_sim_config* config);
/* Survival curve table. Output does not depend on jobs. */
CHEBLAB_API int cheblab_simulate(const cheblab_sim_config* config, unsigned jobs, int format, char** out);

/* Cubic field tables. */
CHEBLAB_API int cheblab_fields_enumerate(uint64_t disc_bound, unsigned jobs, cheblab_fields** out);
CHEBLAB_API int cheblab_fields_read(const char* path, cheblab_fields** out);
CHEBLAB_API void cheblab_fields_free(cheblab_fields* fields);
CHEBLAB_API int cheblab_fields_count(const cheblab_fields* fields, size_t* out);
CHEBLAB_API int cheblab_fields_records(const cheblab_fields* fields, int format, char** out);
/* Proportion experiment over S3 records; sigma must be over S3. */
CHEBLAB_API int cheblab_fields_proportions(const cheblab_fields* fields, const cheblab_sigma* sigma,
                                           uint64_t prime_bound, int format, char** out);
/* Splitting-type frequencies at p among S3 records. */
CHEBLAB_API int cheblab_fields_frequencies(const cheblab_fields* fields, uint64_t p, uint64_t counts_out[3],
                                           uint64_t* ramified_out);

/* Gnuplot script for a CSV table; columns are 1-based. */
CHEBLAB_API int cheblab_plot_script(const char* data_file, const char* title, const char* x_label,
                                    int observed_column, int expected_column, int log_scale, char** out);

#ifdef __cplusplus
}
#endif

#endif

#ifndef GJSUM_GJSUM_H
#define GJSUM_GJSUM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define GJSUM_API __declspec(dllexport)
#else
#define GJSUM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gjsum_status {
    GJSUM_OK = 0,
    GJSUM_E_INVALID_ARGUMENT,
    GJSUM_E_NOT_PRIME,
    GJSUM_E_DEGREE_OUT_OF_RANGE,
    GJSUM_E_FIELD_TOO_LARGE,
    GJSUM_E_ZERO_ARGUMENT,
    GJSUM_E_NOT_A_SUBFIELD,
    GJSUM_E_NOT_COPRIME,
    GJSUM_E_NOT_IN_SUBFIELD,
    GJSUM_E_PRECISION_EXCEEDED,
    GJSUM_E_FIELD_MISMATCH,
    GJSUM_E_NOT_IN_MU_D,
    GJSUM_E_TRIVIAL_ADDITIVE,
    GJSUM_E_ARITY_TOO_SMALL,
    GJSUM_E_BAD_DIVISOR,
    GJSUM_E_NOT_ADMISSIBLE,
    GJSUM_E_TRIVIAL_CHARACTER,
    GJSUM_E_BAD_MODULUS,
    GJSUM_E_ZERO_EXPONENT,
    GJSUM_E_INTEGRALITY_VIOLATION,
    GJSUM_E_NOT_P_UNIT,
    GJSUM_E_BAD_PARAMETERS,
    GJSUM_E_BUDGET_EXCEEDED,
    GJSUM_E_PRECONDITION_FAILED,
    GJSUM_E_ARITHMETIC_OVERFLOW,
    GJSUM_E_IO,
    GJSUM_E_INTERNAL,
    GJSUM_E_OUT_OF_MEMORY
} gjsum_status;

/* Stable name such as "NotAdmissible"; never NULL. */
GJSUM_API const char* gjsum_status_name(gjsum_status status);
/* Message of the last failing call on this thread; empty when none. Valid until the next call. */
GJSUM_API const char* gjsum_last_error_message(void);
/* Releases strings returned through char** out-parameters. */
GJSUM_API void gjsum_string_free(char* text);

/* Finite field F_{p^f}. max_order 0 selects the default bound; cache_dir NULL falls back to
   the GJSUM_CACHE_DIR environment variable, and an empty string disables the cache. */
typedef struct gjsum_field gjsum_field;
GJSUM_API gjsum_status gjsum_field_open(uint64_t p, int f, uint64_t max_order, const char* cache_dir,
                                        gjsum_field** out);
GJSUM_API void gjsum_field_close(gjsum_field* field);
GJSUM_API uint64_t gjsum_field_order(const gjsum_field* field);

/* Values are serialized cyclotomic numbers "n:[c0,c1,...]"; weight is the Weil weight, or -1. */
GJSUM_API gjsum_status gjsum_gauss_sum(const gjsum_field* field, int d, int64_t a, uint32_t psi_c, char** value,
                                       int* weight);
GJSUM_API gjsum_status gjsum_jacobi_sum(const gjsum_field* field, int d, const int* avec, size_t n, char** value,
                                        int* weight);

typedef enum gjsum_variety_kind { GJSUM_ARTIN_SCHREIER = 0, GJSUM_FERMAT = 1 } gjsum_variety_kind;

typedef struct gjsum_variety {
    gjsum_variety_kind kind;
    uint64_t p;
    int f;
    int d;
    int n;      /* Fermat only */
    uint32_t c; /* Fermat only, base field encoding */
} gjsum_variety;

/* max_cells 0 selects the default budget; jobs 0 means one worker. */
GJSUM_API gjsum_status gjsum_count_points(const gjsum_variety* variety, int r, uint64_t max_cells, unsigned jobs,
                                          uint64_t* points);
/* JSON check report; passed receives 1 on pass. */
GJSUM_API gjsum_status gjsum_lefschetz(const gjsum_variety* variety, int r, uint64_t max_cells, unsigned jobs,
                                       char** report_json, int* passed);

/* Stickelberger factorization of j_d(avec) at the primes above p. */
GJSUM_API gjsum_status gjsum_stickelberger_check(int d, uint64_t p, const int* avec, size_t n, char** report_json,
                                                 int* passed);
/* Valuation vector of j_d(avec) and its weight consistency. */
GJSUM_API gjsum_status gjsum_weil_valuations(int d, uint64_t p, const int* avec, size_t n, char** report_json,
                                             int* passed);

/* Minus-part index report; hminus_table NULL selects the bundled table. Informational. */
GJSUM_API gjsum_status gjsum_report_stickelberger(int d, const char* hminus_table, char** report_json);
/* Rank report and relation lattice; passed reflects the rank check. */
GJSUM_API gjsum_status gjsum_report_weil(int d, uint64_t p, int arity_cap, char** report_json, int* passed);

typedef struct gjsum_verify_config gjsum_verify_config;
GJSUM_API gjsum_status gjsum_verify_config_new(gjsum_verify_config** out);
GJSUM_API void gjsum_verify_config_free(gjsum_verify_config* config);
/* suite: relations | stickelberger | weil | lefschetz | all */
GJSUM_API gjsum_status gjsum_verify_config_set_suite(gjsum_verify_config* config, const char* suite);
GJSUM_API gjsum_status gjsum_verify_config_set_max_q(gjsum_verify_config* config, uint64_t max_q);
GJSUM_API gjsum_status gjsum_verify_config_set_p(gjsum_verify_config* config, uint64_t p);
GJSUM_API gjsum_status gjsum_verify_config_set_f(gjsum_verify_config* config, int f);
GJSUM_API gjsum_status gjsum_verify_config_set_d(gjsum_verify_config* config, int d);
GJSUM_API gjsum_status gjsum_verify_config_add_only(gjsum_verify_config* config, const char* identity);
/* granularity: batch | instance */
GJSUM_API gjsum_status gjsum_verify_config_set_granularity(gjsum_verify_config* config, const char* granularity);
GJSUM_API gjsum_status gjsum_verify_config_set_jobs(gjsum_verify_config* config, unsigned jobs);
GJSUM_API gjsum_status gjsum_verify_config_set_max_arity(gjsum_verify_config* config, int max_arity);
GJSUM_API gjsum_status gjsum_verify_config_set_max_degree(gjsum_verify_config* config, int max_degree);
GJSUM_API gjsum_status gjsum_verify_config_set_max_order(gjsum_verify_config* config, uint64_t max_order);
GJSUM_API gjsum_status gjsum_verify_config_set_max_cells(gjsum_verify_config* config, uint64_t max_cells);
GJSUM_API gjsum_status gjsum_verify_config_set_cache_dir(gjsum_verify_config* config, const char* cache_dir);

/* Receives one JSON report per call, in deterministic order. A nonzero return stops delivery. */
typedef int (*gjsum_line_sink)(const char* line, void* user);
GJSUM_API gjsum_status gjsum_verify(const gjsum_verify_config* config, gjsum_line_sink sink, void* user,
                                    uint64_t* reports, uint64_t* failed);

#ifdef __cplusplus
}
#endif

#endif

#ifndef COLLATZ_COLLATZ_H
#define COLLATZ_COLLATZ_H

/*
 * C interface to libcollatz.
 *
 * Exact Syracuse-map dynamics (levels, trajectories, a memoized parallel
 * census sieve), the level-l exponential congruence equation with its
 * number-building map, window-constrained tuple lifting, and the ordered
 * partition / entropy bound calculus.
 *
 * Conventions:
 *   - Arbitrary-precision integers cross this interface as decimal strings.
 *   - Every char** output is a NUL-terminated string owned by the library;
 *     release it with collatz_free_string().
 *   - Tuples are comma-separated decimal entries, e.g. "4,3".
 *   - Functions returning collatz_status set a thread-local error message
 *     on failure, readable via collatz_last_error(). Output parameters are
 *     untouched on failure.
 *   - Handle accessors (getters on a census, trajectory, batch or report)
 *     expect a valid non-NULL handle.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define COLLATZ_API __declspec(dllexport)
#else
#define COLLATZ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum collatz_status {
    COLLATZ_OK = 0,
    COLLATZ_ERR_INVALID = 1,    /* malformed input or precondition violation */
    COLLATZ_ERR_UNRESOLVED = 2, /* iteration cap hit before reaching 1 */
    COLLATZ_ERR_BOUND = 3,      /* a gated bound-chain link failed */
    COLLATZ_ERR_INTERNAL = 4
} collatz_status;

COLLATZ_API const char* collatz_last_error(void);
COLLATZ_API void collatz_free_string(char* s);
COLLATZ_API const char* collatz_version(void);

/* ---- Syracuse dynamics ------------------------------------------------ */

/* 2-adic valuation of a positive integer. */
COLLATZ_API collatz_status collatz_ord2(const char* m_dec, uint64_t* out);

/* One Syracuse step (3n+1)/2^ord2(3n+1) of a positive odd integer. */
COLLATZ_API collatz_status collatz_syracuse_step(const char* n_dec,
                                                 char** out_dec);

typedef struct collatz_trajectory collatz_trajectory;

/* Iterate the Syracuse map from n until 1 is produced or cap steps elapse. */
COLLATZ_API collatz_status collatz_trajectory_new(const char* n_dec,
                                                  uint64_t cap,
                                                  collatz_trajectory** out);
COLLATZ_API size_t collatz_trajectory_len(const collatz_trajectory* t);
COLLATZ_API int collatz_trajectory_terminated(const collatz_trajectory* t);
COLLATZ_API collatz_status collatz_trajectory_value(const collatz_trajectory* t,
                                                    size_t i, char** out_dec);
COLLATZ_API collatz_status collatz_trajectory_valuation(
    const collatz_trajectory* t, size_t i, uint64_t* out);
COLLATZ_API void collatz_trajectory_free(collatz_trajectory* t);

/*
 * Least l with S^l(n) = 1, by convention 0 for n = 1. Returns
 * COLLATZ_ERR_UNRESOLVED (with *out_steps_tried = cap) if 1 was not
 * reached within cap steps. out_steps_tried may be NULL.
 */
COLLATZ_API collatz_status collatz_level(const char* n_dec, uint64_t cap,
                                         uint64_t* out_level,
                                         uint64_t* out_steps_tried);

/* ---- Census sieve ------------------------------------------------------ */

typedef struct collatz_census collatz_census;

/*
 * Exact per-level counts over all odd n <= x. shards partitions the range
 * into contiguous chunks evaluated concurrently; the result is identical
 * for any shard count. Numbers whose level exceeds cap are tallied as
 * unresolved, never dropped.
 */
COLLATZ_API collatz_status collatz_census_run(uint64_t x, uint64_t cap,
                                              uint32_t shards,
                                              collatz_census** out);
COLLATZ_API uint64_t collatz_census_x(const collatz_census* c);
COLLATZ_API uint64_t collatz_census_total(const collatz_census* c);
COLLATZ_API uint64_t collatz_census_unresolved(const collatz_census* c);
COLLATZ_API uint64_t collatz_census_max_level(const collatz_census* c);
COLLATZ_API uint64_t collatz_census_level_count(const collatz_census* c,
                                                uint64_t level);
/* CSV: header "level,count", one row per level, then total and unresolved. */
COLLATZ_API collatz_status collatz_census_to_csv(const collatz_census* c,
                                                 char** out);
/* JSON object with fields x, per_level, total, unresolved. */
COLLATZ_API collatz_status collatz_census_to_json(const collatz_census* c,
                                                  char** out);
COLLATZ_API collatz_status collatz_census_from_json(const char* json,
                                                    collatz_census** out);
COLLATZ_API void collatz_census_free(collatz_census* c);

/* ---- Congruence equation and the number-building map ------------------ */

/* Whether v solves the level-l congruence equation (l = tuple length). */
COLLATZ_API collatz_status collatz_is_primary_solution(const char* v_csv,
                                                       int* out);

/* n = 3^-l (2^(v_1+...+v_l) - sum_j 3^j 2^(v_{j+2}+...+v_l)), exact. */
COLLATZ_API collatz_status collatz_build_number(const char* v_csv,
                                                char** out_n_dec);

/* Trajectory valuations of n in reverse order; inverse of build_number. */
COLLATZ_API collatz_status collatz_decompose(const char* n_dec, uint64_t cap,
                                             char** out_v_csv);

/*
 * *out = 1 iff build_number(v) has level exactly l with trajectory
 * valuations matching v reversed, checked by direct iteration.
 */
COLLATZ_API collatz_status collatz_verify_inverse(const char* v_csv,
                                                  uint64_t cap, int* out);

/* ---- Window lifting and certified generation -------------------------- */

/* The six consecutive exponents v with floor((v+1)/6) = u-1. */
COLLATZ_API collatz_status collatz_window(uint64_t u, uint64_t* out_lo,
                                          uint64_t* out_hi);

/*
 * All v in the window of u_next whose appending to prefix solves the
 * next-level equation, in increasing order. prefix_csv may be "" or NULL
 * for the empty prefix.
 */
COLLATZ_API collatz_status collatz_extend_candidates(const char* prefix_csv,
                                                     uint64_t u_next,
                                                     char** out_csv);

/*
 * Canonical window-constrained solution above a free tuple. With
 * use_digit_rule nonzero, selects by the binary/ternary digit formula
 * instead of the smallest candidate. With strict nonzero, entries
 * divisible by 3 are rejected (the classical hypothesis on free tuples;
 * the construction itself never needs it).
 */
COLLATZ_API collatz_status collatz_lift(const char* u_csv, int use_digit_rule,
                                        int strict, char** out_v_csv);

typedef struct collatz_batch collatz_batch;

/*
 * Lift every free tuple of the given level with entry sum <= budget_sum,
 * verify each built number's level by direct iteration, and split the
 * results into admitted (n <= x) and oversize (n > x).
 */
COLLATZ_API collatz_status collatz_generate(const char* x_dec, uint32_t level,
                                            double budget_sum,
                                            collatz_batch** out);
COLLATZ_API uint64_t collatz_batch_admitted(const collatz_batch* b);
COLLATZ_API uint64_t collatz_batch_oversize(const collatz_batch* b);
COLLATZ_API size_t collatz_batch_len(const collatz_batch* b);
/* CSV: header "u_tuple,v_tuple,n,admitted"; tuple columns are quoted. */
COLLATZ_API collatz_status collatz_batch_to_csv(const collatz_batch* b,
                                                char** out);
COLLATZ_API void collatz_batch_free(collatz_batch* b);

/* Budget T(x,l) under a named rule ("paper" or "safe"). */
COLLATZ_API collatz_status collatz_budget_eval(const char* x_dec,
                                               uint32_t level,
                                               const char* rule, double* out);

/* ---- Bound calculus ---------------------------------------------------- */

COLLATZ_API collatz_status collatz_binary_entropy(double p, double* out);
COLLATZ_API collatz_status collatz_log2_binomial(uint64_t n, uint64_t l,
                                                 double* out);

/* #{(u_1,...,u_l) : integer u_j >= 2, sum <= y}, exact. */
COLLATZ_API collatz_status collatz_omega(double y, uint32_t l, char** out_dec);

/* omega(T(x,l), l) under a named budget rule ("paper" or "safe"). */
COLLATZ_API collatz_status collatz_partition_bound(uint64_t x, uint32_t l,
                                                   const char* rule,
                                                   char** out_dec);

/* The lower-bound exponent (1/3) H_2(1/(2 + (2/3) log_4 3)). */
COLLATZ_API double collatz_main_exponent(void);

COLLATZ_API collatz_status collatz_theorem_parameters(uint64_t x,
                                                      uint64_t* out_l,
                                                      uint64_t* out_n);

typedef struct collatz_report collatz_report;

/* Full inequality-chain audit of a census against the bound calculus. */
COLLATZ_API collatz_status collatz_report_run(const collatz_census* c,
                                              collatz_report** out);
COLLATZ_API int collatz_report_safe_ok(const collatz_report* r);
COLLATZ_API collatz_status collatz_report_to_json(const collatz_report* r,
                                                  char** out);
COLLATZ_API collatz_status collatz_report_to_text(const collatz_report* r,
                                                  char** out);
COLLATZ_API collatz_status collatz_report_to_csv(const collatz_report* r,
                                                 char** out);
COLLATZ_API void collatz_report_free(collatz_report* r);

#ifdef __cplusplus
}
#endif

#endif /* COLLATZ_COLLATZ_H */

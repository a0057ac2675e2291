/* C interface to the aspdrupe library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching _free function. Strings returned through char** must be released
 * with aspd_string_free. On failure a call returns a nonzero status and
 * aspd_last_error() describes it (per thread). */
#ifndef ASPDRUPE_H
#define ASPDRUPE_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define ASPD_API __declspec(dllexport)
#else
#define ASPD_API __attribute__((visibility("default")))
#endif

typedef enum {
    ASPD_OK = 0,
    ASPD_ERR_ARGUMENT = 1,    /* null handle or bad option value */
    ASPD_ERR_IO = 2,          /* file could not be read or written */
    ASPD_ERR_PARSE = 3,       /* malformed program or proof text */
    ASPD_ERR_UNSUPPORTED = 4, /* input outside the supported fragment */
    ASPD_ERR_LIMIT = 5,       /* enumeration or expansion guard exceeded */
    ASPD_ERR_INTERNAL = 6
} aspd_status;

typedef struct aspd_program aspd_program;

ASPD_API const char* aspd_last_error(void);
ASPD_API void aspd_string_free(char* s);

/* Programs (LP-lite text) */
ASPD_API aspd_status aspd_program_from_text(const char* text, aspd_program** out);
ASPD_API aspd_status aspd_program_from_file(const char* path, aspd_program** out);
ASPD_API void aspd_program_free(aspd_program* p);
ASPD_API size_t aspd_program_num_atoms(const aspd_program* p);
/* "<id> <name>" lines. */
ASPD_API aspd_status aspd_program_dictionary(const aspd_program* p, char** out);
/* Short-body normal form, as LP-lite text. */
ASPD_API aspd_status aspd_program_normalize(const aspd_program* p, char** out);

/* Solving */
typedef enum { ASPD_HEUR_LOWEST_TRUE = 0, ASPD_HEUR_LOWEST_FALSE = 1, ASPD_HEUR_RANDOM = 2 } aspd_heuristic;
typedef enum { ASPD_CONSISTENT = 0, ASPD_INCONSISTENT = 1, ASPD_UNKNOWN = 2 } aspd_verdict;

typedef struct {
    aspd_heuristic heuristic;
    int restarts;           /* nonzero: Luby restarts with forgetting */
    uint64_t seed;          /* for ASPD_HEUR_RANDOM */
    uint64_t max_conflicts; /* 0: unlimited */
    double max_seconds;     /* 0: unlimited */
    const char* proof_path; /* NULL: no proof file */
} aspd_solve_options;

ASPD_API void aspd_solve_options_init(aspd_solve_options* o);
/* answer_set (may be NULL) receives "{a, b}" for consistent programs. */
ASPD_API aspd_status aspd_solve(const aspd_program* p, const aspd_solve_options* o, aspd_verdict* verdict,
                                char** answer_set);

/* Checking */
typedef struct {
    int preloaded_completion;
    int strict_delete;
} aspd_check_options;

typedef enum { ASPD_CHECK_SUCCESS = 0, ASPD_CHECK_ERROR = 1, ASPD_CHECK_PARSE_FAILURE = 2 } aspd_check_outcome;

typedef struct {
    aspd_check_outcome outcome;
    size_t step; /* 1-based failing step, 0 for the final test */
    size_t line;
    char reason[256];
} aspd_check_report;

ASPD_API void aspd_check_options_init(aspd_check_options* o);
ASPD_API aspd_status aspd_check_text(const aspd_program* p, const char* proof_text, const aspd_check_options* o,
                                     aspd_check_report* report);
ASPD_API aspd_status aspd_check_file(const aspd_program* p, const char* proof_path, const aspd_check_options* o,
                                     aspd_check_report* report);

/* Oracle: answer sets as "{a, b}" lines, at most max_models (0: all). */
ASPD_API aspd_status aspd_oracle_answer_sets(const aspd_program* p, size_t max_models, size_t* count, char** out);

/* Differential fuzzing of solver, checker and oracle. */
typedef struct {
    size_t programs;
    size_t consistent;
    size_t inconsistent;
    size_t discrepancies;
} aspd_fuzz_summary;

/* details (may be NULL) receives one line per discrepancy. */
ASPD_API aspd_status aspd_fuzz(size_t count, size_t atoms, size_t max_rules, uint64_t seed, aspd_fuzz_summary* summary,
                               char** details);

#ifdef __cplusplus
}
#endif

#endif

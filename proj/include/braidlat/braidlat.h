#ifndef BRAIDLAT_BRAIDLAT_H
#define BRAIDLAT_BRAIDLAT_H

/*
 * C interface to the braidlat library: 3-braid normal forms, blowup and
 * (-2)-expansion strings, cycle lattices and their embeddings into the
 * standard negative diagonal lattice, and the knot classifier.
 *
 * Conventions
 *   - Every fallible call returns a braidlat_status. On failure a message is
 *     available from braidlat_last_error() on the calling thread until the
 *     next failing call on that thread.
 *   - Strings returned through char** out-parameters are NUL-terminated UTF-8
 *     JSON (or plain text where documented) owned by the caller and released
 *     with braidlat_string_free().
 *   - Handles are opaque. A handle may be shared between threads for reading;
 *     setters are not synchronized.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(BRAIDLAT_BUILDING)
#    define BRAIDLAT_API __declspec(dllexport)
#  else
#    define BRAIDLAT_API __declspec(dllimport)
#  endif
#else
#  define BRAIDLAT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum braidlat_status {
    BRAIDLAT_OK = 0,
    BRAIDLAT_ERR_PARSE = 1,         /* malformed braid word, string or list */
    BRAIDLAT_ERR_PRECONDITION = 2,  /* arguments violate an operation's contract */
    BRAIDLAT_ERR_BUDGET = 3,        /* a search cap was reached before a decision */
    BRAIDLAT_ERR_INTERNAL = 4,      /* a structural invariant failed */
    BRAIDLAT_ERR_IO = 5,            /* file could not be read */
    BRAIDLAT_ERR_ARGUMENT = 6       /* null pointer or out-of-range argument */
} braidlat_status;

typedef struct braidlat_config braidlat_config;
typedef struct braidlat_word braidlat_word;

BRAIDLAT_API const char* braidlat_version(void);
BRAIDLAT_API const char* braidlat_last_error(void);
BRAIDLAT_API const char* braidlat_status_name(braidlat_status status);
BRAIDLAT_API void braidlat_string_free(char* s);

/* Configuration. braidlat_config_new applies BRAIDLAT_BUDGET from the
 * environment to the search budget. */
BRAIDLAT_API braidlat_config* braidlat_config_new(void);
BRAIDLAT_API void braidlat_config_free(braidlat_config* cfg);
BRAIDLAT_API braidlat_status braidlat_config_set_search_budget(braidlat_config* cfg, uint64_t nodes);
BRAIDLAT_API braidlat_status braidlat_config_set_conjugacy_budget(braidlat_config* cfg, uint64_t states);
BRAIDLAT_API braidlat_status braidlat_config_set_threads(braidlat_config* cfg, unsigned threads);
BRAIDLAT_API braidlat_status braidlat_config_set_record_timing(braidlat_config* cfg, int enabled);
BRAIDLAT_API uint64_t braidlat_config_search_budget(const braidlat_config* cfg);

/* Braid words. Two grammars: compact (a = σ1, A = σ1⁻¹, b = σ2, B = σ2⁻¹)
 * and verbose (s1, s2^-3, ...). */
BRAIDLAT_API braidlat_status braidlat_word_parse(const char* text, braidlat_word** out);
BRAIDLAT_API void braidlat_word_free(braidlat_word* w);
BRAIDLAT_API braidlat_status braidlat_word_print(const braidlat_word* w, char** out);
BRAIDLAT_API braidlat_status braidlat_word_exponent_sum(const braidlat_word* w, int* out);
BRAIDLAT_API braidlat_status braidlat_word_components(const braidlat_word* w, int* out);
/* Canonical normal form of the unoriented closure as JSON {status, d, x, y}. */
BRAIDLAT_API braidlat_status braidlat_word_normal_form(const braidlat_config* cfg, const braidlat_word* w,
                                                       char** json_out);

/* Classifier. Any verdict, including NotAKnot and Inconclusive, is BRAIDLAT_OK. */
BRAIDLAT_API braidlat_status braidlat_classify(const braidlat_config* cfg, const braidlat_word* w,
                                               char** json_out);
/* CSV text with header name,braid. Output is JSON lines in input order; rows
 * that fail carry an inline error object. */
BRAIDLAT_API braidlat_status braidlat_classify_csv(const braidlat_config* cfg, const char* csv_text,
                                                   char** jsonl_out);

/* Cycle lattice of a spec (d, x[0..t), y[0..t), k copies). */
BRAIDLAT_API braidlat_status braidlat_gram(int d, const int* x, const int* y, size_t t, int k,
                                           char** json_out);
BRAIDLAT_API braidlat_status braidlat_signature(int d, const int* x, const int* y, size_t t, int* out);
/* Embedding search; with_reduction also runs the matching structure pipeline
 * on a found certificate and reports its trace. An exhausted search budget is
 * a result ("result": "budget"), not an error status. */
BRAIDLAT_API braidlat_status braidlat_embed(const braidlat_config* cfg, int d, const int* x, const int* y,
                                            size_t t, int k, int with_reduction, char** json_out);

/* Strings such as "[5,1,2,2,2,2,1]". */
BRAIDLAT_API braidlat_status braidlat_blowdown(const char* string_text, char** json_out);
BRAIDLAT_API braidlat_status braidlat_blowup(const char* string_text, const char* move, char** json_out);
BRAIDLAT_API braidlat_status braidlat_family1_check(const char* string_text, char** json_out);
BRAIDLAT_API braidlat_status braidlat_expand(const char* string_text, char** json_out);
/* moves_text: letters A and B, separators ignored ("A B", "[A,B]", "AB"). */
BRAIDLAT_API braidlat_status braidlat_family2gen(const braidlat_config* cfg, const char* moves_text,
                                                 char** json_out);

#ifdef __cplusplus
}
#endif

#endif /* BRAIDLAT_BRAIDLAT_H */

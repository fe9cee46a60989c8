#ifndef TORICSM_TORICSM_H
#define TORICSM_TORICSM_H

/*
 * C interface to the toricsm library.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_free function. Every call returns a tsm_status; on failure a
 * message is available from tsm_last_error() on the same thread. Strings
 * returned through char** out-parameters are heap allocated and must be
 * released with tsm_string_free. Integers cross the boundary as decimal
 * strings since they are unbounded.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  define TSM_API __declspec(dllexport)
#elif defined(__GNUC__)
#  define TSM_API __attribute__((visibility("default")))
#else
#  define TSM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tsm_status {
  TSM_OK = 0,
  TSM_CHECK_FAILED = 1,     /* a verification ran and found a failing check */
  TSM_PARSE_ERROR = 2,      /* unreadable file or malformed JSON */
  TSM_VALIDATION_ERROR = 3, /* well-formed input violating an invariant or precondition */
  TSM_INTERNAL_ERROR = 4
} tsm_status;

typedef struct tsm_fan tsm_fan;
typedef struct tsm_morphism tsm_morphism;
typedef struct tsm_function tsm_function;
typedef struct tsm_class tsm_class;
typedef struct tsm_closure tsm_closure;

TSM_API const char* tsm_last_error(void);
TSM_API void tsm_string_free(char* s);

/* Fans */
TSM_API tsm_status tsm_fan_load(const char* path, tsm_fan** out);
TSM_API tsm_status tsm_fan_from_json(const char* json_text, tsm_fan** out);
TSM_API void tsm_fan_free(tsm_fan* fan);
TSM_API tsm_status tsm_fan_to_json(const tsm_fan* fan, char** out);
TSM_API tsm_status tsm_fan_info(const tsm_fan* fan, int* dim, size_t* rays, size_t* cones, size_t* maximal_cones,
                                int* complete);
/* Validation report (JSON object) for a fan file; *valid is 1 for a smooth fan without issues. */
TSM_API tsm_status tsm_fan_validate_file(const char* path, char** report_json, int* valid);
/* Star subdivision at a cone given as comma-joined ray indices ("0,1"). */
TSM_API tsm_status tsm_fan_blowup(const tsm_fan* fan, const char* center_key, tsm_fan** out_fan,
                                  tsm_morphism** out_blow_down);

/* Morphisms */
TSM_API tsm_status tsm_morphism_load(const char* path, tsm_morphism** out);
TSM_API void tsm_morphism_free(tsm_morphism* m);
TSM_API tsm_status tsm_morphism_to_json(const tsm_morphism* m, const char* source_ref, const char* target_ref,
                                        char** out);
TSM_API tsm_status tsm_morphism_source(const tsm_morphism* m, tsm_fan** out);
TSM_API tsm_status tsm_morphism_target(const tsm_morphism* m, tsm_fan** out);

/* Constructible functions. `fan` may be NULL to use the file's own fan reference. */
TSM_API tsm_status tsm_function_load(const char* path, const tsm_fan* fan, tsm_function** out);
TSM_API void tsm_function_free(tsm_function* f);
TSM_API tsm_status tsm_function_values_json(const tsm_function* f, char** out);
TSM_API tsm_status tsm_function_euler(const tsm_function* f, char** out_decimal);
TSM_API tsm_status tsm_pushforward_function(const tsm_morphism* m, const tsm_function* f, tsm_function** out);

/* Cycle classes */
TSM_API tsm_status tsm_class_load(const char* path, const tsm_fan* fan, tsm_class** out);
TSM_API void tsm_class_free(tsm_class* c);
TSM_API tsm_status tsm_class_coefficients_json(const tsm_class* c, char** out);
TSM_API tsm_status tsm_class_to_text(const tsm_class* c, char** out);
TSM_API tsm_status tsm_class_degree(const tsm_class* c, char** out_decimal);
TSM_API tsm_status tsm_class_term_count(const tsm_class* c, size_t* out);
TSM_API tsm_status tsm_class_equal(const tsm_class* a, const tsm_class* b, int* equal);
TSM_API tsm_status tsm_pushforward_class(const tsm_morphism* m, const tsm_class* c, tsm_class** out);
TSM_API tsm_status tsm_csm(const tsm_function* f, tsm_class** out);

/* Good closures */
TSM_API tsm_status tsm_closure_load(const char* path, tsm_closure** out);
TSM_API void tsm_closure_free(tsm_closure* gc);
TSM_API tsm_status tsm_local_data(const tsm_closure* gc, tsm_class** out);

/*
 * Runs a verification suite over a corpus directory. *report_jsonl receives
 * one JSON object per check, newline separated. Returns TSM_CHECK_FAILED
 * when any check fails (the report is still produced).
 */
TSM_API tsm_status tsm_verify(const char* suite, const char* corpus_dir, uint64_t seed, uint32_t trials,
                              char** report_jsonl, size_t* checks, size_t* failures);
/* JSON array of {"file": ..., "digest": ...} for the corpus files. */
TSM_API tsm_status tsm_corpus_inputs(const char* corpus_dir, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* TORICSM_TORICSM_H */

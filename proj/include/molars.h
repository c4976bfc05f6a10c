/*
 * molars — model-transformation engine for the Hello World task corpus.
 *
 * C API over the C++ core: opaque handles, integer return codes, and
 * malloc'd strings released through molars_free_string(). Error details for
 * the last failing call on this thread come from molars_last_error().
 */
#ifndef MOLARS_H
#define MOLARS_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define MOLARS_API __declspec(dllexport)
#else
#define MOLARS_API __attribute__((visibility("default")))
#endif

/* Return codes. Parse/validate problems map to CLI exit 1, runtime
 * failures to exit 2. */
#define MOLARS_OK 0
#define MOLARS_E_PARSE 1
#define MOLARS_E_VALIDATE 2
#define MOLARS_E_RUNTIME 3
#define MOLARS_E_INVALID 4
#define MOLARS_E_MISMATCH 5

typedef struct molars_metamodel molars_metamodel;
typedef struct molars_model molars_model;
typedef struct molars_program molars_program;

MOLARS_API const char* molars_version(void);

/* Message of the last failing call on the calling thread. */
MOLARS_API const char* molars_last_error(void);

MOLARS_API void molars_free_string(char* s);

/* ---- metamodels ---- */

MOLARS_API int molars_metamodel_parse(const char* json_text, molars_metamodel** out);

/* Folds `extra` into `mm` (class/association name spaces must not collide). */
MOLARS_API int molars_metamodel_merge(molars_metamodel* mm, const molars_metamodel* extra);

/* Import adjustment: makes every association navigable both ways, naming
 * unnamed opposite ends "~<forwardEnd>" and marking them as augmented. */
MOLARS_API int molars_metamodel_augment(molars_metamodel* mm);

/* Adds temporary classes/associations from an extension document. */
MOLARS_API int molars_metamodel_extend(molars_metamodel* mm, const char* extension_json);

MOLARS_API void molars_metamodel_free(molars_metamodel* mm);

/* ---- models ---- */

MOLARS_API int molars_model_import(const char* json_text, const molars_metamodel* mm, molars_model** out);

/* Canonical JSON export. With `strip_to` set, elements that do not belong to
 * that metamodel (temporaries, other encodings) are dropped; NULL exports the
 * full content. */
MOLARS_API int molars_model_export(const molars_model* m, const molars_metamodel* strip_to, char** json_out);

/* Conformance sweep; returns MOLARS_E_VALIDATE and a newline-separated
 * report when violations exist. `report_out` may be NULL. */
MOLARS_API int molars_model_check(const molars_model* m, char** report_out);

MOLARS_API void molars_model_free(molars_model* m);

/* ---- programs ---- */

/* Parses and lowers a .mt program against a metamodel. On diagnostics,
 * returns MOLARS_E_PARSE and (optionally) the newline-separated list. */
MOLARS_API int molars_program_parse(const char* text, const char* filename, const molars_metamodel* mm,
                                    molars_program** out, char** diagnostics_out);

/* Runs one entry procedure (no arguments) against the model. With trace != 0
 * and trace_out != NULL, an execution log is returned. */
MOLARS_API int molars_program_run(const molars_program* p, const char* entry, molars_model* m, int trace,
                                  char** trace_out);

MOLARS_API void molars_program_free(molars_program* p);

/* ---- task corpus ---- */

typedef struct {
    const char* id;
    const char* program;
    const char* source_metamodel;
    const char* target_metamodel;
    const char* extension; /* NULL when the task needs none */
    const char* fixture;
    const char* entry;
} molars_task_info;

MOLARS_API int molars_task_count(void);
MOLARS_API int molars_task_get(int index, molars_task_info* out);
MOLARS_API int molars_task_find(const char* id, molars_task_info* out);

/* Loads one task (metamodels merged/augmented/extended, program lowered)
 * from a corpus directory and runs it against a model document. Outputs are
 * optional; summaries are JSON. */
MOLARS_API int molars_task_run(const char* corpus_dir, const char* task_id, const char* model_json,
                               char** engine_summary_out, char** exported_out);

/* Independent oracle prediction for a task over an input model document. */
MOLARS_API int molars_oracle_predict(const char* corpus_dir, const char* task_id, const char* model_json,
                                     char** summary_out);

/* Runs the full verification harness: every task on its fixture (engine,
 * oracle, expected files, export checks) plus `random_models` seeded random
 * models. Returns MOLARS_OK or MOLARS_E_MISMATCH; the human-readable report
 * is always produced. */
MOLARS_API int molars_corpus_check(const char* corpus_dir, uint64_t seed, int random_models, int jobs,
                                   int write_expected, char** report_out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* MOLARS_H */

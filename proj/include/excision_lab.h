#ifndef EXCISION_LAB_H
#define EXCISION_LAB_H

/* C interface to the excision-lab analysis engine.
 *
 * Usage pattern: create a workspace, load a description of rings / homs /
 * squares / towers (TOML text), set options, run a command against a named
 * object, read the report, free everything. All returned strings are owned
 * by the library; release them with exl_string_free. A workspace is not
 * thread-safe; use one per thread.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct exl_workspace exl_workspace;

typedef enum exl_status {
  EXL_OK = 0,
  EXL_ERR_PARSE = 1,        /* malformed input text */
  EXL_ERR_ARGUMENT = 2,     /* unknown object, bad option value, ... */
  EXL_ERR_UNSUPPORTED = 3,  /* construction outside the supported fragment */
  EXL_ERR_LIMIT = 4,        /* finiteness/termination cap exceeded */
  EXL_ERR_INTERNAL = 5
} exl_status;

const char* exl_version(void);

exl_workspace* exl_workspace_create(void);
void exl_workspace_destroy(exl_workspace* ws);

/* Last error message for this workspace, empty string if none. Valid until
 * the next call on the same workspace. */
const char* exl_last_error(const exl_workspace* ws);

exl_status exl_load_string(exl_workspace* ws, const char* toml_text);
exl_status exl_load_file(exl_workspace* ws, const char* path);

/* Options: "degree", "horizon", "mod", "mu-max", "cache", "quiet",
 * "allow-inconclusive". Values are decimal strings or paths. */
exl_status exl_set_option(exl_workspace* ws, const char* key, const char* value);

/* Run a command ("analyze", "tor", "verify-square", ...) against a named
 * object from the loaded input. On success *report_out receives a JSON
 * document (schema excision-lab/v1). *exit_code_out (optional) receives the
 * CLI exit convention: 0 pass, 1 fail, 3 inconclusive without the
 * allow-inconclusive option. */
exl_status exl_run(exl_workspace* ws, const char* command, const char* object,
                   char** report_out, int* exit_code_out);

/* Render a v1 JSON report as a human-readable table. */
exl_status exl_render_report(exl_workspace* ws, const char* report_json, char** text_out);

void exl_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* EXCISION_LAB_H */

#include "excision_lab.h"

// placeholder implementation; filled in once the io module lands
struct exl_workspace {};
extern "C" {
const char* exl_version(void) { return "0.0.0-dev"; }
exl_workspace* exl_workspace_create(void) { return new exl_workspace; }
void exl_workspace_destroy(exl_workspace* ws) { delete ws; }
const char* exl_last_error(const exl_workspace*) { return ""; }
exl_status exl_load_string(exl_workspace*, const char*) { return EXL_ERR_INTERNAL; }
exl_status exl_load_file(exl_workspace*, const char*) { return EXL_ERR_INTERNAL; }
exl_status exl_set_option(exl_workspace*, const char*, const char*) { return EXL_ERR_INTERNAL; }
exl_status exl_run(exl_workspace*, const char*, const char*, char**, int*) { return EXL_ERR_INTERNAL; }
exl_status exl_render_report(exl_workspace*, const char*, char**) { return EXL_ERR_INTERNAL; }
void exl_string_free(char* s) { delete[] s; }
}

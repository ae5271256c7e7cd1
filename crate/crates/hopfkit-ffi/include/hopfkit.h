#ifndef HOPFKIT_H
#define HOPFKIT_H

/* This header is generated by cbindgen from hopfkit-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes of every FFI entry point.
 */
typedef enum HopfkitStatus {
  HOPFKIT_STATUS_OK = 0,
  HOPFKIT_STATUS_VERIFICATION_FAILED = 1,
  HOPFKIT_STATUS_INVALID_INPUT = 2,
  HOPFKIT_STATUS_RESOURCE_LIMIT = 3,
  HOPFKIT_STATUS_NULL_ARGUMENT = 4,
  HOPFKIT_STATUS_INTERNAL_PANIC = 5,
} HopfkitStatus;

/**
 * An opaque, loaded scenario.
 */
typedef struct HopfkitScenario HopfkitScenario;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Most recent error message on this thread, or NULL. The caller owns the
 * returned string and must free it with `hopfkit_string_free`.
 */
char *hopfkit_last_error(void);

/**
 * Release a string handed out by this library.
 */
void hopfkit_string_free(char *s);

/**
 * Parse a scenario from JSON text into an opaque handle.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HopfkitStatus hopfkit_scenario_from_json(const char *json, struct HopfkitScenario **out);

/**
 * Load a scenario file into an opaque handle.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum HopfkitStatus hopfkit_scenario_from_file(const char *path, struct HopfkitScenario **out);

/**
 * Release a scenario handle.
 *
 * # Safety
 * `s` must be a handle from this library or NULL; it must not be used
 * afterwards.
 */
void hopfkit_scenario_free(struct HopfkitScenario *s);

/**
 * Run the scenario's pipelines. `cap` overrides the truncation cap when
 * nonzero. When `out_dir` is non-NULL the reports and exports are written
 * there; when `report_json` is non-NULL it receives the verification
 * report as JSON.
 *
 * # Safety
 * `s` must be a live scenario handle; the string arguments must be
 * NUL-terminated when non-NULL.
 */
enum HopfkitStatus hopfkit_run(const struct HopfkitScenario *s,
                               uintptr_t cap,
                               const char *out_dir,
                               char **report_json);

/**
 * Copy one of the canonical gallery scenarios into `out`.
 *
 * # Safety
 * `name` must be NUL-terminated; `out` must be a valid pointer.
 */
enum HopfkitStatus hopfkit_gallery(const char *name, char **out);

/**
 * Export one object of the scenario (`klambda`, `kgamma`, `bw`, `bv`,
 * `U`, `A`, `twist`) as structure-constant JSON.
 *
 * # Safety
 * `s` must be a live handle, `id` NUL-terminated, `out` valid.
 */
enum HopfkitStatus hopfkit_export(const struct HopfkitScenario *s, const char *id, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* HOPFKIT_H */

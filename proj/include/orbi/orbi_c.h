/* C interface to the orbifold circle-action library.
 *
 * All functions return a status code:
 *   0   success (the run itself may still report violations via
 *       orbi_result_exit_code: 0 ok, 2 inequality violation, 3 inconclusive)
 *   64  malformed input (schema/JSON errors)
 *   1   any other failure
 * On failure a message is written to errbuf (if non-NULL), truncated to
 * errlen including the terminator.
 *
 * Results are opaque handles; strings returned by accessor functions stay
 * valid until orbi_result_free.
 */
#ifndef ORBI_C_H
#define ORBI_C_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct orbi_result orbi_result;

const char* orbi_version(void);

/* Run a scenario given as a JSON string / loaded from a file. */
int orbi_run_scenario_json(const char* scenario_json, orbi_result** out, char* errbuf,
                           size_t errlen);
int orbi_run_scenario_file(const char* path, orbi_result** out, char* errbuf, size_t errlen);

/* Report document (JSON) for a completed run. */
const char* orbi_result_report(const orbi_result* r);

/* Aggregated exit code: 0 ok, 2 violation, 3 numerically inconclusive. */
int orbi_result_exit_code(const orbi_result* r);

/* CSV and other artifacts produced by the run. */
size_t orbi_result_artifact_count(const orbi_result* r);
const char* orbi_result_artifact_name(const orbi_result* r, size_t i);
const char* orbi_result_artifact_content(const orbi_result* r, size_t i);

/* Write report.json and artifacts into a directory (created if needed). */
int orbi_result_write(const orbi_result* r, const char* out_dir, char* errbuf, size_t errlen);

void orbi_result_free(orbi_result* r);

#ifdef __cplusplus
}
#endif

#endif /* ORBI_C_H */

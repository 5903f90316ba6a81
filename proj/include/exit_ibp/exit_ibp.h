/* C interface to the exit-time Monte Carlo library. */
#ifndef EXIT_IBP_H
#define EXIT_IBP_H

#include <stdint.h>

#if defined(EXIT_IBP_BUILDING_LIBRARY)
#define EIBP_API __attribute__((visibility("default")))
#else
#define EIBP_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. They double as the CLI exit codes. */
#define EIBP_OK 0
#define EIBP_VALIDATION_FAILED 1
#define EIBP_CONFIG_ERROR 2
#define EIBP_RUNTIME_ERROR 3
#define EIBP_INVALID_ARGUMENT 4

typedef struct eibp_experiment eibp_experiment;

typedef struct eibp_result {
  double mean;
  double std_error;
  double ci99_lo;
  double ci99_hi;
  double excess_kurtosis;
  double seconds;
  int64_t count;
  int64_t abort_count;
  int has_median_of_means;
  double median_of_means;
  int has_bias_band;
  double bias_band;
} eibp_result;

/* Called once per acceptance criterion; `line` is the formatted PASS/FAIL line. */
typedef void (*eibp_criterion_callback)(int id, const char* name, int passed, const char* line, void* user);

EIBP_API const char* eibp_version(void);

/* Message for the last failed call on this thread; "" if none. */
EIBP_API const char* eibp_last_error(void);

EIBP_API int eibp_experiment_from_json(const char* json_text, eibp_experiment** out);
EIBP_API int eibp_experiment_from_file(const char* path, eibp_experiment** out);
EIBP_API void eibp_experiment_free(eibp_experiment* experiment);

/* Runs the experiment and keeps the result inside the handle. */
EIBP_API int eibp_experiment_run(eibp_experiment* experiment, eibp_result* out);

/* After a run: append the CSV row to `path`, or to the configured output_csv
   when `path` is NULL, and write the path dump when dump_paths is configured. */
EIBP_API int eibp_experiment_save(const eibp_experiment* experiment, const char* path);

/* After a run: human-readable summary, owned by the handle. */
EIBP_API const char* eibp_experiment_summary(const eibp_experiment* experiment);

/* Runs the "smoke" or "full" acceptance suite. Returns EIBP_OK when every
   criterion passes, EIBP_VALIDATION_FAILED otherwise, EIBP_CONFIG_ERROR for an
   unknown suite. */
EIBP_API int eibp_validate(const char* suite, eibp_criterion_callback callback, void* user);

#ifdef __cplusplus
}
#endif

#endif /* EXIT_IBP_H */

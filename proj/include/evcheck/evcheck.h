#ifndef EVCHECK_H
#define EVCHECK_H

/*
 * evcheck — explicit-value software model checker, C API.
 *
 * The core is a C++ library exposed here behind opaque handles and error
 * codes.  A task (parsed and lowered program) is immutable and may be
 * verified concurrently from several threads; an options object must not be
 * mutated while a verification that uses it is running.  Every object
 * returned by a *_create / ev_task_* / ev_verify call is owned by the caller
 * and released with the matching *_free function.
 *
 * Functions returning ev_status report failure details through
 * ev_last_error(), which is thread-local.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined _WIN32
#define EVCHECK_API __declspec(dllexport)
#else
#define EVCHECK_API __attribute__((visibility("default")))
#endif

typedef enum ev_status {
  EV_OK = 0,
  EV_ERR_PARSE = 1,       /* syntax / validation error in the input program */
  EV_ERR_IO = 2,          /* file could not be read */
  EV_ERR_INVALID_ARG = 3, /* null handle or unsupported option value */
  EV_ERR_INTERNAL = 4
} ev_status;

typedef enum ev_verdict {
  EV_VERDICT_SAFE = 0,
  EV_VERDICT_UNSAFE = 1,
  EV_VERDICT_UNKNOWN = 2
} ev_verdict;

typedef struct ev_task ev_task;
typedef struct ev_options ev_options;
typedef struct ev_result ev_result;

EVCHECK_API const char* ev_version(void);

/* Message of the most recent failure in this thread; never NULL. */
EVCHECK_API const char* ev_last_error(void);

/* ---- tasks ---------------------------------------------------------- */

EVCHECK_API ev_status ev_task_from_file(const char* path, ev_task** out);
EVCHECK_API ev_status ev_task_from_string(const char* name, const char* source,
                                          ev_task** out);
EVCHECK_API void ev_task_free(ev_task* task);
EVCHECK_API const char* ev_task_name(const ev_task* task);

/* ---- options ---------------------------------------------------------- */

EVCHECK_API ev_options* ev_options_create(void);
EVCHECK_API void ev_options_free(ev_options* options);

/* "explicit-cegar" (default) or "explicit-full". */
EVCHECK_API ev_status ev_options_set_mode(ev_options* options,
                                          const char* mode);
/* "prune" (default) or "restart". */
EVCHECK_API ev_status ev_options_set_refinement(ev_options* options,
                                                const char* strategy);
/* "dfs" (default) or "bfs". */
EVCHECK_API ev_status ev_options_set_traversal(ev_options* options,
                                               const char* traversal);
EVCHECK_API ev_status ev_options_set_scoped_precision(ev_options* options,
                                                      int enabled);
EVCHECK_API ev_status ev_options_set_state_budget(ev_options* options,
                                                  uint64_t budget);
EVCHECK_API ev_status ev_options_set_max_refinements(ev_options* options,
                                                     uint64_t limit);
/* 0 disables the time limit. */
EVCHECK_API ev_status ev_options_set_time_limit_ms(ev_options* options,
                                                   uint64_t limit_ms);
EVCHECK_API ev_status ev_options_set_arg_dump(ev_options* options,
                                              int enabled);

/* ---- verification ------------------------------------------------------- */

EVCHECK_API ev_status ev_verify(const ev_task* task, const ev_options* options,
                                ev_result** out);
EVCHECK_API void ev_result_free(ev_result* result);

EVCHECK_API ev_verdict ev_result_verdict(const ev_result* result);
/* Reason for an UNKNOWN verdict ("StateBudgetExceeded", ...); "" otherwise. */
EVCHECK_API const char* ev_result_reason(const ev_result* result);
/* "SAFE", "UNSAFE" or "UNKNOWN(<reason>)". */
EVCHECK_API const char* ev_result_verdict_string(const ev_result* result);

EVCHECK_API uint64_t ev_result_refinements(const ev_result* result);
EVCHECK_API uint64_t ev_result_arg_nodes_created(const ev_result* result);
EVCHECK_API uint64_t ev_result_arg_nodes_peak(const ev_result* result);
EVCHECK_API uint64_t ev_result_max_tracked_vars(const ev_result* result);
EVCHECK_API uint64_t ev_result_wall_time_ms(const ev_result* result);

/* Violation witness text; NULL unless the verdict is UNSAFE. */
EVCHECK_API const char* ev_result_witness(const ev_result* result);
/* Final abstract reachability graph; NULL unless requested via options. */
EVCHECK_API const char* ev_result_arg_dump(const ev_result* result);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* EVCHECK_H */

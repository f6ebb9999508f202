#include "evcheck/evcheck.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "lower.hpp"
#include "parser.hpp"
#include "verify.hpp"

using namespace evcheck;

struct ev_task {
  std::string name;
  Problem problem;
};

struct ev_options {
  RunConfig config;
};

struct ev_result {
  VerifyResult result;
  std::string reason;
  std::string verdict_string;
  std::string witness_text;
  bool has_witness = false;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

ev_status guard_invalid(const char* message) {
  set_error(message);
  return EV_ERR_INVALID_ARG;
}

}  // namespace

extern "C" {

const char* ev_version(void) { return "evcheck 1.0.0"; }

const char* ev_last_error(void) { return g_last_error.c_str(); }

ev_status ev_task_from_string(const char* name, const char* source,
                              ev_task** out) {
  if (!name || !source || !out)
    return guard_invalid("ev_task_from_string: null argument");
  *out = nullptr;
  try {
    auto task = new ev_task{name, load_program(source)};
    *out = task;
    return EV_OK;
  } catch (const ParseError& error) {
    set_error(std::string(name) + ":" + error.what());
    return EV_ERR_PARSE;
  } catch (const std::exception& error) {
    set_error(error.what());
    return EV_ERR_INTERNAL;
  }
}

ev_status ev_task_from_file(const char* path, ev_task** out) {
  if (!path || !out) return guard_invalid("ev_task_from_file: null argument");
  *out = nullptr;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    set_error(std::string("cannot open '") + path + "'");
    return EV_ERR_IO;
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    set_error(std::string("error while reading '") + path + "'");
    return EV_ERR_IO;
  }
  return ev_task_from_string(path, buffer.str().c_str(), out);
}

void ev_task_free(ev_task* task) { delete task; }

const char* ev_task_name(const ev_task* task) {
  return task ? task->name.c_str() : "";
}

ev_options* ev_options_create(void) { return new ev_options(); }

void ev_options_free(ev_options* options) { delete options; }

ev_status ev_options_set_mode(ev_options* options, const char* mode) {
  if (!options || !mode) return guard_invalid("set_mode: null argument");
  if (std::strcmp(mode, "explicit-cegar") == 0)
    options->config.mode = Mode::ExplicitCegar;
  else if (std::strcmp(mode, "explicit-full") == 0)
    options->config.mode = Mode::ExplicitFull;
  else
    return guard_invalid("set_mode: expected explicit-cegar or explicit-full");
  return EV_OK;
}

ev_status ev_options_set_refinement(ev_options* options,
                                    const char* strategy) {
  if (!options || !strategy)
    return guard_invalid("set_refinement: null argument");
  if (std::strcmp(strategy, "prune") == 0)
    options->config.refinement = RefinementStrategy::Prune;
  else if (std::strcmp(strategy, "restart") == 0)
    options->config.refinement = RefinementStrategy::Restart;
  else
    return guard_invalid("set_refinement: expected prune or restart");
  return EV_OK;
}

ev_status ev_options_set_traversal(ev_options* options,
                                   const char* traversal) {
  if (!options || !traversal)
    return guard_invalid("set_traversal: null argument");
  if (std::strcmp(traversal, "dfs") == 0)
    options->config.traversal = Traversal::Dfs;
  else if (std::strcmp(traversal, "bfs") == 0)
    options->config.traversal = Traversal::Bfs;
  else
    return guard_invalid("set_traversal: expected dfs or bfs");
  return EV_OK;
}

ev_status ev_options_set_scoped_precision(ev_options* options, int enabled) {
  if (!options) return guard_invalid("set_scoped_precision: null options");
  options->config.scoped_precision = enabled != 0;
  return EV_OK;
}

ev_status ev_options_set_state_budget(ev_options* options, uint64_t budget) {
  if (!options) return guard_invalid("set_state_budget: null options");
  if (budget == 0)
    return guard_invalid("set_state_budget: budget must be positive");
  options->config.state_budget = budget;
  return EV_OK;
}

ev_status ev_options_set_max_refinements(ev_options* options, uint64_t limit) {
  if (!options) return guard_invalid("set_max_refinements: null options");
  if (limit == 0)
    return guard_invalid("set_max_refinements: limit must be positive");
  options->config.max_refinements = limit;
  return EV_OK;
}

ev_status ev_options_set_time_limit_ms(ev_options* options,
                                       uint64_t limit_ms) {
  if (!options) return guard_invalid("set_time_limit_ms: null options");
  options->config.time_limit_ms = limit_ms;
  return EV_OK;
}

ev_status ev_options_set_arg_dump(ev_options* options, int enabled) {
  if (!options) return guard_invalid("set_arg_dump: null options");
  options->config.want_arg_dump = enabled != 0;
  return EV_OK;
}

ev_status ev_verify(const ev_task* task, const ev_options* options,
                    ev_result** out) {
  if (!task || !out) return guard_invalid("ev_verify: null argument");
  *out = nullptr;
  RunConfig config = options ? options->config : RunConfig();
  try {
    auto result = new ev_result();
    result->result = run_verification(task->problem, config);
    result->reason = result->result.reason;
    result->verdict_string = result->result.verdict_string();
    if (result->result.witness) {
      result->witness_text = result->result.witness->render();
      result->has_witness = true;
    }
    *out = result;
    return EV_OK;
  } catch (const std::exception& error) {
    set_error(error.what());
    return EV_ERR_INTERNAL;
  }
}

void ev_result_free(ev_result* result) { delete result; }

ev_verdict ev_result_verdict(const ev_result* result) {
  switch (result->result.verdict) {
    case Verdict::Safe:
      return EV_VERDICT_SAFE;
    case Verdict::Unsafe:
      return EV_VERDICT_UNSAFE;
    default:
      return EV_VERDICT_UNKNOWN;
  }
}

const char* ev_result_reason(const ev_result* result) {
  return result->reason.c_str();
}

const char* ev_result_verdict_string(const ev_result* result) {
  return result->verdict_string.c_str();
}

uint64_t ev_result_refinements(const ev_result* result) {
  return result->result.stats.refinements;
}

uint64_t ev_result_arg_nodes_created(const ev_result* result) {
  return result->result.stats.nodes_created;
}

uint64_t ev_result_arg_nodes_peak(const ev_result* result) {
  return result->result.stats.nodes_peak;
}

uint64_t ev_result_max_tracked_vars(const ev_result* result) {
  return result->result.stats.max_tracked;
}

uint64_t ev_result_wall_time_ms(const ev_result* result) {
  return result->result.stats.wall_ms;
}

const char* ev_result_witness(const ev_result* result) {
  return result->has_witness ? result->witness_text.c_str() : nullptr;
}

const char* ev_result_arg_dump(const ev_result* result) {
  return result->result.arg_dump.empty() ? nullptr
                                         : result->result.arg_dump.c_str();
}

}  // extern "C"

#ifndef EVCHECK_WITNESS_HPP
#define EVCHECK_WITNESS_HPP

// Violation witnesses: the feasible error path rendered as an ordered trace
// of (source line, operation, post-state) plus one concrete input vector for
// the nondet() occurrences along the path.

#include <string>
#include <vector>

#include "cfa.hpp"
#include "cpa.hpp"
#include "domain.hpp"

namespace evcheck {

struct WitnessInput {
  std::size_t index = 0;  // occurrence order along the path, 1-based
  int line = 0;
  Int value;
  bool forced = false;  // pinned by an equality; unforced inputs default to 0
};

struct WitnessRow {
  int line = 0;
  std::string operation;
  std::string post_state;
};

struct Witness {
  std::vector<WitnessInput> inputs;
  std::vector<WitnessRow> rows;
  int error_line = 0;

  std::string render() const;
};

// Replays the path with full precision, recording post-states and picking
// input values: an equality that pins a nondet-derived value forces the
// corresponding input, all remaining inputs default to 0.
Witness build_witness(const Problem& problem, const Path& path);

}  // namespace evcheck

#endif

#ifndef EVCHECK_REFINE_HPP
#define EVCHECK_REFINE_HPP

// Feasibility check and precision extraction for infeasible error paths.

#include <cstdint>
#include <optional>

#include "cfa.hpp"
#include "cpa.hpp"
#include "domain.hpp"

namespace evcheck {

struct FeasibilityResult {
  bool feasible = false;
  // 1-based index of the first operation whose strongest post is
  // contradicting; only set when infeasible.
  std::size_t pivot = 0;
  // Final abstract assignment of the full-precision replay; only meaningful
  // when feasible.
  Assignment final_state;
};

// Replays the path's constraint sequence with full precision from the empty
// assignment.
FeasibilityResult is_feasible(const Path& path);

// Precision extraction from an infeasible error path via inductive
// interpolation: position i gets the variables of the i-th interpolant.
// Locations off the path stay at the default (empty) precision.
ProgramPrecision refine(const Path& path, const VarNames& names);

// Widens per-location precisions to the whole scope of each variable: a
// variable tracked anywhere becomes tracked at every location of its
// declaring function instance (everywhere for globals).
ProgramPrecision scope_precision(const ProgramPrecision& pi, const Cfa& cfa);

// Replays the path under the given program precision (precision adjustment
// after every step, as the exploration would do) and reports whether a
// contradicting state is reached before the final location — i.e. whether
// the refined precision rules the path out of future explorations.
bool path_eliminated(const Path& path, const ProgramPrecision& pi);

}  // namespace evcheck

#endif

#ifndef EVCHECK_INTERPOLATE_HPP
#define EVCHECK_INTERPOLATE_HPP

// Interpolation for the explicit-value domain: given a contradicting pair,
// produce something implied by the first part that still contradicts the
// second part and mentions only shared variables.  No solver involved; the
// procedure works by greedy variable elimination over strongest posts.

#include "domain.hpp"
#include "ops.hpp"

namespace evcheck {

// Interpolant for a pair of abstract variable assignments with
// conj(vminus, vplus) contradicting.  Starts from the restriction of vminus
// to def(vplus) and then greedily drops bindings that keep the conjunction
// contradicting, for a minimal definition range.  The elimination order is
// lexicographic by variable name.  Throws std::invalid_argument when the
// pair is not contradicting.
Assignment interpolate_assignments(const Assignment& vminus,
                                   const Assignment& vplus,
                                   const VarNames& names);

// Interpolant for a pair of constraint sequences whose concatenation is
// contradicting.  The result is a sequence of assume constraints [x == c]
// over pairwise distinct variables; when the first sequence is already
// contradicting by itself the canonical variable-free false constraint
// [0 == 1] is returned.  Throws std::invalid_argument when the
// concatenation is not contradicting.
ConstraintSeq interpolate(const ConstraintSeq& gamma_minus,
                          const ConstraintSeq& gamma_plus,
                          const VarNames& names);

}  // namespace evcheck

#endif

#ifndef EVCHECK_TEST_PROGEN_HPP
#define EVCHECK_TEST_PROGEN_HPP

// Random task generator for the oracle-equivalence runs.  Programs are kept
// within the fragment where the analysis is exact relative to concrete
// enumeration over a bounded nondet range:
//   - plain variables carry constants and appear in arbitrary comparisons;
//   - nondet-fed variables appear in at most one equality guard against a
//     constant inside the range, and that guard never sits inside a loop;
//   - extra nondet noise flows only into write-only variables;
//   - loops count a dedicated variable up to a literal bound (<= 6 rounds).

#include <string>

#include "test_rng.hpp"

namespace testsupport {

std::string generate_program(Rng& rng);

}  // namespace testsupport

#endif

#ifndef EVCHECK_LOWER_HPP
#define EVCHECK_LOWER_HPP

#include <string>

#include "ast.hpp"
#include "cfa.hpp"

namespace evcheck {

// Validates the program and lowers it to a control-flow automaton:
// assignments become assign edges, conditions become pairs of complementary
// assume edges (boolean connectives are compiled to branching), non-recursive
// calls are inlined with locals renamed per call site, and every error()
// call marks an error location.  Throws ParseError on invalid input.
Problem build_problem(const ast::Program& program);

// parse() followed by build_problem().
Problem load_program(const std::string& source);

}  // namespace evcheck

#endif

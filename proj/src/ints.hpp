#ifndef EVCHECK_INTS_HPP
#define EVCHECK_INTS_HPP

#include <boost/multiprecision/cpp_int.hpp>

namespace evcheck {

// Program variables range over mathematical integers; no wrap-around.
// cpp_int division truncates toward zero and the remainder takes the sign
// of the dividend, matching the language semantics documented in
// docs/language.md.
using Int = boost::multiprecision::cpp_int;

}  // namespace evcheck

#endif

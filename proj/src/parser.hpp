#ifndef EVCHECK_PARSER_HPP
#define EVCHECK_PARSER_HPP

#include <stdexcept>
#include <string>

#include "ast.hpp"

namespace evcheck {

// Raised for syntax errors, name-resolution errors and unsupported
// constructs (e.g. recursion).  Positions are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

ast::Program parse(const std::string& source);

}  // namespace evcheck

#endif

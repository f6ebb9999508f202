#ifndef EVCHECK_AST_HPP
#define EVCHECK_AST_HPP

// Abstract syntax tree produced by the parser, before name resolution and
// lowering to a control-flow automaton.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ints.hpp"

namespace evcheck::ast {

struct Pos {
  int line = 0;
  int column = 0;
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Expr {
  enum class Kind { Literal, Var, Neg, Add, Sub, Mul, Div, Mod, Nondet, Call };

  Kind kind = Kind::Literal;
  Pos pos;
  Int literal;
  std::string name;  // Var, Call
  ExprPtr lhs, rhs;  // Neg uses lhs
  std::vector<ExprPtr> args;  // Call
};

struct Cond;
using CondPtr = std::unique_ptr<Cond>;

struct Cond {
  enum class Kind { Cmp, And, Or, Not };
  enum class CmpKind { Eq, Ne, Lt, Le, Gt, Ge };

  Kind kind = Kind::Cmp;
  Pos pos;
  CmpKind cmp = CmpKind::Eq;
  ExprPtr lhs, rhs;   // Cmp
  CondPtr a, b;       // And/Or; Not uses a
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Stmt {
  enum class Kind { Decl, Assign, If, While, Call, Return, Block };

  Kind kind = Kind::Decl;
  Pos pos;
  std::string name;                // Decl target, Assign target, Call callee
  ExprPtr value;                   // Decl initializer (optional), Assign rhs,
                                   // Return value (optional)
  std::vector<ExprPtr> args;       // Call
  CondPtr cond;                    // If, While
  std::vector<StmtPtr> body;       // If-then, While body, Block
  std::vector<StmtPtr> else_body;  // If-else
};

struct Param {
  std::string name;
  Pos pos;
};

struct Function {
  std::string name;
  bool returns_int = false;
  std::vector<Param> params;
  std::vector<StmtPtr> body;
  Pos pos;
  bool is_prototype = false;
};

struct Global {
  std::string name;
  ExprPtr init;  // may be null
  Pos pos;
};

struct Program {
  std::vector<Global> globals;
  std::vector<Function> functions;
};

}  // namespace evcheck::ast

#endif

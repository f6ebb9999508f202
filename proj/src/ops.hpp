#ifndef EVCHECK_OPS_HPP
#define EVCHECK_OPS_HPP

// Expressions, comparison predicates and the two operation kinds (assume,
// assignment) that label control-flow edges.  Expression trees are immutable
// and shared; operations are cheap value types.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ints.hpp"

namespace evcheck {

using VarId = std::uint32_t;

// Resolves a variable id to its display name (for rendering and for the
// deterministic, name-ordered variable elimination during interpolation).
using VarNames = std::function<std::string(VarId)>;

VarNames fallback_var_names();

enum class ExprKind : std::uint8_t {
  Literal,
  Var,
  Neg,
  Add,
  Sub,
  Mul,
  Div,
  Mod,
  Nondet,
};

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  ExprKind kind = ExprKind::Literal;
  Int literal;       // Literal
  VarId var = 0;     // Var
  ExprPtr lhs, rhs;  // Neg uses lhs only
};

namespace expr {
ExprPtr lit(Int value);
ExprPtr var(VarId id);
ExprPtr neg(ExprPtr operand);
ExprPtr bin(ExprKind op, ExprPtr lhs, ExprPtr rhs);
ExprPtr nondet();
}  // namespace expr

// Invokes fn for every variable occurring in e (with repetitions).
void for_each_var(const ExprPtr& e, const std::function<void(VarId)>& fn);
bool contains_nondet(const ExprPtr& e);
std::string render(const ExprPtr& e, const VarNames& names);

enum class CmpOp : std::uint8_t { Eq, Ne, Lt, Le, Gt, Ge };

CmpOp negate(CmpOp op);
bool compare(CmpOp op, const Int& lhs, const Int& rhs);
std::string to_string(CmpOp op);

// An atomic comparison between two expressions.  Boolean connectives are
// compiled away when the control-flow automaton is built.
struct Pred {
  CmpOp op = CmpOp::Eq;
  ExprPtr lhs, rhs;

  Pred negated() const { return Pred{negate(op), lhs, rhs}; }
};

std::string render(const Pred& p, const VarNames& names);

struct Operation {
  enum class Kind : std::uint8_t { Assume, Assign };

  Kind kind = Kind::Assume;
  Pred pred;           // Assume
  VarId target = 0;    // Assign
  ExprPtr value;       // Assign

  static Operation assume(Pred p);
  static Operation assign(VarId target, ExprPtr value);

  bool is_assume() const { return kind == Kind::Assume; }
  bool is_assign() const { return kind == Kind::Assign; }
};

void for_each_var(const Operation& op, const std::function<void(VarId)>& fn);
std::string render(const Operation& op, const VarNames& names);

}  // namespace evcheck

#endif

#include "ops.hpp"

#include <sstream>
#include <stdexcept>

namespace evcheck {

VarNames fallback_var_names() {
  return [](VarId id) { return "v" + std::to_string(id); };
}

namespace expr {

ExprPtr lit(Int value) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Literal;
  n->literal = std::move(value);
  return n;
}

ExprPtr var(VarId id) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Var;
  n->var = id;
  return n;
}

ExprPtr neg(ExprPtr operand) {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Neg;
  n->lhs = std::move(operand);
  return n;
}

ExprPtr bin(ExprKind op, ExprPtr lhs, ExprPtr rhs) {
  auto n = std::make_shared<ExprNode>();
  n->kind = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return n;
}

ExprPtr nondet() {
  auto n = std::make_shared<ExprNode>();
  n->kind = ExprKind::Nondet;
  return n;
}

}  // namespace expr

void for_each_var(const ExprPtr& e, const std::function<void(VarId)>& fn) {
  if (!e) return;
  switch (e->kind) {
    case ExprKind::Literal:
    case ExprKind::Nondet:
      return;
    case ExprKind::Var:
      fn(e->var);
      return;
    case ExprKind::Neg:
      for_each_var(e->lhs, fn);
      return;
    default:
      for_each_var(e->lhs, fn);
      for_each_var(e->rhs, fn);
      return;
  }
}

bool contains_nondet(const ExprPtr& e) {
  if (!e) return false;
  switch (e->kind) {
    case ExprKind::Nondet:
      return true;
    case ExprKind::Literal:
    case ExprKind::Var:
      return false;
    case ExprKind::Neg:
      return contains_nondet(e->lhs);
    default:
      return contains_nondet(e->lhs) || contains_nondet(e->rhs);
  }
}

namespace {

int precedence(ExprKind k) {
  switch (k) {
    case ExprKind::Mul:
    case ExprKind::Div:
    case ExprKind::Mod:
      return 2;
    case ExprKind::Add:
    case ExprKind::Sub:
      return 1;
    default:
      return 3;  // atoms and unary minus
  }
}

const char* op_token(ExprKind k) {
  switch (k) {
    case ExprKind::Add:
      return " + ";
    case ExprKind::Sub:
      return " - ";
    case ExprKind::Mul:
      return " * ";
    case ExprKind::Div:
      return " / ";
    case ExprKind::Mod:
      return " % ";
    default:
      return "?";
  }
}

void render_into(const ExprPtr& e, const VarNames& names, int parent_prec,
                 std::string& out) {
  switch (e->kind) {
    case ExprKind::Literal:
      out += e->literal.str();
      return;
    case ExprKind::Var:
      out += names(e->var);
      return;
    case ExprKind::Nondet:
      out += "nondet()";
      return;
    case ExprKind::Neg:
      out += "-";
      render_into(e->lhs, names, precedence(ExprKind::Neg), out);
      return;
    default: {
      const int prec = precedence(e->kind);
      const bool parens = prec < parent_prec;
      if (parens) out += "(";
      render_into(e->lhs, names, prec, out);
      out += op_token(e->kind);
      render_into(e->rhs, names, prec + 1, out);
      if (parens) out += ")";
      return;
    }
  }
}

}  // namespace

std::string render(const ExprPtr& e, const VarNames& names) {
  std::string out;
  render_into(e, names, 0, out);
  return out;
}

CmpOp negate(CmpOp op) {
  switch (op) {
    case CmpOp::Eq:
      return CmpOp::Ne;
    case CmpOp::Ne:
      return CmpOp::Eq;
    case CmpOp::Lt:
      return CmpOp::Ge;
    case CmpOp::Le:
      return CmpOp::Gt;
    case CmpOp::Gt:
      return CmpOp::Le;
    case CmpOp::Ge:
      return CmpOp::Lt;
  }
  throw std::logic_error("bad CmpOp");
}

bool compare(CmpOp op, const Int& lhs, const Int& rhs) {
  switch (op) {
    case CmpOp::Eq:
      return lhs == rhs;
    case CmpOp::Ne:
      return lhs != rhs;
    case CmpOp::Lt:
      return lhs < rhs;
    case CmpOp::Le:
      return lhs <= rhs;
    case CmpOp::Gt:
      return lhs > rhs;
    case CmpOp::Ge:
      return lhs >= rhs;
  }
  throw std::logic_error("bad CmpOp");
}

std::string to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Eq:
      return "==";
    case CmpOp::Ne:
      return "!=";
    case CmpOp::Lt:
      return "<";
    case CmpOp::Le:
      return "<=";
    case CmpOp::Gt:
      return ">";
    case CmpOp::Ge:
      return ">=";
  }
  throw std::logic_error("bad CmpOp");
}

std::string render(const Pred& p, const VarNames& names) {
  return render(p.lhs, names) + " " + to_string(p.op) + " " +
         render(p.rhs, names);
}

Operation Operation::assume(Pred p) {
  Operation op;
  op.kind = Kind::Assume;
  op.pred = std::move(p);
  return op;
}

Operation Operation::assign(VarId target, ExprPtr value) {
  Operation op;
  op.kind = Kind::Assign;
  op.target = target;
  op.value = std::move(value);
  return op;
}

void for_each_var(const Operation& op, const std::function<void(VarId)>& fn) {
  if (op.is_assume()) {
    for_each_var(op.pred.lhs, fn);
    for_each_var(op.pred.rhs, fn);
  } else {
    fn(op.target);
    for_each_var(op.value, fn);
  }
}

std::string render(const Operation& op, const VarNames& names) {
  if (op.is_assume()) return "[" + render(op.pred, names) + "]";
  return names(op.target) + " = " + render(op.value, names);
}

}  // namespace evcheck

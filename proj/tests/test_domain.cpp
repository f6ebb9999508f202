#include <doctest.h>

#include <vector>

#include "domain.hpp"
#include "test_rng.hpp"

using namespace evcheck;
using testsupport::Rng;

namespace {

constexpr VarId X = 0, Y = 1, Z = 2, W = 3;

Assignment asg(std::initializer_list<std::pair<VarId, int>> bindings) {
  Assignment out;
  for (const auto& [var, value] : bindings) out = out.with(var, Int(value));
  return out;
}

ExprPtr vx(VarId id) { return expr::var(id); }
ExprPtr lit(int v) { return expr::lit(Int(v)); }
ExprPtr add(ExprPtr a, ExprPtr b) {
  return expr::bin(ExprKind::Add, std::move(a), std::move(b));
}

// Total concrete stores over the first `vars` variables, values in [lo, hi].
std::vector<std::vector<std::pair<VarId, Int>>> all_stores(int vars, int lo,
                                                           int hi) {
  std::vector<std::vector<std::pair<VarId, Int>>> out{{}};
  for (int v = 0; v < vars; ++v) {
    std::vector<std::vector<std::pair<VarId, Int>>> next;
    for (const auto& store : out) {
      for (int value = lo; value <= hi; ++value) {
        auto extended = store;
        extended.emplace_back(static_cast<VarId>(v), Int(value));
        next.push_back(std::move(extended));
      }
    }
    out = std::move(next);
  }
  return out;
}

Assignment random_assignment(Rng& rng, int vars, int lo, int hi) {
  Assignment out;
  for (int v = 0; v < vars; ++v)
    if (rng.chance(55))
      out = out.with(static_cast<VarId>(v), Int(rng.range(lo, hi)));
  return out;
}

Operation random_op(Rng& rng, int vars, int lo, int hi) {
  VarId target = static_cast<VarId>(rng.range(0, vars - 1));
  if (rng.chance(50)) {
    // assignment: target := var|const|var+const|nondet
    switch (rng.range(0, 3)) {
      case 0:
        return Operation::assign(target, lit(rng.range(lo, hi)));
      case 1:
        return Operation::assign(
            target, vx(static_cast<VarId>(rng.range(0, vars - 1))));
      case 2:
        return Operation::assign(
            target, add(vx(static_cast<VarId>(rng.range(0, vars - 1))),
                        lit(rng.range(lo, hi))));
      default:
        return Operation::assign(target, expr::nondet());
    }
  }
  static const CmpOp ops[] = {CmpOp::Eq, CmpOp::Ne, CmpOp::Lt,
                              CmpOp::Le, CmpOp::Gt, CmpOp::Ge};
  Pred pred;
  pred.op = ops[rng.range(0, 5)];
  pred.lhs = vx(target);
  pred.rhs = rng.chance(60)
                 ? lit(rng.range(lo, hi))
                 : vx(static_cast<VarId>(rng.range(0, vars - 1)));
  return Operation::assume(pred);
}

// Concrete one-step execution of op from cd; nondet branches over [lo, hi].
// Mirrors the documented language semantics (division by zero behaves like
// nondet), independently of the abstract transfer code.
std::vector<std::vector<std::pair<VarId, Int>>> execute_concrete(
    const Operation& op, const std::vector<std::pair<VarId, Int>>& cd, int lo,
    int hi) {
  auto read = [&](VarId var) {
    for (const auto& [v, value] : cd)
      if (v == var) return value;
    return Int(0);
  };
  std::function<std::vector<Int>(const ExprPtr&)> eval_all =
      [&](const ExprPtr& e) -> std::vector<Int> {
    switch (e->kind) {
      case ExprKind::Literal:
        return {e->literal};
      case ExprKind::Var:
        return {read(e->var)};
      case ExprKind::Nondet: {
        std::vector<Int> out;
        for (int v = lo; v <= hi; ++v) out.push_back(Int(v));
        return out;
      }
      case ExprKind::Neg: {
        std::vector<Int> out;
        for (const Int& v : eval_all(e->lhs)) out.push_back(-v);
        return out;
      }
      default: {
        std::vector<Int> out;
        for (const Int& a : eval_all(e->lhs)) {
          for (const Int& b : eval_all(e->rhs)) {
            switch (e->kind) {
              case ExprKind::Add:
                out.push_back(a + b);
                break;
              case ExprKind::Sub:
                out.push_back(a - b);
                break;
              case ExprKind::Mul:
                out.push_back(a * b);
                break;
              case ExprKind::Div:
              case ExprKind::Mod:
                if (b == 0) {
                  for (int v = lo; v <= hi; ++v) out.push_back(Int(v));
                } else {
                  out.push_back(e->kind == ExprKind::Div ? Int(a / b) : Int(a % b));
                }
                break;
              default:
                throw std::logic_error("bad kind");
            }
          }
        }
        return out;
      }
    }
  };

  std::vector<std::vector<std::pair<VarId, Int>>> successors;
  if (op.is_assign()) {
    for (const Int& value : eval_all(op.value)) {
      auto next = cd;
      for (auto& [v, stored] : next)
        if (v == op.target) stored = value;
      successors.push_back(std::move(next));
    }
  } else {
    for (const Int& a : eval_all(op.pred.lhs))
      for (const Int& b : eval_all(op.pred.rhs))
        if (compare(op.pred.op, a, b)) {
          successors.push_back(cd);
          return successors;
        }
  }
  return successors;
}

}  // namespace

TEST_CASE("ordering: fewer bindings is weaker") {
  CHECK(leq(asg({{X, 2}, {Y, 5}}), asg({{X, 2}})));
  CHECK_FALSE(leq(asg({{X, 2}}), asg({{X, 3}})));
  CHECK(leq(Assignment::contradiction(), Assignment()));
  CHECK(leq(Assignment::contradiction(), Assignment::contradiction()));
  CHECK_FALSE(leq(Assignment(), Assignment::contradiction()));
  CHECK_FALSE(leq(asg({{X, 2}}), asg({{X, 2}, {Y, 1}})));
}

TEST_CASE("join keeps agreeing bindings only") {
  CHECK(join(asg({{X, 1}, {Y, 2}}), asg({{X, 1}, {Y, 3}})) == asg({{X, 1}}));
  Assignment v = asg({{X, 4}, {Z, 0}});
  CHECK(join(v, v) == v);
  CHECK(join(Assignment::contradiction(), asg({{X, 7}})) == asg({{X, 7}}));
  CHECK(join(asg({{X, 7}}), Assignment::contradiction()) == asg({{X, 7}}));
  CHECK(join(asg({{X, 1}}), asg({{Y, 1}})) == Assignment());
}

TEST_CASE("conjunction unions bindings and detects conflicts") {
  CHECK(conj(asg({{X, 1}}), asg({{Y, 2}})) == asg({{X, 1}, {Y, 2}}));
  CHECK(conj(asg({{X, 1}}), asg({{X, 2}})).contradicting());
  Assignment v = asg({{X, 1}, {Y, -2}});
  CHECK(conj(v, Assignment()) == v);
  CHECK(conj(Assignment(), v) == v);
  CHECK(conj(Assignment::contradiction(), v).contradicting());
}

TEST_CASE("conjunction is commutative and associative with unit {}") {
  Rng rng(0x5eed01);
  for (int round = 0; round < 500; ++round) {
    Assignment a = random_assignment(rng, 5, -3, 3);
    Assignment b = random_assignment(rng, 5, -3, 3);
    Assignment c = random_assignment(rng, 5, -3, 3);
    CHECK(conj(a, b) == conj(b, a));
    CHECK(conj(conj(a, b), c) == conj(a, conj(b, c)));
    CHECK(conj(a, Assignment()) == a);
  }
}

TEST_CASE("implication checks definition range and agreement") {
  CHECK(implies(asg({{X, 2}, {Y, 5}}), asg({{X, 2}})));
  CHECK_FALSE(implies(asg({{X, 2}}), asg({{X, 2}, {Y, 1}})));
  CHECK(implies(Assignment::contradiction(), asg({{X, 1}})));
  CHECK(implies(Assignment::contradiction(), Assignment()));
}

TEST_CASE("contradiction flag") {
  CHECK(is_contradicting(Assignment::contradiction()));
  CHECK_FALSE(is_contradicting(Assignment()));
  CHECK_FALSE(is_contradicting(asg({{X, 0}})));
}

TEST_CASE("restriction") {
  CHECK(restrict_to(asg({{X, 2}, {Y, 5}}), {X}) == asg({{X, 2}}));
  CHECK(restrict_to(asg({{X, 2}, {Y, 5}}), {}) == Assignment());
  Assignment v = asg({{X, 2}, {Y, 5}});
  CHECK(restrict_to(v, {X, Y, Z}) == v);
}

TEST_CASE("renaming moves a binding") {
  CHECK(rename(asg({{X, 3}}), X, Y) == asg({{Y, 3}}));
  CHECK(rename(asg({{X, 3}, {Z, 1}}), X, Y) == asg({{Y, 3}, {Z, 1}}));
  CHECK_THROWS_AS(rename(asg({{X, 3}, {Y, 1}}), X, Y), std::invalid_argument);
  CHECK_THROWS_AS(rename(asg({{Y, 1}}), X, Z), std::invalid_argument);
}

TEST_CASE("expression evaluation") {
  CHECK(eval(add(vx(X), lit(1)), asg({{X, 2}})).value == Int(3));
  CHECK(eval(add(vx(X), lit(1)), Assignment()).is_top());
  CHECK(eval(lit(5), Assignment::contradiction()).is_bottom());
  CHECK(eval(expr::nondet(), asg({{X, 1}})).is_top());
  // division and modulo by zero are unknown, not a crash
  CHECK(eval(expr::bin(ExprKind::Div, lit(1), lit(0)), Assignment()).is_top());
  CHECK(eval(expr::bin(ExprKind::Mod, vx(X), lit(0)), asg({{X, 5}})).is_top());
  // truncation toward zero
  CHECK(eval(expr::bin(ExprKind::Div, lit(-7), lit(2)), Assignment()).value ==
        Int(-3));
  CHECK(eval(expr::bin(ExprKind::Mod, lit(-7), lit(2)), Assignment()).value ==
        Int(-1));
}

TEST_CASE("strongest post of assignments") {
  CHECK(sp_assign(Assignment(), X, lit(5)) == asg({{X, 5}}));
  CHECK(sp_assign(asg({{X, 2}}), Y, add(vx(X), lit(1))) ==
        asg({{X, 2}, {Y, 3}}));
  // unknown result erases the binding (canonical form)
  CHECK(sp_assign(Assignment(), Y, add(vx(X), lit(1))) == Assignment());
  CHECK(sp_assign(asg({{Y, 9}}), Y, expr::nondet()) == Assignment());
  CHECK(sp_assign(Assignment::contradiction(), X, lit(1)).contradicting());
}

TEST_CASE("strongest post of assume operations") {
  // concrete comparison refuted
  CHECK(sp_assume(asg({{X, 0}}), Pred{CmpOp::Gt, vx(X), lit(0)})
            .contradicting());
  // unique satisfying assignment binds the variable
  CHECK(sp_assume(Assignment(), Pred{CmpOp::Eq, vx(X), lit(5)}) ==
        asg({{X, 5}}));
  CHECK(sp_assume(Assignment(), Pred{CmpOp::Eq, lit(5), vx(X)}) ==
        asg({{X, 5}}));
  CHECK(sp_assume(asg({{Y, 4}}), Pred{CmpOp::Eq, vx(X), add(vx(Y), lit(1))}) ==
        asg({{X, 5}, {Y, 4}}));
  // no new information
  Assignment v = asg({{X, 3}});
  CHECK(sp_assume(v, Pred{CmpOp::Lt, vx(X), lit(10)}) == v);
  CHECK(sp_assume(Assignment(), Pred{CmpOp::Lt, vx(X), lit(10)}) ==
        Assignment());
  // disequalities and inequalities never bind
  CHECK(sp_assume(Assignment(), Pred{CmpOp::Ne, vx(X), lit(5)}) ==
        Assignment());
  CHECK(sp_assume(Assignment(), Pred{CmpOp::Le, vx(X), lit(0)}) ==
        Assignment());
  // or touch already-bound variables
  CHECK(sp_assume(asg({{X, 5}}), Pred{CmpOp::Eq, vx(X), lit(5)}) ==
        asg({{X, 5}}));
  CHECK(sp_assume(asg({{X, 4}}), Pred{CmpOp::Eq, vx(X), lit(5)})
            .contradicting());
  CHECK(sp_assume(Assignment::contradiction(), Pred{CmpOp::Eq, vx(X), lit(1)})
            .contradicting());
}

TEST_CASE("strongest post over sequences") {
  CHECK(sp_seq({}, asg({{X, 1}})) == asg({{X, 1}}));
  ConstraintSeq seq{Operation::assign(X, lit(1)),
                    Operation::assume(Pred{CmpOp::Eq, vx(X), lit(1)})};
  CHECK(sp_seq(seq, Assignment()) == asg({{X, 1}}));
  ConstraintSeq refuted{Operation::assign(X, lit(0)),
                        Operation::assume(Pred{CmpOp::Gt, vx(X), lit(0)})};
  CHECK(sp_seq(refuted, Assignment()).contradicting());
}

TEST_CASE("concretization membership") {
  CHECK(models(asg({{X, 2}}), {{X, Int(2)}, {Y, Int(9)}}));
  CHECK_FALSE(models(asg({{X, 2}}), {{X, Int(3)}, {Y, Int(9)}}));
  CHECK_FALSE(models(Assignment::contradiction(), {{X, Int(0)}}));
  CHECK(models(Assignment(), {{X, Int(0)}}));
}

TEST_CASE("debug rendering") {
  VarNames names = [](VarId id) {
    return std::string(1, static_cast<char>('x' + id));
  };
  CHECK(asg({{X, 2}, {Y, 5}}).to_string(names) == "{x=2, y=5}");
  CHECK(Assignment().to_string(names) == "{}");
  CHECK(Assignment::contradiction().to_string(names) == "⊥");
}

TEST_CASE("order laws on randomized assignments") {
  Rng rng(0x5eed02);
  std::vector<Assignment> pool;
  for (int i = 0; i < 60; ++i) pool.push_back(random_assignment(rng, 5, -3, 3));
  pool.push_back(Assignment());
  pool.push_back(Assignment::contradiction());

  for (const Assignment& v : pool) CHECK(leq(v, v));
  for (int round = 0; round < 2000; ++round) {
    const Assignment& a = pool[rng.next() % pool.size()];
    const Assignment& b = pool[rng.next() % pool.size()];
    const Assignment& c = pool[rng.next() % pool.size()];
    if (leq(a, b) && leq(b, c)) CHECK(leq(a, c));
    Assignment ab = join(a, b);
    CHECK(leq(a, ab));
    CHECK(leq(b, ab));
    // least among the candidates at hand
    if (leq(a, c) && leq(b, c)) CHECK(leq(ab, c));
  }
}

TEST_CASE("ordering agrees with concretization") {
  Rng rng(0x5eed03);
  auto stores = all_stores(3, -4, 4);
  for (int round = 0; round < 300; ++round) {
    Assignment v = random_assignment(rng, 3, -4, 4);
    Assignment w = random_assignment(rng, 3, -4, 4);
    if (!leq(v, w)) continue;
    for (const auto& cd : stores)
      if (models(v, cd)) CHECK(models(w, cd));
  }
}

TEST_CASE("strongest post covers concrete execution") {
  Rng rng(0x5eed04);
  auto stores = all_stores(3, -4, 4);
  int checked = 0;
  for (int round = 0; round < 400; ++round) {
    Assignment v = random_assignment(rng, 3, -4, 4);
    Operation op = random_op(rng, 3, -4, 4);
    Assignment post = sp_op(v, op);
    for (const auto& cd : stores) {
      if (!models(v, cd)) continue;
      for (const auto& cd_next : execute_concrete(op, cd, -4, 4)) {
        CHECK(models(post, cd_next));
        ++checked;
      }
    }
  }
  CHECK(checked > 10000);
}

TEST_CASE("operations preserve canonical form") {
  Rng rng(0x5eed05);
  for (int round = 0; round < 1000; ++round) {
    Assignment v = random_assignment(rng, 4, -3, 3);
    Operation op = random_op(rng, 4, -3, 3);
    Assignment post = sp_op(v, op);
    if (post.contradicting()) CHECK(post.bindings().empty());
    Assignment joined = join(v, post);
    if (joined.contradicting()) CHECK(joined.bindings().empty());
  }
}

TEST_CASE("precision tracks variable sets per location") {
  Precision pi({Y, X, Y});
  CHECK(pi.size() == 2);
  CHECK(pi.tracks(X));
  CHECK_FALSE(pi.tracks(Z));
  CHECK(pi.add(Z));
  CHECK_FALSE(pi.add(Z));

  ProgramPrecision program;
  CHECK(program.at(7).empty());
  program.add(7, X);
  program.add(7, W);
  program.add(2, Y);
  CHECK(program.at(7).tracks(X));
  CHECK(program.at(7).tracks(W));
  CHECK_FALSE(program.at(7).tracks(Y));
  CHECK(program.max_size() == 2);

  ProgramPrecision other;
  other.add(7, X);
  CHECK_FALSE(program.gains_from(other));
  other.add(3, Z);
  CHECK(program.gains_from(other));
  CHECK(program.merge(other));
  CHECK_FALSE(program.merge(other));
  CHECK(program.at(3).tracks(Z));
}

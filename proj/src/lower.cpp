#include "lower.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>

#include "parser.hpp"

namespace evcheck {

namespace {

struct TmpEdge {
  LocId from = 0;
  LocId to = 0;
  Operation op;
  int line = 0;
  bool is_skip = false;
};

// Control either continues at a location or the branch has terminated
// (return, error(), or a call that never returns).
using Flow = std::optional<LocId>;

class Builder {
 public:
  explicit Builder(const ast::Program& program) : program_(program) {}

  Problem run() {
    collect_functions();
    reject_recursion();
    declare_globals();

    const ast::Function& main = lookup_function("main", ast::Pos{1, 1});
    if (!main.params.empty())
      throw ParseError("main must not take parameters", main.pos.line,
                       main.pos.column);

    Frame frame;
    frame.scope = new_scope("main", "main", std::nullopt);
    frame.fn = &main;
    entry_ = new_location(main.pos.line, frame.scope);

    Flow flow = entry_;
    for (const ast::Global& global : program_.globals) {
      if (!global.init) continue;
      VarId var = *lookup_var(global.name, frame, global.pos);
      flow = lower_rhs_into(var, *global.init, frame, *flow, global.pos);
      if (!flow) break;
    }
    if (flow) lower_block(main.body, frame, *flow);

    contract_skips();
    return finish();
  }

 private:
  struct Frame {
    ScopeId scope = 0;
    const ast::Function* fn = nullptr;
    std::map<std::string, VarId> locals;
    std::optional<LocId> exit;
    std::optional<VarId> ret_var;
    std::string label;  // empty for main
  };

  // ---- symbol handling -------------------------------------------------

  void collect_functions() {
    for (const ast::Function& fn : program_.functions) {
      if (fn.name == "nondet" || fn.name == "error") {
        if (!fn.is_prototype)
          throw ParseError("'" + fn.name + "' is an intrinsic and cannot be "
                           "redefined", fn.pos.line, fn.pos.column);
        continue;  // intrinsic prototypes are tolerated and ignored
      }
      if (fn.is_prototype) {
        prototypes_.insert(fn.name);
        continue;
      }
      if (functions_.count(fn.name))
        throw ParseError("duplicate definition of function '" + fn.name + "'",
                         fn.pos.line, fn.pos.column);
      functions_[fn.name] = &fn;
    }
    if (!functions_.count("main"))
      throw ParseError("program has no main function", 1, 1);
  }

  const ast::Function& lookup_function(const std::string& name,
                                       ast::Pos pos) const {
    auto it = functions_.find(name);
    if (it == functions_.end()) {
      std::string detail = prototypes_.count(name)
                               ? "' is declared but has no body"
                               : "' is not defined";
      throw ParseError("function '" + name + detail, pos.line, pos.column);
    }
    return *it->second;
  }

  void declare_globals() {
    for (const ast::Global& global : program_.globals) {
      if (globals_.count(global.name))
        throw ParseError("duplicate global variable '" + global.name + "'",
                         global.pos.line, global.pos.column);
      VarInfo info;
      info.id = static_cast<VarId>(cfa_.vars.size());
      info.name = global.name;
      info.qualified = global.name;
      info.is_global = true;
      info.decl_line = global.pos.line;
      globals_[global.name] = info.id;
      cfa_.vars.push_back(std::move(info));
    }
  }

  VarId declare_local(const std::string& name, Frame& frame, ast::Pos pos) {
    if (frame.locals.count(name))
      throw ParseError("duplicate declaration of '" + name + "'", pos.line,
                       pos.column);
    if (globals_.count(name))
      throw ParseError("local '" + name + "' shadows a global variable",
                       pos.line, pos.column);
    VarInfo info;
    info.id = static_cast<VarId>(cfa_.vars.size());
    info.name = name;
    info.qualified =
        frame.label.empty() ? name : frame.label + "::" + name;
    info.is_global = false;
    info.scope = frame.scope;
    info.decl_line = pos.line;
    frame.locals[name] = info.id;
    cfa_.vars.push_back(std::move(info));
    return frame.locals[name];
  }

  std::optional<VarId> lookup_var(const std::string& name, const Frame& frame,
                                  ast::Pos pos) const {
    auto local = frame.locals.find(name);
    if (local != frame.locals.end()) return local->second;
    auto global = globals_.find(name);
    if (global != globals_.end()) return global->second;
    throw ParseError("use of undeclared variable '" + name + "'", pos.line,
                     pos.column);
  }

  // ---- recursion check ---------------------------------------------------

  void reject_recursion() {
    std::map<std::string, int> color;  // 0 unseen, 1 on stack, 2 done
    for (const auto& [name, fn] : functions_) {
      (void)fn;
      visit_calls(name, color);
    }
  }

  void visit_calls(const std::string& name, std::map<std::string, int>& color) {
    int& state = color[name];
    if (state == 2) return;
    state = 1;
    auto it = functions_.find(name);
    if (it != functions_.end()) {
      for (const ast::StmtPtr& stmt : it->second->body)
        visit_calls_in_stmt(*stmt, color);
    }
    state = 2;
  }

  void check_callee(const std::string& callee, ast::Pos pos,
                    std::map<std::string, int>& color) {
    if (callee == "nondet" || callee == "error") return;
    auto it = color.find(callee);
    if (it != color.end() && it->second == 1)
      throw ParseError("recursive call to '" + callee + "' is not supported",
                       pos.line, pos.column);
    if (functions_.count(callee)) visit_calls(callee, color);
  }

  void visit_calls_in_stmt(const ast::Stmt& stmt,
                           std::map<std::string, int>& color) {
    using Kind = ast::Stmt::Kind;
    if ((stmt.kind == Kind::Decl || stmt.kind == Kind::Assign) && stmt.value &&
        stmt.value->kind == ast::Expr::Kind::Call)
      check_callee(stmt.value->name, stmt.value->pos, color);
    if (stmt.kind == Kind::Call) check_callee(stmt.name, stmt.pos, color);
    for (const ast::StmtPtr& child : stmt.body)
      visit_calls_in_stmt(*child, color);
    for (const ast::StmtPtr& child : stmt.else_body)
      visit_calls_in_stmt(*child, color);
  }

  // ---- CFA construction ----------------------------------------------------

  ScopeId new_scope(std::string label, std::string function,
                    std::optional<ScopeId> parent) {
    ScopeInstance scope;
    scope.id = static_cast<ScopeId>(cfa_.scopes.size());
    scope.label = std::move(label);
    scope.function = std::move(function);
    scope.parent = parent;
    cfa_.scopes.push_back(scope);
    return scope.id;
  }

  LocId new_location(int line, ScopeId scope) {
    Location loc;
    loc.id = static_cast<LocId>(cfa_.locations.size());
    loc.line = line;
    loc.scope = scope;
    cfa_.locations.push_back(loc);
    return loc.id;
  }

  void add_edge(LocId from, LocId to, Operation op, int line) {
    edges_.push_back({from, to, std::move(op), line, false});
  }

  void add_skip(LocId from, LocId to, int line) {
    Pred truth{CmpOp::Eq, expr::lit(0), expr::lit(0)};
    edges_.push_back({from, to, Operation::assume(truth), line, true});
  }

  void mark_error(LocId loc) {
    if (!std::count(errors_.begin(), errors_.end(), loc))
      errors_.push_back(loc);
  }

  // ---- expressions ---------------------------------------------------------

  ExprPtr resolve_expr(const ast::Expr& e, const Frame& frame) {
    switch (e.kind) {
      case ast::Expr::Kind::Literal:
        return expr::lit(e.literal);
      case ast::Expr::Kind::Var:
        return expr::var(*lookup_var(e.name, frame, e.pos));
      case ast::Expr::Kind::Nondet:
        return expr::nondet();
      case ast::Expr::Kind::Neg:
        return expr::neg(resolve_expr(*e.lhs, frame));
      case ast::Expr::Kind::Add:
        return expr::bin(ExprKind::Add, resolve_expr(*e.lhs, frame),
                         resolve_expr(*e.rhs, frame));
      case ast::Expr::Kind::Sub:
        return expr::bin(ExprKind::Sub, resolve_expr(*e.lhs, frame),
                         resolve_expr(*e.rhs, frame));
      case ast::Expr::Kind::Mul:
        return expr::bin(ExprKind::Mul, resolve_expr(*e.lhs, frame),
                         resolve_expr(*e.rhs, frame));
      case ast::Expr::Kind::Div:
        return expr::bin(ExprKind::Div, resolve_expr(*e.lhs, frame),
                         resolve_expr(*e.rhs, frame));
      case ast::Expr::Kind::Mod:
        return expr::bin(ExprKind::Mod, resolve_expr(*e.lhs, frame),
                         resolve_expr(*e.rhs, frame));
      case ast::Expr::Kind::Call:
        throw ParseError("calls cannot appear inside expressions", e.pos.line,
                         e.pos.column);
    }
    throw std::logic_error("bad expression kind");
  }

  // ---- statements ----------------------------------------------------------

  Flow lower_block(const std::vector<ast::StmtPtr>& stmts, Frame& frame,
                   LocId current) {
    Flow flow = current;
    for (const ast::StmtPtr& stmt : stmts) {
      if (!flow) break;  // unreachable statements after return/error()
      flow = lower_stmt(*stmt, frame, *flow);
    }
    return flow;
  }

  Flow lower_stmt(const ast::Stmt& stmt, Frame& frame, LocId current) {
    switch (stmt.kind) {
      case ast::Stmt::Kind::Decl: {
        VarId var = declare_local(stmt.name, frame, stmt.pos);
        if (!stmt.value) return current;
        return lower_rhs_into(var, *stmt.value, frame, current, stmt.pos);
      }
      case ast::Stmt::Kind::Assign: {
        VarId var = *lookup_var(stmt.name, frame, stmt.pos);
        return lower_rhs_into(var, *stmt.value, frame, current, stmt.pos);
      }
      case ast::Stmt::Kind::Call:
        return lower_call_stmt(stmt, frame, current);
      case ast::Stmt::Kind::If:
        return lower_if(stmt, frame, current);
      case ast::Stmt::Kind::While:
        return lower_while(stmt, frame, current);
      case ast::Stmt::Kind::Return:
        return lower_return(stmt, frame, current);
      case ast::Stmt::Kind::Block:
        return lower_block(stmt.body, frame, current);
    }
    throw std::logic_error("bad statement kind");
  }

  Flow lower_rhs_into(VarId target, const ast::Expr& rhs, Frame& frame,
                      LocId current, ast::Pos pos) {
    if (rhs.kind == ast::Expr::Kind::Call)
      return lower_call(rhs.name, rhs.args, target, rhs.pos, frame, current);
    LocId next = new_location(pos.line, frame.scope);
    add_edge(current, next,
             Operation::assign(target, resolve_expr(rhs, frame)), pos.line);
    return next;
  }

  Flow lower_call_stmt(const ast::Stmt& stmt, Frame& frame, LocId current) {
    if (stmt.name == "error") {
      if (!stmt.args.empty())
        throw ParseError("error() takes no arguments", stmt.pos.line,
                         stmt.pos.column);
      mark_error(current);
      return std::nullopt;
    }
    if (stmt.name == "nondet") {
      if (!stmt.args.empty())
        throw ParseError("nondet() takes no arguments", stmt.pos.line,
                         stmt.pos.column);
      return current;  // evaluating nondet() has no effect
    }
    return lower_call(stmt.name, stmt.args, std::nullopt, stmt.pos, frame,
                      current);
  }

  // Inlines a call.  Locals of the callee are renamed per call site and the
  // callee's locations carry a nested scope instance.
  Flow lower_call(const std::string& callee,
                  const std::vector<ast::ExprPtr>& args,
                  std::optional<VarId> target, ast::Pos pos, Frame& frame,
                  LocId current) {
    if (callee == "error")
      throw ParseError("error() returns no value", pos.line, pos.column);
    if (callee == "main")
      throw ParseError("main cannot be called", pos.line, pos.column);
    const ast::Function& fn = lookup_function(callee, pos);
    if (args.size() != fn.params.size())
      throw ParseError("call to '" + callee + "' expects " +
                           std::to_string(fn.params.size()) + " argument(s)",
                       pos.line, pos.column);
    if (target && !fn.returns_int)
      throw ParseError("void function '" + callee + "' returns no value",
                       pos.line, pos.column);

    Frame inner;
    inner.label = callee + "@" + std::to_string(++inline_counter_);
    inner.scope = new_scope(inner.label, callee, frame.scope);
    inner.fn = &fn;
    if (fn.returns_int) {
      VarInfo info;
      info.id = static_cast<VarId>(cfa_.vars.size());
      info.name = callee + "::ret";
      info.qualified = inner.label + "::ret";
      info.is_global = false;
      info.scope = inner.scope;
      info.decl_line = fn.pos.line;
      cfa_.vars.push_back(info);
      inner.ret_var = info.id;
    }

    // Arguments are evaluated in the caller's frame, left to right.
    Flow flow = current;
    for (std::size_t i = 0; i < args.size(); ++i) {
      VarId param = declare_local(fn.params[i].name, inner, fn.params[i].pos);
      LocId next = new_location(pos.line, inner.scope);
      add_edge(*flow, next,
               Operation::assign(param, resolve_expr(*args[i], frame)),
               pos.line);
      flow = next;
    }

    Flow body_end = lower_block(fn.body, inner, *flow);
    if (body_end) {
      if (inner.exit)
        add_skip(*body_end, *inner.exit, fn.pos.line);
      else
        inner.exit = body_end;
    }
    if (!inner.exit) return std::nullopt;  // callee never returns

    if (target) {
      LocId next = new_location(pos.line, frame.scope);
      add_edge(*inner.exit, next,
               Operation::assign(*target, expr::var(*inner.ret_var)),
               pos.line);
      return next;
    }
    // Re-anchor the continuation in the caller's scope.
    LocId next = new_location(pos.line, frame.scope);
    add_skip(*inner.exit, next, pos.line);
    return next;
  }

  Flow lower_return(const ast::Stmt& stmt, Frame& frame, LocId current) {
    if (stmt.value && !frame.fn->returns_int)
      throw ParseError("void function cannot return a value", stmt.pos.line,
                       stmt.pos.column);
    if (stmt.value) {
      if (!frame.ret_var && !frame.label.empty())
        throw std::logic_error("missing return variable");
      if (!frame.ret_var) {
        // Return value of main; kept so the operation remains an assignment.
        VarInfo info;
        info.id = static_cast<VarId>(cfa_.vars.size());
        info.name = "main::ret";
        info.qualified = "main::ret";
        info.is_global = false;
        info.scope = frame.scope;
        info.decl_line = stmt.pos.line;
        cfa_.vars.push_back(info);
        frame.ret_var = info.id;
      }
      if (!frame.exit) frame.exit = new_location(stmt.pos.line, frame.scope);
      add_edge(current, *frame.exit,
               Operation::assign(*frame.ret_var,
                                 resolve_expr(*stmt.value, frame)),
               stmt.pos.line);
      return std::nullopt;
    }
    if (!frame.exit) frame.exit = new_location(stmt.pos.line, frame.scope);
    add_skip(current, *frame.exit, stmt.pos.line);
    return std::nullopt;
  }

  Flow lower_if(const ast::Stmt& stmt, Frame& frame, LocId current) {
    int line = stmt.pos.line;
    LocId then_entry = new_location(line, frame.scope);
    if (stmt.else_body.empty()) {
      LocId join = new_location(line, frame.scope);
      lower_cond(*stmt.cond, frame, current, then_entry, join);
      Flow then_end = lower_block(stmt.body, frame, then_entry);
      if (then_end) add_skip(*then_end, join, line);
      return join;
    }
    LocId else_entry = new_location(line, frame.scope);
    lower_cond(*stmt.cond, frame, current, then_entry, else_entry);
    Flow then_end = lower_block(stmt.body, frame, then_entry);
    Flow else_end = lower_block(stmt.else_body, frame, else_entry);
    if (!then_end && !else_end) return std::nullopt;
    LocId join = new_location(line, frame.scope);
    if (then_end) add_skip(*then_end, join, line);
    if (else_end) add_skip(*else_end, join, line);
    return join;
  }

  Flow lower_while(const ast::Stmt& stmt, Frame& frame, LocId current) {
    int line = stmt.pos.line;
    LocId body_entry = new_location(line, frame.scope);
    LocId exit = new_location(line, frame.scope);
    lower_cond(*stmt.cond, frame, current, body_entry, exit);
    Flow body_end = lower_block(stmt.body, frame, body_entry);
    if (body_end) add_skip(*body_end, current, line);  // back edge
    return exit;
  }

  // Short-circuit compilation of boolean conditions into assume edges.
  // Every atomic comparison contributes exactly two complementary edges.
  void lower_cond(const ast::Cond& cond, Frame& frame, LocId from,
                  LocId to_true, LocId to_false) {
    switch (cond.kind) {
      case ast::Cond::Kind::Cmp: {
        Pred pred;
        pred.op = to_cmp_op(cond.cmp);
        pred.lhs = resolve_expr(*cond.lhs, frame);
        pred.rhs = resolve_expr(*cond.rhs, frame);
        add_edge(from, to_true, Operation::assume(pred), cond.pos.line);
        add_edge(from, to_false, Operation::assume(pred.negated()),
                 cond.pos.line);
        return;
      }
      case ast::Cond::Kind::And: {
        LocId mid = new_location(cond.pos.line, frame.scope);
        lower_cond(*cond.a, frame, from, mid, to_false);
        lower_cond(*cond.b, frame, mid, to_true, to_false);
        return;
      }
      case ast::Cond::Kind::Or: {
        LocId mid = new_location(cond.pos.line, frame.scope);
        lower_cond(*cond.a, frame, from, to_true, mid);
        lower_cond(*cond.b, frame, mid, to_true, to_false);
        return;
      }
      case ast::Cond::Kind::Not:
        lower_cond(*cond.a, frame, from, to_false, to_true);
        return;
    }
  }

  static CmpOp to_cmp_op(ast::Cond::CmpKind kind) {
    switch (kind) {
      case ast::Cond::CmpKind::Eq:
        return CmpOp::Eq;
      case ast::Cond::CmpKind::Ne:
        return CmpOp::Ne;
      case ast::Cond::CmpKind::Lt:
        return CmpOp::Lt;
      case ast::Cond::CmpKind::Le:
        return CmpOp::Le;
      case ast::Cond::CmpKind::Gt:
        return CmpOp::Gt;
      case ast::Cond::CmpKind::Ge:
        return CmpOp::Ge;
    }
    throw std::logic_error("bad comparison kind");
  }

  // ---- skip contraction ------------------------------------------------

  // Skip edges only connect branch/return/call ends to their join targets.
  // Each one is contracted by merging its source into its target, so the
  // final automaton carries assume and assignment edges only.
  void contract_skips() {
    for (;;) {
      std::optional<std::size_t> found;
      for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (edges_[i].is_skip) {
          found = i;
          break;
        }
      }
      if (!found) return;
      TmpEdge skip = edges_[*found];
      if (skip.from == skip.to) throw std::logic_error("skip self-loop");
      std::size_t out_degree = 0;
      for (const TmpEdge& edge : edges_)
        if (edge.from == skip.from) ++out_degree;
      if (out_degree != 1)
        throw std::logic_error("skip source with extra out-edges");
      edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(*found));
      for (TmpEdge& edge : edges_) {
        if (edge.to == skip.from) edge.to = skip.to;
      }
      if (entry_ == skip.from) entry_ = skip.to;
      dead_locations_.push_back(skip.from);
    }
  }

  Problem finish() {
    // Compact location ids, preserving creation order.
    std::vector<bool> dead(cfa_.locations.size(), false);
    for (LocId loc : dead_locations_) dead[loc] = true;
    std::vector<LocId> remap(cfa_.locations.size(), 0);
    std::vector<Location> compact;
    for (const Location& loc : cfa_.locations) {
      if (dead[loc.id]) continue;
      remap[loc.id] = static_cast<LocId>(compact.size());
      Location kept = loc;
      kept.id = remap[loc.id];
      compact.push_back(kept);
    }
    cfa_.locations = std::move(compact);

    cfa_.edges.clear();
    cfa_.out_edges.assign(cfa_.locations.size(), {});
    for (const TmpEdge& tmp : edges_) {
      Edge edge;
      edge.id = static_cast<EdgeId>(cfa_.edges.size());
      edge.from = remap[tmp.from];
      edge.to = remap[tmp.to];
      edge.op = tmp.op;
      edge.line = tmp.line;
      cfa_.out_edges[edge.from].push_back(edge.id);
      cfa_.edges.push_back(std::move(edge));
    }

    Problem problem;
    problem.initial = remap[entry_];
    for (LocId error : errors_) problem.errors.push_back(remap[error]);
    std::sort(problem.errors.begin(), problem.errors.end());
    problem.cfa = std::move(cfa_);
    check_well_formed(problem);
    return problem;
  }

  const ast::Program& program_;
  Cfa cfa_;
  std::vector<TmpEdge> edges_;
  std::vector<LocId> errors_;
  std::vector<LocId> dead_locations_;
  LocId entry_ = 0;
  int inline_counter_ = 0;
  std::map<std::string, const ast::Function*> functions_;
  std::map<std::string, VarId> globals_;
  std::set<std::string> prototypes_;
};

}  // namespace

Problem build_problem(const ast::Program& program) {
  return Builder(program).run();
}

Problem load_program(const std::string& source) {
  return build_problem(parse(source));
}

}  // namespace evcheck

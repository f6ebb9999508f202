#include "oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace testsupport {

using namespace evcheck;

namespace {

// ---- CFA enumeration ----------------------------------------------------

using Store = std::map<VarId, Int>;

Int read_var(const Store& store, VarId var) {
  auto it = store.find(var);
  return it == store.end() ? Int(0) : it->second;
}

void dedupe(std::vector<Int>& values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
}

// All possible values of e: nondet() (and division by zero) branch over the
// configured range, unbound variables read as 0.
std::vector<Int> eval_concrete(const ExprPtr& e, const Store& store,
                               const EnumLimits& limits) {
  switch (e->kind) {
    case ExprKind::Literal:
      return {e->literal};
    case ExprKind::Var:
      return {read_var(store, e->var)};
    case ExprKind::Nondet: {
      std::vector<Int> out;
      for (long v = limits.nondet_lo; v <= limits.nondet_hi; ++v)
        out.push_back(Int(v));
      return out;
    }
    case ExprKind::Neg: {
      std::vector<Int> out;
      for (const Int& v : eval_concrete(e->lhs, store, limits))
        out.push_back(-v);
      dedupe(out);
      return out;
    }
    default: {
      std::vector<Int> lhs = eval_concrete(e->lhs, store, limits);
      std::vector<Int> rhs = eval_concrete(e->rhs, store, limits);
      std::vector<Int> out;
      for (const Int& a : lhs) {
        for (const Int& b : rhs) {
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
                for (long v = limits.nondet_lo; v <= limits.nondet_hi; ++v)
                  out.push_back(Int(v));
              } else {
                out.push_back(e->kind == ExprKind::Div ? Int(a / b) : Int(a % b));
              }
              break;
            default:
              throw std::logic_error("bad expression kind");
          }
        }
      }
      dedupe(out);
      return out;
    }
  }
}

bool pred_satisfiable(const Pred& pred, const Store& store,
                      const EnumLimits& limits) {
  std::vector<Int> lhs = eval_concrete(pred.lhs, store, limits);
  std::vector<Int> rhs = eval_concrete(pred.rhs, store, limits);
  for (const Int& a : lhs)
    for (const Int& b : rhs)
      if (compare(pred.op, a, b)) return true;
  return false;
}

bool is_synthetic(const VarInfo& var) {
  return var.name.find("::ret") != std::string::npos;
}

// Observable variables: globals plus main's own locals, by source name.
struct Projection {
  std::vector<VarId> vars;

  static Projection build(const Problem& problem) {
    const Cfa& cfa = problem.cfa;
    ScopeId main_scope = cfa.locations[problem.initial].scope;
    std::vector<std::pair<std::string, VarId>> keyed;
    for (const VarInfo& var : cfa.vars) {
      if (is_synthetic(var)) continue;
      if (var.is_global || (var.scope && *var.scope == main_scope))
        keyed.emplace_back(var.name, var.id);
    }
    std::sort(keyed.begin(), keyed.end());
    Projection out;
    for (auto& [name, id] : keyed) {
      (void)name;
      out.vars.push_back(id);
    }
    return out;
  }

  std::string serialize(const Cfa& cfa, const Store& store) const {
    std::ostringstream out;
    bool first = true;
    for (VarId var : vars) {
      auto it = store.find(var);
      if (it == store.end()) continue;
      if (!first) out << ",";
      first = false;
      out << cfa.vars[var].name << "=" << it->second;
    }
    return out.str();
  }
};

std::string serialize_state(LocId loc, const Store& store) {
  std::ostringstream out;
  out << loc << "|";
  for (const auto& [var, value] : store) out << var << "=" << value << ";";
  return out.str();
}

}  // namespace

ConcreteBehavior enumerate_cfa(const Problem& problem,
                               const EnumLimits& limits) {
  const Cfa& cfa = problem.cfa;
  Projection projection = Projection::build(problem);
  ConcreteBehavior behavior;

  std::set<std::string> visited;
  std::deque<std::pair<LocId, Store>> queue;
  queue.emplace_back(problem.initial, Store{});
  visited.insert(serialize_state(problem.initial, {}));

  while (!queue.empty()) {
    auto [loc, store] = queue.front();
    queue.pop_front();

    if (problem.is_error(loc)) {
      behavior.error_reached = true;
      behavior.error_lines.insert(cfa.location(loc).line);
      continue;
    }
    if (cfa.out_edges[loc].empty()) {
      behavior.final_stores.insert(projection.serialize(cfa, store));
      continue;
    }

    for (EdgeId edge_id : cfa.out_edges[loc]) {
      const Edge& edge = cfa.edge(edge_id);
      std::vector<Store> successors;
      if (edge.op.is_assign()) {
        for (const Int& value : eval_concrete(edge.op.value, store, limits)) {
          Store next = store;
          next[edge.op.target] = value;
          successors.push_back(std::move(next));
        }
      } else if (pred_satisfiable(edge.op.pred, store, limits)) {
        successors.push_back(store);
      }
      for (Store& next : successors) {
        if (edge.op.is_assign() && !is_synthetic(cfa.vars[edge.op.target]))
          behavior.assignment_states.insert(std::to_string(edge.line) + "|" +
                                            projection.serialize(cfa, next));
        std::string key = serialize_state(edge.to, next);
        if (visited.count(key)) continue;
        if (visited.size() >= limits.max_states)
          throw std::runtime_error("concrete enumeration exceeded state cap");
        visited.insert(std::move(key));
        queue.emplace_back(edge.to, std::move(next));
      }
    }
  }
  return behavior;
}

bool concrete_error_reachable(const Problem& problem,
                              const EnumLimits& limits) {
  return enumerate_cfa(problem, limits).error_reached;
}

// ---- AST interpretation -------------------------------------------------

namespace {

struct NeedChoice {};
struct ErrorHit {
  int line;
};
struct ReturnSignal {
  std::optional<Int> value;
};

using Env = std::map<std::string, Int>;

// One deterministic run driven by a vector of pre-decided nondet values.
// Requesting a value beyond the vector raises NeedChoice so the driver can
// branch.
class AstRun {
 public:
  AstRun(const ast::Program& program, const std::vector<long>& choices,
         ConcreteBehavior& behavior)
      : program_(program), choices_(choices), behavior_(behavior) {
    for (const ast::Function& fn : program.functions)
      if (!fn.is_prototype) functions_[fn.name] = &fn;
    for (const ast::Global& global : program.globals)
      global_names_.insert(global.name);
  }

  void run() {
    try {
      for (const ast::Global& global : program_.globals) {
        if (!global.init) continue;
        globals_[global.name] = eval(*global.init, main_frame_);
        record(global.pos.line);
      }
      exec_all(functions_.at("main")->body, main_frame_);
      behavior_.final_stores.insert(serialize());
    } catch (const ReturnSignal&) {
      behavior_.final_stores.insert(serialize());
    } catch (const ErrorHit& hit) {
      behavior_.error_reached = true;
      behavior_.error_lines.insert(hit.line);
    }
  }

 private:
  void record(int line) {
    behavior_.assignment_states.insert(std::to_string(line) + "|" +
                                       serialize());
  }

  std::string serialize() const {
    Env merged = globals_;
    for (const auto& [name, value] : main_frame_) merged[name] = value;
    std::ostringstream out;
    bool first = true;
    for (const auto& [name, value] : merged) {
      if (!first) out << ",";
      first = false;
      out << name << "=" << value;
    }
    return out.str();
  }

  Int choose() {
    if (next_choice_ >= choices_.size()) throw NeedChoice{};
    return Int(choices_[next_choice_++]);
  }

  Int read(const std::string& name, const Env& frame) const {
    auto local = frame.find(name);
    if (local != frame.end()) return local->second;
    auto global = globals_.find(name);
    if (global != globals_.end()) return global->second;
    return 0;
  }

  // Shadowing is rejected at validation, so a name is either a global or a
  // local of the executing function.
  void write(const std::string& name, Int value, Env& frame) {
    if (global_names_.count(name))
      globals_[name] = std::move(value);
    else
      frame[name] = std::move(value);
  }

  Int eval(const ast::Expr& e, Env& frame) {
    bump();
    switch (e.kind) {
      case ast::Expr::Kind::Literal:
        return e.literal;
      case ast::Expr::Kind::Var:
        return read(e.name, frame);
      case ast::Expr::Kind::Nondet:
        return choose();
      case ast::Expr::Kind::Neg:
        return -eval(*e.lhs, frame);
      case ast::Expr::Kind::Add:
        return eval(*e.lhs, frame) + eval(*e.rhs, frame);
      case ast::Expr::Kind::Sub:
        return eval(*e.lhs, frame) - eval(*e.rhs, frame);
      case ast::Expr::Kind::Mul:
        return eval(*e.lhs, frame) * eval(*e.rhs, frame);
      case ast::Expr::Kind::Div:
      case ast::Expr::Kind::Mod: {
        Int lhs = eval(*e.lhs, frame);
        Int rhs = eval(*e.rhs, frame);
        if (rhs == 0) return choose();
        return e.kind == ast::Expr::Kind::Div ? Int(lhs / rhs) : Int(lhs % rhs);
      }
      case ast::Expr::Kind::Call:
        throw std::logic_error("call evaluated as plain expression");
    }
    throw std::logic_error("bad expression kind");
  }

  bool eval_cond(const ast::Cond& cond, Env& frame) {
    bump();
    switch (cond.kind) {
      case ast::Cond::Kind::Cmp: {
        Int lhs = eval(*cond.lhs, frame);
        Int rhs = eval(*cond.rhs, frame);
        switch (cond.cmp) {
          case ast::Cond::CmpKind::Eq:
            return lhs == rhs;
          case ast::Cond::CmpKind::Ne:
            return lhs != rhs;
          case ast::Cond::CmpKind::Lt:
            return lhs < rhs;
          case ast::Cond::CmpKind::Le:
            return lhs <= rhs;
          case ast::Cond::CmpKind::Gt:
            return lhs > rhs;
          case ast::Cond::CmpKind::Ge:
            return lhs >= rhs;
        }
        throw std::logic_error("bad comparison");
      }
      case ast::Cond::Kind::And:
        return eval_cond(*cond.a, frame) && eval_cond(*cond.b, frame);
      case ast::Cond::Kind::Or:
        return eval_cond(*cond.a, frame) || eval_cond(*cond.b, frame);
      case ast::Cond::Kind::Not:
        return !eval_cond(*cond.a, frame);
    }
    throw std::logic_error("bad condition kind");
  }

  std::optional<Int> call(const std::string& name,
                          const std::vector<ast::ExprPtr>& args, Env& frame,
                          int line) {
    if (name == "error") throw ErrorHit{line};
    if (name == "nondet") return choose();
    const ast::Function* fn = functions_.at(name);
    Env callee_frame;
    for (std::size_t i = 0; i < args.size(); ++i) {
      callee_frame[fn->params[i].name] = eval(*args[i], frame);
      record(line);  // parameter binding, like the inlined assignment edge
    }
    try {
      exec_all(fn->body, callee_frame);
    } catch (const ReturnSignal& signal) {
      return signal.value;
    }
    return std::nullopt;  // fell off the end: value unspecified
  }

  void exec_all(const std::vector<ast::StmtPtr>& stmts, Env& frame) {
    for (const ast::StmtPtr& stmt : stmts) exec(*stmt, frame);
  }

  void exec(const ast::Stmt& stmt, Env& frame) {
    bump();
    switch (stmt.kind) {
      case ast::Stmt::Kind::Decl:
        if (stmt.value) exec_assign(stmt, frame);
        return;
      case ast::Stmt::Kind::Assign:
        exec_assign(stmt, frame);
        return;
      case ast::Stmt::Kind::Call:
        call(stmt.name, stmt.args, frame, stmt.pos.line);
        return;
      case ast::Stmt::Kind::If:
        if (eval_cond(*stmt.cond, frame))
          exec_all(stmt.body, frame);
        else
          exec_all(stmt.else_body, frame);
        return;
      case ast::Stmt::Kind::While:
        while (eval_cond(*stmt.cond, frame)) exec_all(stmt.body, frame);
        return;
      case ast::Stmt::Kind::Return: {
        ReturnSignal signal;
        if (stmt.value) signal.value = eval(*stmt.value, frame);
        throw signal;
      }
      case ast::Stmt::Kind::Block:
        exec_all(stmt.body, frame);
        return;
    }
  }

  void exec_assign(const ast::Stmt& stmt, Env& frame) {
    Int value;
    if (stmt.value->kind == ast::Expr::Kind::Call) {
      auto returned =
          call(stmt.value->name, stmt.value->args, frame, stmt.pos.line);
      value = returned ? *returned : Int(0);
    } else {
      value = eval(*stmt.value, frame);
    }
    write(stmt.name, std::move(value), frame);
    record(stmt.pos.line);
  }

  void bump() {
    if (++steps_ > 200'000)
      throw std::runtime_error("AST interpretation step cap exceeded");
  }

  const ast::Program& program_;
  const std::vector<long>& choices_;
  ConcreteBehavior& behavior_;
  std::map<std::string, const ast::Function*> functions_;
  std::set<std::string> global_names_;
  Env globals_;
  Env main_frame_;
  std::size_t next_choice_ = 0;
  std::size_t steps_ = 0;
};

}  // namespace

ConcreteBehavior interpret_ast(const ast::Program& program,
                               const EnumLimits& limits) {
  ConcreteBehavior behavior;
  std::vector<std::vector<long>> pending{{}};
  std::size_t runs = 0;
  while (!pending.empty()) {
    std::vector<long> choices = std::move(pending.back());
    pending.pop_back();
    if (++runs > limits.max_states)
      throw std::runtime_error("AST interpretation run cap exceeded");
    AstRun run(program, choices, behavior);
    try {
      run.run();
    } catch (const NeedChoice&) {
      for (long v = limits.nondet_lo; v <= limits.nondet_hi; ++v) {
        std::vector<long> extended = choices;
        extended.push_back(v);
        pending.push_back(std::move(extended));
      }
    }
  }
  return behavior;
}

}  // namespace testsupport

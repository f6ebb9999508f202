#include "domain.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace evcheck {

Assignment Assignment::contradiction() {
  Assignment a;
  a.contradicting_ = true;
  return a;
}

std::optional<Int> Assignment::get(VarId var) const {
  auto it = std::lower_bound(
      bindings_.begin(), bindings_.end(), var,
      [](const auto& binding, VarId id) { return binding.first < id; });
  if (it == bindings_.end() || it->first != var) return std::nullopt;
  return it->second;
}

bool Assignment::binds(VarId var) const { return get(var).has_value(); }

Assignment Assignment::with(VarId var, Int value) const {
  if (contradicting_)
    throw std::logic_error("binding a variable in a contradicting state");
  Assignment out = *this;
  auto it = std::lower_bound(
      out.bindings_.begin(), out.bindings_.end(), var,
      [](const auto& binding, VarId id) { return binding.first < id; });
  if (it != out.bindings_.end() && it->first == var)
    it->second = std::move(value);
  else
    out.bindings_.insert(it, {var, std::move(value)});
  return out;
}

Assignment Assignment::without(VarId var) const {
  Assignment out = *this;
  auto it = std::lower_bound(
      out.bindings_.begin(), out.bindings_.end(), var,
      [](const auto& binding, VarId id) { return binding.first < id; });
  if (it != out.bindings_.end() && it->first == var) out.bindings_.erase(it);
  return out;
}

std::string Assignment::to_string(const VarNames& names) const {
  if (contradicting_) return "⊥";
  // Render ordered by display name so the output is stable regardless of
  // internal variable numbering.
  std::map<std::string, const Int*> ordered;
  for (const auto& [var, value] : bindings_) ordered[names(var)] = &value;
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : ordered) {
    if (!first) out += ", ";
    first = false;
    out += name + "=" + value->str();
  }
  out += "}";
  return out;
}

bool leq(const Assignment& v, const Assignment& w) {
  if (v.contradicting()) return true;
  if (w.contradicting()) return false;
  // Every binding of w must be present in v with the same value.
  for (const auto& [var, value] : w.bindings()) {
    auto bound = v.get(var);
    if (!bound || *bound != value) return false;
  }
  return true;
}

Assignment join(const Assignment& v, const Assignment& w) {
  if (v.contradicting()) return w;
  if (w.contradicting()) return v;
  Assignment out;
  for (const auto& [var, value] : v.bindings()) {
    auto other = w.get(var);
    if (other && *other == value) out = out.with(var, value);
  }
  return out;
}

Assignment conj(const Assignment& v, const Assignment& w) {
  if (v.contradicting() || w.contradicting())
    return Assignment::contradiction();
  Assignment out = v;
  for (const auto& [var, value] : w.bindings()) {
    auto bound = out.get(var);
    if (bound && *bound != value) return Assignment::contradiction();
    if (!bound) out = out.with(var, value);
  }
  return out;
}

bool implies(const Assignment& v, const Assignment& w) {
  // Same characterization as leq in canonical form: the implied state binds
  // fewer variables and agrees on the common ones.
  return leq(v, w);
}

bool is_contradicting(const Assignment& v) { return v.contradicting(); }

Assignment restrict_to(const Assignment& v, const std::vector<VarId>& vars) {
  if (v.contradicting()) return v;
  Assignment out;
  for (VarId var : vars) {
    auto bound = v.get(var);
    if (bound) out = out.with(var, *bound);
  }
  return out;
}

Assignment rename(const Assignment& v, VarId from, VarId to) {
  auto bound = v.get(from);
  if (!bound) throw std::invalid_argument("rename: source variable unbound");
  if (v.binds(to)) throw std::invalid_argument("rename: target already bound");
  return v.without(from).with(to, *bound);
}

namespace {

// Exact arithmetic on known operands; division and modulo by zero are the
// only escape to top.
EvalResult eval_known(const ExprPtr& e, const Assignment& v) {
  switch (e->kind) {
    case ExprKind::Literal:
      return EvalResult::of(e->literal);
    case ExprKind::Var:
      return EvalResult::of(*v.get(e->var));
    case ExprKind::Neg: {
      EvalResult operand = eval_known(e->lhs, v);
      if (!operand.is_value()) return operand;
      return EvalResult::of(-operand.value);
    }
    default: {
      EvalResult lhs = eval_known(e->lhs, v);
      if (!lhs.is_value()) return lhs;
      EvalResult rhs = eval_known(e->rhs, v);
      if (!rhs.is_value()) return rhs;
      switch (e->kind) {
        case ExprKind::Add:
          return EvalResult::of(lhs.value + rhs.value);
        case ExprKind::Sub:
          return EvalResult::of(lhs.value - rhs.value);
        case ExprKind::Mul:
          return EvalResult::of(lhs.value * rhs.value);
        case ExprKind::Div:
          if (rhs.value == 0) return EvalResult::top();
          return EvalResult::of(lhs.value / rhs.value);
        case ExprKind::Mod:
          if (rhs.value == 0) return EvalResult::top();
          return EvalResult::of(lhs.value % rhs.value);
        default:
          throw std::logic_error("bad expression kind");
      }
    }
  }
}

}  // namespace

EvalResult eval(const ExprPtr& e, const Assignment& v) {
  if (v.contradicting()) return EvalResult::bottom();
  bool unknown = contains_nondet(e);
  if (!unknown) {
    for_each_var(e, [&](VarId var) {
      if (!v.binds(var)) unknown = true;
    });
  }
  if (unknown) return EvalResult::top();
  return eval_known(e, v);
}

Assignment sp_assign(const Assignment& v, VarId target, const ExprPtr& value) {
  if (v.contradicting()) return v;
  EvalResult result = eval(value, v);
  if (result.is_value()) return v.with(target, std::move(result.value));
  return v.without(target);
}

Assignment sp_assume(const Assignment& v, const Pred& p) {
  if (v.contradicting()) return v;
  EvalResult lhs = eval(p.lhs, v);
  EvalResult rhs = eval(p.rhs, v);
  if (lhs.is_value() && rhs.is_value()) {
    if (!compare(p.op, lhs.value, rhs.value))
      return Assignment::contradiction();
    return v;
  }
  // An equality with one side a still-unknown variable and the other side
  // fully evaluable has a unique satisfying assignment for that variable.
  if (p.op == CmpOp::Eq) {
    if (p.lhs->kind == ExprKind::Var && !v.binds(p.lhs->var) && rhs.is_value())
      return v.with(p.lhs->var, std::move(rhs.value));
    if (p.rhs->kind == ExprKind::Var && !v.binds(p.rhs->var) && lhs.is_value())
      return v.with(p.rhs->var, std::move(lhs.value));
  }
  return v;
}

Assignment sp_op(const Assignment& v, const Operation& op) {
  if (op.is_assume()) return sp_assume(v, op.pred);
  return sp_assign(v, op.target, op.value);
}

Assignment sp_seq(const ConstraintSeq& seq, const Assignment& v0) {
  Assignment v = v0;
  for (const Operation& op : seq) v = sp_op(v, op);
  return v;
}

bool models(const Assignment& v,
            const std::vector<std::pair<VarId, Int>>& store) {
  if (v.contradicting()) return false;
  for (const auto& [var, value] : v.bindings()) {
    bool found = false;
    for (const auto& [store_var, store_value] : store) {
      if (store_var == var) {
        if (store_value != value) return false;
        found = true;
        break;
      }
    }
    if (!found) return false;  // store must be total on program variables
  }
  return true;
}

Precision::Precision(std::vector<VarId> vars) : vars_(std::move(vars)) {
  std::sort(vars_.begin(), vars_.end());
  vars_.erase(std::unique(vars_.begin(), vars_.end()), vars_.end());
}

bool Precision::tracks(VarId var) const {
  return std::binary_search(vars_.begin(), vars_.end(), var);
}

bool Precision::add(VarId var) {
  auto it = std::lower_bound(vars_.begin(), vars_.end(), var);
  if (it != vars_.end() && *it == var) return false;
  vars_.insert(it, var);
  return true;
}

bool Precision::merge(const Precision& other) {
  bool grew = false;
  for (VarId var : other.vars_) grew |= add(var);
  return grew;
}

bool Precision::contains_all(const Precision& other) const {
  return std::includes(vars_.begin(), vars_.end(), other.vars_.begin(),
                       other.vars_.end());
}

std::string Precision::to_string(const VarNames& names) const {
  std::vector<std::string> parts;
  parts.reserve(vars_.size());
  for (VarId var : vars_) parts.push_back(names(var));
  std::sort(parts.begin(), parts.end());
  std::string out = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ", ";
    out += parts[i];
  }
  out += "}";
  return out;
}

const Precision& ProgramPrecision::at(std::uint32_t loc) const {
  const Precision* found = find(loc);
  return found ? *found : default_;
}

Precision* ProgramPrecision::find(std::uint32_t loc) {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), loc,
      [](const auto& entry, std::uint32_t id) { return entry.first < id; });
  if (it == entries_.end() || it->first != loc) return nullptr;
  return &it->second;
}

const Precision* ProgramPrecision::find(std::uint32_t loc) const {
  return const_cast<ProgramPrecision*>(this)->find(loc);
}

bool ProgramPrecision::add(std::uint32_t loc, VarId var) {
  Precision* entry = find(loc);
  if (entry) return entry->add(var);
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), loc,
      [](const auto& e, std::uint32_t id) { return e.first < id; });
  Precision fresh = default_;
  bool grew = fresh.add(var);
  entries_.insert(it, {loc, std::move(fresh)});
  return grew;
}

bool ProgramPrecision::merge(const ProgramPrecision& other) {
  bool grew = false;
  for (const auto& [loc, precision] : other.entries_)
    for (VarId var : precision.vars()) grew |= add(loc, var);
  return grew;
}

bool ProgramPrecision::gains_from(const ProgramPrecision& other) const {
  for (const auto& [loc, precision] : other.entries_)
    if (!at(loc).contains_all(precision)) return true;
  return false;
}

bool ProgramPrecision::gains_at(std::uint32_t loc,
                                const ProgramPrecision& other) const {
  return !at(loc).contains_all(other.at(loc));
}

std::size_t ProgramPrecision::max_size() const {
  std::size_t max = default_.size();
  for (const auto& [loc, precision] : entries_)
    max = std::max(max, precision.size());
  return max;
}

}  // namespace evcheck

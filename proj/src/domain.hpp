#ifndef EVCHECK_DOMAIN_HPP
#define EVCHECK_DOMAIN_HPP

// The explicit-value abstract domain: partial maps from variables to
// concrete integers with a single state-level contradiction flag.  An
// absent binding reads as "unknown" (top); a contradicting state represents
// no concrete store at all.  All values are immutable after construction.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ints.hpp"
#include "ops.hpp"

namespace evcheck {

// Result of evaluating an expression under an abstract assignment.
struct EvalResult {
  enum class Kind : std::uint8_t { Bottom, Top, Value };

  Kind kind = Kind::Top;
  Int value;

  static EvalResult bottom() { return {Kind::Bottom, Int()}; }
  static EvalResult top() { return {Kind::Top, Int()}; }
  static EvalResult of(Int v) { return {Kind::Value, std::move(v)}; }

  bool is_bottom() const { return kind == Kind::Bottom; }
  bool is_top() const { return kind == Kind::Top; }
  bool is_value() const { return kind == Kind::Value; }
};

// An abstract variable assignment in canonical form: bindings hold concrete
// integers only (top bindings are erased on construction) and a contradicting
// state has no bindings.
class Assignment {
 public:
  Assignment() = default;

  static Assignment contradiction();

  bool contradicting() const { return contradicting_; }
  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }

  // Concrete value bound to var, or nullopt when the variable is unknown.
  // Never called on a contradicting state by the lattice operations.
  std::optional<Int> get(VarId var) const;
  bool binds(VarId var) const;

  // Returns a copy with var bound to value (replacing any previous binding).
  Assignment with(VarId var, Int value) const;
  // Returns a copy with var unbound (the binding erased).
  Assignment without(VarId var) const;

  const std::vector<std::pair<VarId, Int>>& bindings() const {
    return bindings_;
  }

  bool operator==(const Assignment& other) const = default;

  std::string to_string(const VarNames& names) const;
  std::string to_string() const { return to_string(fallback_var_names()); }

 private:
  // Sorted by variable id.
  std::vector<std::pair<VarId, Int>> bindings_;
  bool contradicting_ = false;
};

// Partial order of the flat per-variable lattice: v <= w iff every concrete
// store of v is a concrete store of w.
bool leq(const Assignment& v, const Assignment& w);

// Least upper bound: keeps exactly the bindings on which v and w agree.
Assignment join(const Assignment& v, const Assignment& w);

// Conjunction: union of bindings; disagreeing bindings yield contradiction.
Assignment conj(const Assignment& v, const Assignment& w);

// Implication: def(w) is within def(v) and common bindings agree.
bool implies(const Assignment& v, const Assignment& w);

bool is_contradicting(const Assignment& v);

// Restriction of the definition range to the given sorted set of variables.
Assignment restrict_to(const Assignment& v, const std::vector<VarId>& vars);

// Moves the binding of from onto to; requires from bound and to unbound.
Assignment rename(const Assignment& v, VarId from, VarId to);

// Expression evaluation: bottom on a contradicting state; top when any
// variable is unknown or a nondet() leaf occurs; division or modulo by zero
// evaluates to top.  Otherwise the exact integer result.
EvalResult eval(const ExprPtr& e, const Assignment& v);

// Strongest post-operators.
Assignment sp_assign(const Assignment& v, VarId target, const ExprPtr& value);
Assignment sp_assume(const Assignment& v, const Pred& p);
Assignment sp_op(const Assignment& v, const Operation& op);

using ConstraintSeq = std::vector<Operation>;

Assignment sp_seq(const ConstraintSeq& seq, const Assignment& v0);

// Concretization test: does the total concrete store agree with v?
// The store maps every program variable to a value.
bool models(const Assignment& v,
            const std::vector<std::pair<VarId, Int>>& store);

// The set of variables the analysis tracks at one location.
class Precision {
 public:
  Precision() = default;
  explicit Precision(std::vector<VarId> vars);

  bool tracks(VarId var) const;
  // Returns true when the variable was not yet tracked.
  bool add(VarId var);
  // Returns true when any variable of other was not yet tracked.
  bool merge(const Precision& other);
  bool contains_all(const Precision& other) const;

  bool empty() const { return vars_.empty(); }
  std::size_t size() const { return vars_.size(); }
  const std::vector<VarId>& vars() const { return vars_; }

  bool operator==(const Precision& other) const = default;

  std::string to_string(const VarNames& names) const;

 private:
  std::vector<VarId> vars_;  // sorted, unique
};

// Location-indexed precision with a configurable default (empty for the
// CEGAR analysis, the full variable set for the plain explicit analysis).
class ProgramPrecision {
 public:
  ProgramPrecision() = default;
  explicit ProgramPrecision(Precision default_precision)
      : default_(std::move(default_precision)) {}

  const Precision& at(std::uint32_t loc) const;
  bool add(std::uint32_t loc, VarId var);
  // Pointwise union; returns true when anything new was added.
  bool merge(const ProgramPrecision& other);
  // True when other adds at least one variable somewhere.
  bool gains_from(const ProgramPrecision& other) const;
  // Variables other adds at loc beyond what this already tracks.
  bool gains_at(std::uint32_t loc, const ProgramPrecision& other) const;

  const std::vector<std::pair<std::uint32_t, Precision>>& entries() const {
    return entries_;
  }
  const Precision& default_precision() const { return default_; }

  std::size_t max_size() const;

 private:
  Precision* find(std::uint32_t loc);
  const Precision* find(std::uint32_t loc) const;

  Precision default_;
  std::vector<std::pair<std::uint32_t, Precision>> entries_;  // sorted by loc
};

}  // namespace evcheck

#endif

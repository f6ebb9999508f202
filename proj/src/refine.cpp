#include "refine.hpp"

#include "interpolate.hpp"

namespace evcheck {

FeasibilityResult is_feasible(const Path& path) {
  FeasibilityResult result;
  Assignment v;
  std::size_t index = 0;
  for (const PathStep& step : path.steps) {
    ++index;
    v = sp_op(v, step.op);
    if (v.contradicting()) {
      result.feasible = false;
      result.pivot = index;
      return result;
    }
  }
  result.feasible = true;
  result.final_state = std::move(v);
  return result;
}

ProgramPrecision refine(const Path& path, const VarNames& names) {
  ProgramPrecision pi;
  if (path.steps.empty()) return pi;

  ConstraintSeq interpolant;  // empty sequence to start with
  const std::size_t n = path.steps.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    ConstraintSeq prefix = interpolant;
    prefix.push_back(path.steps[i].op);
    ConstraintSeq suffix;
    suffix.reserve(n - i - 1);
    for (std::size_t j = i + 1; j < n; ++j) suffix.push_back(path.steps[j].op);
    // Inductive interpolation: the previous interpolant replaces the prefix.
    interpolant = interpolate(prefix, suffix, names);
    Assignment state = sp_seq(interpolant, Assignment());
    for (const auto& [var, value] : state.bindings()) {
      (void)value;
      pi.add(path.steps[i].loc, var);
    }
  }
  return pi;
}

ProgramPrecision scope_precision(const ProgramPrecision& pi, const Cfa& cfa) {
  ProgramPrecision out = pi;
  std::vector<bool> seen(cfa.vars.size(), false);
  for (const auto& [loc, precision] : pi.entries()) {
    (void)loc;
    for (VarId var : precision.vars()) {
      if (var >= seen.size() || seen[var]) continue;
      seen[var] = true;
      for (LocId scoped : cfa.scope_of(var)) out.add(scoped, var);
    }
  }
  return out;
}

bool path_eliminated(const Path& path, const ProgramPrecision& pi) {
  Assignment v;
  for (const PathStep& step : path.steps) {
    v = sp_op(v, step.op);
    if (v.contradicting()) return true;
    v = restrict_to(v, pi.at(step.loc).vars());
  }
  return false;
}

}  // namespace evcheck

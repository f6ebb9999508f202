#include "interpolate.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace evcheck {

namespace {

// def(v) ordered lexicographically by display name (ties by id) so that the
// greedy elimination is deterministic and reproducible.
std::vector<VarId> ordered_vars(const Assignment& v, const VarNames& names) {
  std::vector<std::pair<std::string, VarId>> keyed;
  keyed.reserve(v.bindings().size());
  for (const auto& [var, value] : v.bindings()) {
    (void)value;
    keyed.emplace_back(names(var), var);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<VarId> out;
  out.reserve(keyed.size());
  for (auto& [name, var] : keyed) {
    (void)name;
    out.push_back(var);
  }
  return out;
}

}  // namespace

Assignment interpolate_assignments(const Assignment& vminus,
                                   const Assignment& vplus,
                                   const VarNames& names) {
  if (!conj(vminus, vplus).contradicting())
    throw std::invalid_argument(
        "interpolate_assignments: pair is not contradicting");
  if (vminus.contradicting()) return vminus;

  // The restriction to the common definition range is already an
  // interpolant; minimize it by greedy elimination.
  std::vector<VarId> common;
  for (const auto& [var, value] : vplus.bindings()) {
    (void)value;
    if (vminus.binds(var)) common.push_back(var);
  }
  Assignment candidate = restrict_to(vminus, common);
  for (VarId var : ordered_vars(candidate, names)) {
    Assignment without = candidate.without(var);
    if (conj(without, vplus).contradicting()) candidate = std::move(without);
  }
  return candidate;
}

ConstraintSeq interpolate(const ConstraintSeq& gamma_minus,
                          const ConstraintSeq& gamma_plus,
                          const VarNames& names) {
  ConstraintSeq combined = gamma_minus;
  combined.insert(combined.end(), gamma_plus.begin(), gamma_plus.end());
  if (!sp_seq(combined, Assignment()).contradicting())
    throw std::invalid_argument("interpolate: pair is not contradicting");

  Assignment v = sp_seq(gamma_minus, Assignment());
  if (v.contradicting()) {
    // The prefix refutes itself; no variable is needed downstream.
    Pred false_pred{CmpOp::Eq, expr::lit(0), expr::lit(1)};
    return {Operation::assume(false_pred)};
  }

  for (VarId var : ordered_vars(v, names)) {
    Assignment without = v.without(var);
    if (sp_seq(gamma_plus, without).contradicting()) v = std::move(without);
  }

  ConstraintSeq interpolant;
  interpolant.reserve(v.bindings().size());
  for (VarId var : ordered_vars(v, names)) {
    Pred pred{CmpOp::Eq, expr::var(var), expr::lit(*v.get(var))};
    interpolant.push_back(Operation::assume(pred));
  }
  return interpolant;
}

}  // namespace evcheck

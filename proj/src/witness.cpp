#include "witness.hpp"

#include <map>

namespace evcheck {

namespace {

void index_nondet_leaves(const ExprPtr& e, int line,
                         std::vector<WitnessInput>& inputs,
                         std::vector<std::size_t>& indices) {
  if (!e) return;
  if (e->kind == ExprKind::Nondet) {
    WitnessInput input;
    input.index = inputs.size() + 1;
    input.line = line;
    input.value = 0;
    inputs.push_back(input);
    indices.push_back(inputs.size() - 1);
    return;
  }
  index_nondet_leaves(e->lhs, line, inputs, indices);
  index_nondet_leaves(e->rhs, line, inputs, indices);
}

}  // namespace

Witness build_witness(const Problem& problem, const Path& path) {
  const Cfa& cfa = problem.cfa;
  VarNames names = cfa.names();
  Witness witness;

  Assignment v;
  // Which input produced the (still unknown) value of a variable.
  std::map<VarId, std::size_t> origin;

  for (const PathStep& step : path.steps) {
    const Operation& op = step.op;
    std::vector<std::size_t> leaves;
    if (op.is_assign()) {
      index_nondet_leaves(op.value, step.line, witness.inputs, leaves);
    } else {
      index_nondet_leaves(op.pred.lhs, step.line, witness.inputs, leaves);
      index_nondet_leaves(op.pred.rhs, step.line, witness.inputs, leaves);
    }

    Assignment pre = v;
    v = sp_op(v, op);

    if (op.is_assign()) {
      origin.erase(op.target);
      if (op.value->kind == ExprKind::Nondet) {
        origin[op.target] = leaves.front();
      } else if (op.value->kind == ExprKind::Var) {
        auto source = origin.find(op.value->var);
        if (source != origin.end() && !v.binds(op.target))
          origin[op.target] = source->second;
      }
    } else if (op.pred.op == CmpOp::Eq) {
      // An equality that binds a tracked-origin variable (or constrains a
      // direct nondet leaf) pins the corresponding input value.
      auto force_var = [&](const ExprPtr& side) {
        if (side->kind != ExprKind::Var) return;
        VarId var = side->var;
        if (pre.binds(var) || !v.binds(var)) return;
        auto source = origin.find(var);
        if (source == origin.end()) return;
        witness.inputs[source->second].value = *v.get(var);
        witness.inputs[source->second].forced = true;
        origin.erase(source);
      };
      force_var(op.pred.lhs);
      force_var(op.pred.rhs);
      if (op.pred.lhs->kind == ExprKind::Nondet) {
        EvalResult rhs = eval(op.pred.rhs, pre);
        if (rhs.is_value()) {
          witness.inputs[leaves.front()].value = rhs.value;
          witness.inputs[leaves.front()].forced = true;
        }
      } else if (op.pred.rhs->kind == ExprKind::Nondet) {
        EvalResult lhs = eval(op.pred.lhs, pre);
        if (lhs.is_value()) {
          witness.inputs[leaves.back()].value = lhs.value;
          witness.inputs[leaves.back()].forced = true;
        }
      }
    }

    WitnessRow row;
    row.line = step.line;
    row.operation = render(op, names);
    row.post_state = v.to_string(names);
    witness.rows.push_back(std::move(row));
  }

  LocId target =
      path.steps.empty() ? problem.initial : path.steps.back().loc;
  witness.error_line = cfa.location(target).line;
  return witness;
}

std::string Witness::render() const {
  std::string out;
  out += "inputs:";
  if (inputs.empty()) {
    out += " none\n";
  } else {
    out += "\n";
    for (const WitnessInput& input : inputs)
      out += "  nondet#" + std::to_string(input.index) + " (line " +
             std::to_string(input.line) + ") = " + input.value.str() +
             (input.forced ? "" : "  (free, defaulted)") + "\n";
  }
  if (!rows.empty()) {
    out += "trace:\n";
    for (const WitnessRow& row : rows)
      out += "  line " + std::to_string(row.line) + ": " + row.operation +
             "  ->  " + row.post_state + "\n";
  }
  out += "error() reached at line " + std::to_string(error_line) + "\n";
  return out;
}

}  // namespace evcheck

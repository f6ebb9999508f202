#include "verify.hpp"

#include <chrono>
#include <stdexcept>

#include "refine.hpp"

namespace evcheck {

namespace {

std::uint64_t now_ms() {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now().time_since_epoch())
          .count());
}

VerifyResult unknown(std::string reason) {
  VerifyResult result;
  result.verdict = Verdict::Unknown;
  result.reason = std::move(reason);
  return result;
}

}  // namespace

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Safe:
      return "SAFE";
    case Verdict::Unsafe:
      return "UNSAFE";
    case Verdict::Unknown:
      return "UNKNOWN";
  }
  throw std::logic_error("bad verdict");
}

std::string VerifyResult::verdict_string() const {
  if (verdict == Verdict::Unknown) return "UNKNOWN(" + reason + ")";
  return to_string(verdict);
}

std::string dump_arg(const Problem& problem, const Arg& arg) {
  VarNames names = problem.cfa.names();
  std::string out;
  std::vector<NodeId> live = arg.live_nodes();
  for (NodeId id : live) {
    const ArgNode& node = arg.node(id);
    out += "node " + std::to_string(node.id) + " loc=" +
           std::to_string(node.loc) + " state=" + node.data.to_string(names) +
           " prec=" + node.precision.to_string(names);
    if (node.covered_by)
      out += " covered-by=" + std::to_string(*node.covered_by);
    if (problem.is_error(node.loc)) out += " target";
    out += "\n";
  }
  for (NodeId id : live) {
    const ArgNode& node = arg.node(id);
    if (!node.parent) continue;
    out += "edge " + std::to_string(*node.parent) + " -> " +
           std::to_string(node.id) + " : " +
           render(problem.cfa.edge(node.parent_edge).op, names) + "\n";
  }
  return out;
}

VerifyResult run_verification(const Problem& problem, const RunConfig& config) {
  const std::uint64_t started = now_ms();
  const Cfa& cfa = problem.cfa;
  VarNames names = cfa.names();
  ExplicitCpa cpa;

  ProgramPrecision pi = config.mode == Mode::ExplicitFull
                            ? ProgramPrecision(Precision(cfa.all_vars()))
                            : ProgramPrecision();

  ReachLimits limits;
  limits.node_budget = config.state_budget;
  limits.deadline_ms =
      config.time_limit_ms ? started + config.time_limit_ms : 0;

  ReachStats reach_stats;
  Arg arg(problem.initial, pi.at(problem.initial));
  reach_stats.nodes_created = arg.created_count();

  VerifyResult result;
  std::uint64_t refinements = 0;

  for (;;) {
    ReachResult reached = reach(problem, arg, pi, cpa, config.traversal,
                                limits, reach_stats);
    if (reached.outcome == ReachOutcome::Exhausted) {
      result.verdict = Verdict::Safe;
      break;
    }
    if (reached.outcome == ReachOutcome::BudgetExceeded) {
      result = unknown("StateBudgetExceeded");
      break;
    }
    if (reached.outcome == ReachOutcome::TimeLimit) {
      result = unknown("TimeLimitExceeded");
      break;
    }

    Path path = extract_error_path(cfa, arg, *reached.target);
    FeasibilityResult feasibility = is_feasible(path);
    if (feasibility.feasible) {
      result.verdict = Verdict::Unsafe;
      result.witness = build_witness(problem, path);
      break;
    }
    if (config.mode == Mode::ExplicitFull)
      throw std::logic_error(
          "full-precision exploration produced an infeasible path");

    if (refinements >= config.max_refinements) {
      result = unknown("MaxRefinementsExceeded");
      break;
    }

    ProgramPrecision refined = refine(path, names);
    ProgramPrecision applied =
        config.scoped_precision ? scope_precision(refined, cfa) : refined;
    if (!pi.gains_from(applied)) {
      // The domain cannot learn anything more from this path; give up
      // instead of rediscovering it forever.
      result = unknown("RefinementFailure");
      break;
    }

    ProgramPrecision before = pi;
    pi.merge(applied);
    ++refinements;

    ++result.stats.path_elim_checks;
    if (!path_eliminated(path, pi)) ++result.stats.path_elim_failures;

    if (config.refinement == RefinementStrategy::Prune &&
        before.gains_from(refined)) {
      // Cut at the unscoped refinement: that is where the interpolants live.
      prune_arg(arg, before, refined, path);
    } else {
      arg = Arg(problem.initial, pi.at(problem.initial));
      reach_stats.nodes_created += 1;  // fresh root
    }
  }

  result.stats.refinements = refinements;
  result.stats.nodes_created = reach_stats.nodes_created;
  result.stats.nodes_peak = reach_stats.nodes_peak;
  result.stats.max_tracked = pi.max_size();
  result.final_precision = std::move(pi);
  if (config.want_arg_dump) result.arg_dump = dump_arg(problem, arg);
  result.stats.wall_ms = now_ms() - started;
  return result;
}

}  // namespace evcheck

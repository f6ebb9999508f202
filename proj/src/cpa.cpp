#include "cpa.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

namespace evcheck {

std::vector<AbstractState> ExplicitCpa::transfer(const AbstractState& state,
                                                 const Edge& edge) const {
  if (edge.from != state.loc)
    throw std::logic_error("transfer: edge does not start at state location");
  if (state.data.contradicting()) return {};
  Assignment successor = sp_op(state.data, edge.op);
  if (successor.contradicting()) return {};
  return {AbstractState{edge.to, std::move(successor)}};
}

Assignment ExplicitCpa::merge(const Assignment& v, const Assignment& w,
                              const Precision& pi) const {
  (void)v;
  (void)pi;
  return w;  // merge-sep: do not combine states when control flow meets
}

bool ExplicitCpa::stop(const Assignment& v,
                       const std::vector<const Assignment*>& reached,
                       const Precision& pi) const {
  (void)pi;
  return std::any_of(reached.begin(), reached.end(),
                     [&](const Assignment* w) { return leq(v, *w); });
}

Assignment ExplicitCpa::prec(const Assignment& v, const Precision& pi) const {
  return restrict_to(v, pi.vars());
}

namespace {

std::uint64_t now_ms() {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now().time_since_epoch())
          .count());
}

}  // namespace

ReachResult reach(const Problem& problem, Arg& arg,
                  const ProgramPrecision& precision, const CpaOperators& cpa,
                  Traversal traversal, const ReachLimits& limits,
                  ReachStats& stats) {
  const Cfa& cfa = problem.cfa;
  stats.nodes_peak = std::max<std::uint64_t>(stats.nodes_peak,
                                             arg.live_count());
  std::uint64_t pops = 0;
  while (!arg.waitlist_empty()) {
    if (limits.deadline_ms && (++pops & 0xff) == 0 &&
        now_ms() >= limits.deadline_ms)
      return {ReachOutcome::TimeLimit, std::nullopt};

    NodeId current = traversal == Traversal::Dfs ? arg.pop_newest()
                                                 : arg.pop_oldest();
    const ArgNode& node = arg.node(current);
    // Only the root can still be an unchecked target here; successors are
    // checked on creation.
    if (problem.is_error(node.loc))
      return {ReachOutcome::TargetFound, current};

    AbstractState state{node.loc, node.data};
    for (EdgeId edge_id : cfa.out_edges[node.loc]) {
      const Edge& edge = cfa.edge(edge_id);
      for (AbstractState& successor : cpa.transfer(state, edge)) {
        // Precision adjustment with the location-specific precision.
        const Precision& pi = precision.at(successor.loc);
        Assignment adjusted = cpa.prec(successor.data, pi);

        if (stats.nodes_created + 1 > limits.node_budget)
          return {ReachOutcome::BudgetExceeded, std::nullopt};
        NodeId fresh = arg.make_node(successor.loc, std::move(adjusted), pi,
                                     current, edge_id);
        ++stats.nodes_created;
        stats.nodes_peak =
            std::max<std::uint64_t>(stats.nodes_peak, arg.live_count());

        if (problem.is_error(successor.loc)) {
          arg.add_to_reached(fresh);
          return {ReachOutcome::TargetFound, fresh};
        }

        // Combine with existing states; with merge-sep this never changes
        // anything, so only inequality would force an update.
        const ArgNode& fresh_node = arg.node(fresh);
        if (!cpa.merge_is_sep()) {
          for (NodeId existing : arg.reached_at(successor.loc)) {
            Assignment merged =
                cpa.merge(fresh_node.data, arg.node(existing).data, pi);
            if (!(merged == arg.node(existing).data))
              throw std::logic_error(
                  "merge operator changed an existing state");
          }
        }

        if (auto coverer = arg.find_covering(successor.loc, fresh_node.data)) {
          arg.mark_covered(fresh, *coverer);
        } else {
          arg.add_to_reached(fresh);
          arg.add_to_waitlist(fresh);
        }
      }
    }
  }
  return {ReachOutcome::Exhausted, std::nullopt};
}

Path extract_error_path(const Cfa& cfa, const Arg& arg, NodeId target) {
  Path path;
  std::vector<PathStep> reversed;
  NodeId cursor = target;
  while (arg.node(cursor).parent) {
    const ArgNode& node = arg.node(cursor);
    const Edge& edge = cfa.edge(node.parent_edge);
    PathStep step;
    step.op = edge.op;
    step.loc = node.loc;
    step.line = edge.line;
    step.node = cursor;
    reversed.push_back(std::move(step));
    cursor = *node.parent;
  }
  path.root_node = cursor;
  path.steps.assign(reversed.rbegin(), reversed.rend());
  return path;
}

ConstraintSeq constraint_sequence(const Path& path) {
  ConstraintSeq seq;
  seq.reserve(path.steps.size());
  for (const PathStep& step : path.steps) seq.push_back(step.op);
  return seq;
}

void prune_arg(Arg& arg, const ProgramPrecision& before,
               const ProgramPrecision& refined, const Path& path) {
  // The refinement must add a variable somewhere along the path.
  std::optional<std::size_t> cut;  // 0 = root, i >= 1 = path step i-1
  if (before.gains_at(arg.node(path.root_node).loc, refined)) {
    cut = 0;
  } else {
    for (std::size_t i = 0; i < path.steps.size(); ++i) {
      if (before.gains_at(path.steps[i].loc, refined)) {
        cut = i + 1;
        break;
      }
    }
  }
  if (!cut)
    throw std::invalid_argument(
        "prune_arg: refined precision gains nothing along the path");

  if (*cut == 0) {
    // Restart from the root: drop every subtree and re-queue the root.
    NodeId root = path.root_node;
    std::vector<NodeId> children = arg.node(root).children;
    for (NodeId child : children) arg.remove_subtree(child);
    arg.add_to_waitlist(root);
    return;
  }

  NodeId victim = path.steps[*cut - 1].node;
  NodeId parent = *arg.node(victim).parent;
  arg.remove_subtree(victim);
  arg.add_to_waitlist(parent);
}

}  // namespace evcheck

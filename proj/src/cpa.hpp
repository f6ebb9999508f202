#ifndef EVCHECK_CPA_HPP
#define EVCHECK_CPA_HPP

// The configurable-program-analysis layer: the operator bundle of the
// composite location x explicit-value analysis, the worklist reachability
// algorithm, error-path extraction and lazy ARG pruning.

#include <cstdint>
#include <optional>
#include <vector>

#include "arg.hpp"
#include "cfa.hpp"
#include "domain.hpp"

namespace evcheck {

struct AbstractState {
  LocId loc = 0;
  Assignment data;
};

// The operator bundle of a CPA with dynamic precision adjustment.  Only the
// explicit-value instantiation exists today, but the reachability engine
// goes through this interface so other operator choices can be plugged in.
class CpaOperators {
 public:
  virtual ~CpaOperators() = default;

  // At most one successor; none when the successor state is contradicting.
  virtual std::vector<AbstractState> transfer(const AbstractState& state,
                                              const Edge& edge) const = 0;
  virtual Assignment merge(const Assignment& v, const Assignment& w,
                           const Precision& pi) const = 0;
  // True when merge never combines states (merge-sep); lets the engine skip
  // the combine step instead of probing every reached state.
  virtual bool merge_is_sep() const { return false; }
  virtual bool stop(const Assignment& v,
                    const std::vector<const Assignment*>& reached,
                    const Precision& pi) const = 0;
  virtual Assignment prec(const Assignment& v, const Precision& pi) const = 0;
};

// merge-sep / stop-sep / restricting precision adjustment.
class ExplicitCpa final : public CpaOperators {
 public:
  std::vector<AbstractState> transfer(const AbstractState& state,
                                      const Edge& edge) const override;
  Assignment merge(const Assignment& v, const Assignment& w,
                   const Precision& pi) const override;
  bool merge_is_sep() const override { return true; }
  bool stop(const Assignment& v,
            const std::vector<const Assignment*>& reached,
            const Precision& pi) const override;
  Assignment prec(const Assignment& v, const Precision& pi) const override;
};

enum class Traversal : std::uint8_t { Dfs, Bfs };

struct ReachLimits {
  // Cap on ARG nodes created over the whole verification run.
  std::uint64_t node_budget = 1'000'000;
  // Steady-clock deadline in milliseconds since epoch; 0 disables.
  std::uint64_t deadline_ms = 0;
};

struct ReachStats {
  std::uint64_t nodes_created = 0;
  std::uint64_t nodes_peak = 0;
};

enum class ReachOutcome : std::uint8_t {
  TargetFound,
  Exhausted,
  BudgetExceeded,
  TimeLimit,
};

struct ReachResult {
  ReachOutcome outcome = ReachOutcome::Exhausted;
  std::optional<NodeId> target;
};

// The CPA reachability algorithm, resumable on a previously explored (and
// possibly pruned) ARG.  Successor precisions are looked up per location in
// the program precision, so refinements take effect without rebuilding.
ReachResult reach(const Problem& problem, Arg& arg,
                  const ProgramPrecision& precision, const CpaOperators& cpa,
                  Traversal traversal, const ReachLimits& limits,
                  ReachStats& stats);

struct PathStep {
  Operation op;
  LocId loc = 0;    // target location of the edge
  int line = 0;     // source line of the edge
  NodeId node = 0;  // ARG node reached by this step
};

struct Path {
  NodeId root_node = 0;
  std::vector<PathStep> steps;
};

// Walks parent edges from the target back to the root.
Path extract_error_path(const Cfa& cfa, const Arg& arg, NodeId target);

ConstraintSeq constraint_sequence(const Path& path);

// Lazy refinement: removes the subtree under the path node closest to the
// root whose location gained precision, and re-queues its parent.  When the
// root itself gained precision all subtrees are cut and the root is
// re-queued, which is equivalent to a restart.  `before` is the precision
// the exploration ran with, `refined` what the refinement produced.
// Throws std::invalid_argument when refined gains nothing along the path.
void prune_arg(Arg& arg, const ProgramPrecision& before,
               const ProgramPrecision& refined, const Path& path);

}  // namespace evcheck

#endif

#ifndef EVCHECK_ARG_HPP
#define EVCHECK_ARG_HPP

// Abstract reachability graph: the tree-shaped unfolding of the CFA built
// during state-space exploration.  Nodes keep their parent edge for error
// path extraction; covered nodes are retained (marked, not deleted) so that
// pruning a subtree can un-cover them again.
//
// Reached states are indexed per location by their binding signature, so the
// coverage check enumerates subsets of the query's bindings instead of
// scanning every state at the location.

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "cfa.hpp"
#include "domain.hpp"

namespace evcheck {

using NodeId = std::uint32_t;

struct ArgNode {
  NodeId id = 0;
  LocId loc = 0;
  Assignment data;
  Precision precision;
  std::optional<NodeId> parent;
  EdgeId parent_edge = 0;
  std::vector<NodeId> children;
  std::optional<NodeId> covered_by;
  bool removed = false;
};

class Arg {
 public:
  // Creates the root node (which starts out on the waitlist).
  Arg(LocId initial, Precision root_precision);

  const ArgNode& node(NodeId id) const { return nodes_[id]; }
  NodeId root() const { return root_; }
  std::size_t live_count() const { return live_; }
  std::uint64_t created_count() const { return created_; }

  bool waitlist_empty() const { return waitlist_.empty(); }
  std::size_t waitlist_size() const { return waitlist_.size(); }
  NodeId pop_newest();  // DFS
  NodeId pop_oldest();  // BFS

  // Creates a successor node. The node is not yet reached nor waitlisted.
  NodeId make_node(LocId loc, Assignment data, Precision precision,
                   NodeId parent, EdgeId parent_edge);

  // Non-covered reached nodes at the location, in insertion order.
  const std::vector<NodeId>& reached_at(LocId loc) const;

  // Reached node with the smallest id at the same location whose state
  // covers data.
  std::optional<NodeId> find_covering(LocId loc, const Assignment& data) const;

  void add_to_reached(NodeId id);
  void add_to_waitlist(NodeId id);
  void mark_covered(NodeId id, NodeId by);

  // Removes the subtree rooted at id (from the graph, the reached index and
  // the waitlist).  Nodes elsewhere that were covered by a removed node are
  // re-covered if possible and otherwise returned to reached + waitlist.
  void remove_subtree(NodeId id);

  // Live node ids in creation order (for dumps and consistency checks).
  std::vector<NodeId> live_nodes() const;

 private:
  struct Signature {
    std::vector<VarId> def;
    std::vector<Int> values;

    bool operator<(const Signature& other) const {
      if (def != other.def) return def < other.def;
      return values < other.values;
    }
  };

  struct LocIndex {
    std::vector<NodeId> all;  // insertion order
    std::map<Signature, std::vector<NodeId>> buckets;
  };

  static Signature signature_of(const Assignment& data);

  void purge(NodeId id);

  std::vector<ArgNode> nodes_;
  NodeId root_ = 0;
  std::unordered_map<LocId, LocIndex> reached_;
  std::deque<NodeId> waitlist_;
  std::unordered_map<NodeId, std::vector<NodeId>> covered_index_;
  std::size_t live_ = 0;
  std::uint64_t created_ = 0;
  std::vector<NodeId> empty_;
};

}  // namespace evcheck

#endif

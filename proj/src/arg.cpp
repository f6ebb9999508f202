#include "arg.hpp"

#include <algorithm>
#include <stdexcept>

namespace evcheck {

Arg::Arg(LocId initial, Precision root_precision) {
  ArgNode root;
  root.id = 0;
  root.loc = initial;
  root.precision = std::move(root_precision);
  nodes_.push_back(std::move(root));
  root_ = 0;
  live_ = 1;
  created_ = 1;
  add_to_reached(root_);
  add_to_waitlist(root_);
}

NodeId Arg::pop_newest() {
  NodeId id = waitlist_.back();
  waitlist_.pop_back();
  return id;
}

NodeId Arg::pop_oldest() {
  NodeId id = waitlist_.front();
  waitlist_.pop_front();
  return id;
}

NodeId Arg::make_node(LocId loc, Assignment data, Precision precision,
                      NodeId parent, EdgeId parent_edge) {
  ArgNode node;
  node.id = static_cast<NodeId>(nodes_.size());
  node.loc = loc;
  node.data = std::move(data);
  node.precision = std::move(precision);
  node.parent = parent;
  node.parent_edge = parent_edge;
  nodes_[parent].children.push_back(node.id);
  NodeId id = node.id;
  nodes_.push_back(std::move(node));
  ++live_;
  ++created_;
  return id;
}

const std::vector<NodeId>& Arg::reached_at(LocId loc) const {
  auto it = reached_.find(loc);
  return it == reached_.end() ? empty_ : it->second.all;
}

Arg::Signature Arg::signature_of(const Assignment& data) {
  Signature sig;
  sig.def.reserve(data.bindings().size());
  sig.values.reserve(data.bindings().size());
  for (const auto& [var, value] : data.bindings()) {
    sig.def.push_back(var);
    sig.values.push_back(value);
  }
  return sig;
}

std::optional<NodeId> Arg::find_covering(LocId loc,
                                         const Assignment& data) const {
  auto it = reached_.find(loc);
  if (it == reached_.end()) return std::nullopt;
  const LocIndex& index = it->second;

  std::optional<NodeId> best;
  auto consider = [&best](const std::vector<NodeId>& candidates) {
    for (NodeId id : candidates)
      if (!best || id < *best) best = id;
  };

  const auto& bindings = data.bindings();
  const std::size_t width = bindings.size();
  if (width > 12) {
    // Degenerate precision sizes: fall back to the linear scan.
    for (NodeId candidate : index.all)
      if (leq(data, nodes_[candidate].data))
        if (!best || candidate < *best) best = candidate;
    return best;
  }

  // A covering state binds a subset of data's bindings with equal values.
  Signature probe;
  for (std::uint32_t mask = 0; mask < (1u << width); ++mask) {
    probe.def.clear();
    probe.values.clear();
    for (std::size_t bit = 0; bit < width; ++bit) {
      if (mask & (1u << bit)) {
        probe.def.push_back(bindings[bit].first);
        probe.values.push_back(bindings[bit].second);
      }
    }
    auto bucket = index.buckets.find(probe);
    if (bucket != index.buckets.end()) consider(bucket->second);
  }
  return best;
}

void Arg::add_to_reached(NodeId id) {
  LocIndex& index = reached_[nodes_[id].loc];
  index.all.push_back(id);
  index.buckets[signature_of(nodes_[id].data)].push_back(id);
}

void Arg::add_to_waitlist(NodeId id) { waitlist_.push_back(id); }

void Arg::mark_covered(NodeId id, NodeId by) {
  nodes_[id].covered_by = by;
  covered_index_[by].push_back(id);
}

void Arg::purge(NodeId id) {
  ArgNode& node = nodes_[id];
  node.removed = true;
  --live_;
  auto reached_it = reached_.find(node.loc);
  if (reached_it != reached_.end()) {
    LocIndex& index = reached_it->second;
    auto& list = index.all;
    list.erase(std::remove(list.begin(), list.end(), id), list.end());
    auto bucket = index.buckets.find(signature_of(node.data));
    if (bucket != index.buckets.end()) {
      auto& ids = bucket->second;
      ids.erase(std::remove(ids.begin(), ids.end(), id), ids.end());
      if (ids.empty()) index.buckets.erase(bucket);
    }
  }
  waitlist_.erase(std::remove(waitlist_.begin(), waitlist_.end(), id),
                  waitlist_.end());
  if (node.covered_by) {
    auto covered_it = covered_index_.find(*node.covered_by);
    if (covered_it != covered_index_.end()) {
      auto& list = covered_it->second;
      list.erase(std::remove(list.begin(), list.end(), id), list.end());
    }
    node.covered_by.reset();
  }
}

void Arg::remove_subtree(NodeId id) {
  ArgNode& top = nodes_[id];
  if (top.removed) throw std::logic_error("subtree root already removed");
  if (top.parent) {
    auto& siblings = nodes_[*top.parent].children;
    siblings.erase(std::remove(siblings.begin(), siblings.end(), id),
                   siblings.end());
  }

  std::vector<NodeId> removed;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    NodeId current = stack.back();
    stack.pop_back();
    removed.push_back(current);
    for (NodeId child : nodes_[current].children) stack.push_back(child);
    nodes_[current].children.clear();
  }
  for (NodeId current : removed) purge(current);

  // Un-cover nodes whose covering node went away: either another reached
  // state still covers them, or they become frontier nodes again.
  std::vector<NodeId> orphaned;
  for (NodeId current : removed) {
    auto it = covered_index_.find(current);
    if (it == covered_index_.end()) continue;
    for (NodeId dependent : it->second)
      if (!nodes_[dependent].removed) orphaned.push_back(dependent);
    covered_index_.erase(it);
  }
  for (NodeId dependent : orphaned) {
    ArgNode& node = nodes_[dependent];
    node.covered_by.reset();
    if (auto coverer = find_covering(node.loc, node.data)) {
      mark_covered(dependent, *coverer);
    } else {
      add_to_reached(dependent);
      add_to_waitlist(dependent);
    }
  }
}

std::vector<NodeId> Arg::live_nodes() const {
  std::vector<NodeId> out;
  for (const ArgNode& node : nodes_)
    if (!node.removed) out.push_back(node.id);
  return out;
}

}  // namespace evcheck

// Search nodes, the open deque and the explored table used by LaCAS, with
// the label-correcting rewiring that keeps parent pointers on shortest
// paths of the discovered graph.
#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lacas/geometry.hpp"

namespace lacas {

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

struct SearchNode {
  LocationId loc = 0;
  NodeId parent = kNoNode;
  TieKey theta = kMinKey;
  double g = 0.0;
  std::vector<NodeId> neighbors;  // discovered outgoing connections
};

/// Double-ended frontier; the back is the top. Duplicate entries allowed.
class OpenDeque {
 public:
  bool empty() const noexcept { return q_.empty(); }
  std::size_t size() const noexcept { return q_.size(); }
  NodeId top() const { return q_.back(); }
  void push_top(NodeId n) { q_.push_back(n); }
  void pop_top() { q_.pop_back(); }
  void push_bottom(NodeId n) { q_.push_front(n); }
  const std::deque<NodeId>& entries() const noexcept { return q_; }

 private:
  std::deque<NodeId> q_;
};

class SearchTree {
 public:
  explicit SearchTree(const ProblemInstance& ins)
      : ins_(&ins), explored_(ins.size(), kNoNode) {}

  const ProblemInstance& instance() const noexcept { return *ins_; }
  std::size_t size() const noexcept { return nodes_.size(); }

  SearchNode& operator[](NodeId id) { return nodes_[id]; }
  const SearchNode& operator[](NodeId id) const { return nodes_[id]; }

  /// Explored-table lookup; kNoNode for unseen locations.
  NodeId find(LocationId loc) const { return explored_[loc]; }

  /// Creates the unique node for `loc`. References into the tree are
  /// invalidated; hold NodeIds instead.
  NodeId create(LocationId loc, NodeId parent, double g) {
    if (explored_[loc] != kNoNode)
      throw std::logic_error("location already explored");
    const auto id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back(SearchNode{loc, parent, kMinKey, g, {}});
    explored_[loc] = id;
    return id;
  }

  double edge(NodeId from, NodeId to) const {
    return dist(ins_->at(nodes_[from].loc), ins_->at(nodes_[to].loc));
  }

  /// g plus straight-line distance to the goal.
  double f(NodeId id) const {
    const auto& n = nodes_[id];
    return n.g + dist(ins_->at(n.loc), ins_->at(ins_->goal));
  }

  /// Start-to-node location sequence following parent pointers.
  std::vector<LocationId> backtrack(NodeId id) const {
    std::vector<LocationId> path;
    for (NodeId cur = id; cur != kNoNode; cur = nodes_[cur].parent) {
      if (path.size() > nodes_.size())
        throw std::logic_error("cycle in parent chain");
      path.push_back(nodes_[cur].loc);
    }
    return {path.rbegin(), path.rend()};
  }

  /// Tries the arc from -> to. On improvement updates g and parent and
  /// revives `to` into `open` when it now beats the incumbent goal node.
  bool relax(NodeId from, NodeId to, NodeId goal_node, OpenDeque& open) {
    const double g = nodes_[from].g + edge(from, to);
    if (!(g < nodes_[to].g)) return false;
    nodes_[to].g = g;
    nodes_[to].parent = from;
    if (goal_node != kNoNode && f(to) < f(goal_node)) open.push_top(to);
    return true;
  }

  /// Dijkstra-ordered label correction over the neighbor arcs, starting at
  /// the seeds. Terminates because g strictly decreases on every update.
  void rewire_from(std::span<const NodeId> seeds, NodeId goal_node,
                   OpenDeque& open) {
    using Entry = std::pair<double, NodeId>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    for (auto s : seeds) queue.emplace(nodes_[s].g, s);
    while (!queue.empty()) {
      const auto [g, from] = queue.top();
      queue.pop();
      if (g > nodes_[from].g) continue;  // stale
      // index loop: relax() never grows the neighbor list
      const auto& out = nodes_[from].neighbors;
      for (std::size_t i = 0; i < out.size(); ++i) {
        const NodeId to = out[i];
        if (relax(from, to, goal_node, open)) queue.emplace(nodes_[to].g, to);
      }
    }
  }

  void rewire_from(NodeId seed, NodeId goal_node, OpenDeque& open) {
    rewire_from(std::span<const NodeId>(&seed, 1), goal_node, open);
  }

 private:
  const ProblemInstance* ins_;
  std::vector<SearchNode> nodes_;
  std::vector<NodeId> explored_;
};

}  // namespace lacas

// LaCAS: lazy constraints addition search.
//
// Each node owns a threshold theta. Every time the node reaches the top of
// the open deque it pulls the next batch of locations strictly beyond theta
// (nearest first), raises theta to the farthest key of that batch and tries
// to connect to each candidate. A node is discarded only once its batches
// are exhausted, so every location is eventually offered to every node.
//
// The anytime part keeps g-values and discovered arcs, rewires the tree
// whenever a known location is reached more cheaply, prunes nodes whose
// f-value cannot beat the incumbent and revives them when they can again.
//
// Optional techniques:
//   sort_batch   batch processed far-to-near w.r.t. the goal (nearest on top)
//   reinsert     re-encountered node is pushed back to the top
//   rolling      invoked node is moved to the bottom before its batch is used
//   grandparent  LaCAT; attach through the parent's parent when connectable
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "lacas/geometry.hpp"
#include "lacas/neighbor_index.hpp"
#include "lacas/outcome.hpp"
#include "lacas/search_tree.hpp"

namespace lacas {

struct SearchConfig {
  std::size_t batch_size = 10;
  bool sort_batch = true;
  bool reinsert = false;
  bool rolling = false;
  bool grandparent = false;
  bool anytime = false;
  Budget budget;
  std::uint64_t seed = 0;  // batch shuffling when sort_batch is off
};

/// Hooks for tests and tracing. Default implementations do nothing.
class SearchObserver {
 public:
  virtual ~SearchObserver() = default;
  virtual void on_batch(LocationId /*loc*/, const TieKey& /*theta_before*/,
                        std::span<const LocationId> /*batch*/) {}
  virtual void on_iteration_end(std::uint64_t /*iteration*/) {}
};

using ImproveCallback = std::function<void(
    const std::vector<LocationId>& path, double cost, double elapsed)>;

/// Batches from the k-d tree.
class TreeBatches {
 public:
  explicit TreeBatches(const NeighborIndex& index) : index_(&index) {}

  std::vector<LocationId> next(LocationId loc, const TieKey& theta,
                               std::size_t b) {
    return index_->nearest_beyond(loc, b, theta);
  }

 private:
  const NeighborIndex* index_;
};

/// Batches from a full per-location sort done on first use (the partial
/// expansion baseline). Same answers as TreeBatches, different cost.
class SortedBatches {
 public:
  explicit SortedBatches(const ProblemInstance& ins)
      : ins_(&ins), keys_(ins.size()), done_(ins.size(), false) {}

  std::vector<LocationId> next(LocationId loc, const TieKey& theta,
                               std::size_t b) {
    std::vector<LocationId> out;
    if (done_[loc]) return out;
    auto& keys = keys_[loc];
    if (keys.empty()) {
      const Point& at = ins_->at(loc);
      keys.reserve(ins_->size() - 1);
      for (LocationId u = 0; u < ins_->size(); ++u)
        if (u != loc) keys.push_back({dist(at, ins_->at(u)), u});
      std::sort(keys.begin(), keys.end());
    }
    auto it = std::upper_bound(keys.begin(), keys.end(), theta);
    for (; it != keys.end() && out.size() < b; ++it) out.push_back(it->id);
    if (out.empty()) {
      done_[loc] = true;
      std::vector<TieKey>().swap(keys);
    }
    return out;
  }

 private:
  const ProblemInstance* ins_;
  std::vector<std::vector<TieKey>> keys_;
  std::vector<bool> done_;
};

template <class Batches>
class LazySearch {
 public:
  LazySearch(const ProblemInstance& ins, Batches& batches,
             const SearchConfig& config, CallCounter& counter)
      : ins_(&ins),
        batches_(&batches),
        config_(config),
        counter_(&counter),
        tree_(ins),
        deadline_(config.budget),
        rng_(config.seed) {
    if (config_.batch_size == 0)
      throw std::invalid_argument("batch size must be positive");
    const NodeId root = tree_.create(ins.start, kNoNode, 0.0);
    open_.push_top(root);
  }

  void set_observer(SearchObserver* obs) { observer_ = obs; }
  void set_on_improve(ImproveCallback cb) { on_improve_ = std::move(cb); }

  /// One iteration. False once the search has terminated.
  bool step() {
    if (finished_) return false;
    if (open_.empty() || deadline_.expired(iterations_)) {
      finished_ = true;
      return false;
    }
    iterate();
    if (observer_) observer_->on_iteration_end(iterations_);
    return !finished_;
  }

  SearchOutcome run() {
    while (step()) {
    }
    return outcome();
  }

  SearchOutcome outcome() const {
    SearchOutcome out;
    out.iterations = iterations_;
    out.events = events_;
    if (goal_ != kNoNode) {
      out.kind = OutcomeKind::kSolution;
      out.path = tree_.backtrack(goal_);
      out.waypoints = to_waypoints(*ins_, out.path);
      out.cost = path_cost(*ins_, out.path);
      out.proven_optimal = config_.anytime && open_.empty();
    } else if (open_.empty()) {
      out.kind = OutcomeKind::kNoSolution;
    } else {
      out.kind = OutcomeKind::kFailure;
      out.reason = config_.budget.iterations &&
                           iterations_ >= *config_.budget.iterations
                       ? FailureReason::kIterationCap
                       : FailureReason::kTimeout;
    }
    return out;
  }

  const SearchTree& tree() const noexcept { return tree_; }
  const OpenDeque& open() const noexcept { return open_; }
  NodeId goal_node() const noexcept { return goal_; }
  std::uint64_t iterations() const noexcept { return iterations_; }
  double elapsed() const { return deadline_.elapsed(); }

 private:
  void iterate() {
    ++iterations_;
    const NodeId cur = open_.top();
    const LocationId loc = tree_[cur].loc;

    if (loc == ins_->goal) {
      goal_ = cur;
      if (!config_.anytime) {
        record_improvement();
        finished_ = true;
        return;
      }
    }

    if (config_.anytime && goal_ != kNoNode && tree_.f(cur) >= tree_.f(goal_)) {
      open_.pop_top();
      record_improvement();
      return;
    }

    auto batch = batches_->next(loc, tree_[cur].theta, config_.batch_size);
    if (batch.empty()) {
      open_.pop_top();
      return;
    }
    if (observer_) observer_->on_batch(loc, tree_[cur].theta, batch);
    tree_[cur].theta = TieKey{dist(ins_->at(loc), ins_->at(batch.back())),
                              batch.back()};

    if (config_.rolling) {
      open_.pop_top();
      open_.push_bottom(cur);
    }

    order_batch(batch);
    for (const LocationId v : batch) {
      if (!connect(*ins_, loc, v, *counter_)) continue;
      const NodeId known = tree_.find(v);
      if (known == kNoNode) {
        create_successor(cur, v);
      } else {
        touch_known(cur, known);
      }
    }
    record_improvement();
  }

  void order_batch(std::vector<LocationId>& batch) {
    if (config_.sort_batch) {
      const Point& goal = ins_->at(ins_->goal);
      std::vector<TieKey> keyed;
      keyed.reserve(batch.size());
      for (auto v : batch) keyed.push_back({dist(ins_->at(v), goal), v});
      // farthest from the goal first, so the nearest ends on top
      std::sort(keyed.begin(), keyed.end(),
                [](const TieKey& a, const TieKey& b) { return b < a; });
      for (std::size_t i = 0; i < batch.size(); ++i) batch[i] = keyed[i].id;
    } else {
      std::shuffle(batch.begin(), batch.end(), rng_);
    }
  }

  NodeId grandparent_of(NodeId n) const { return tree_[n].parent; }

  void create_successor(NodeId cur, LocationId v) {
    NodeId parent = cur;
    double g = tree_[cur].g + dist(ins_->at(tree_[cur].loc), ins_->at(v));
    const NodeId gp = config_.grandparent ? grandparent_of(cur) : kNoNode;
    bool via_gp = false;
    if (gp != kNoNode && connect(*ins_, tree_[gp].loc, v, *counter_)) {
      via_gp = true;
      parent = gp;
      g = tree_[gp].g + dist(ins_->at(tree_[gp].loc), ins_->at(v));
    }
    const NodeId fresh = tree_.create(v, parent, g);
    open_.push_top(fresh);
    if (config_.anytime) {
      tree_[cur].neighbors.push_back(fresh);
      if (via_gp) tree_[gp].neighbors.push_back(fresh);
    }
  }

  void touch_known(NodeId cur, NodeId known) {
    if (config_.anytime) {
      tree_[cur].neighbors.push_back(known);
      const NodeId gp = config_.grandparent ? grandparent_of(cur) : kNoNode;
      bool gp_arc = false;
      if (gp != kNoNode && tree_[gp].loc != tree_[known].loc &&
          connect(*ins_, tree_[gp].loc, tree_[known].loc, *counter_)) {
        gp_arc = true;
        tree_[gp].neighbors.push_back(known);
      }
      // Only the new arcs can be inconsistent; anything improved is
      // propagated onward through its own arcs.
      bool improved = tree_.relax(cur, known, goal_, open_);
      if (gp_arc) improved = tree_.relax(gp, known, goal_, open_) || improved;
      if (improved) tree_.rewire_from(known, goal_, open_);
    }
    if (config_.reinsert) open_.push_top(known);
  }

  void record_improvement() {
    if (goal_ == kNoNode || !(tree_[goal_].g < last_goal_g_)) return;
    last_goal_g_ = tree_[goal_].g;
    auto path = tree_.backtrack(goal_);
    const double cost = path_cost(*ins_, path);
    if (!events_.empty() && !(cost < events_.back().cost)) return;
    const double t = deadline_.elapsed();
    events_.push_back({t, iterations_, cost, counter_->count()});
    if (on_improve_) on_improve_(path, cost, t);
  }

  const ProblemInstance* ins_;
  Batches* batches_;
  SearchConfig config_;
  CallCounter* counter_;
  SearchTree tree_;
  OpenDeque open_;
  Deadline deadline_;
  std::mt19937_64 rng_;
  NodeId goal_ = kNoNode;
  std::uint64_t iterations_ = 0;
  bool finished_ = false;
  double last_goal_g_ = std::numeric_limits<double>::infinity();
  std::vector<ImproveEvent> events_;
  SearchObserver* observer_ = nullptr;
  ImproveCallback on_improve_;
};

inline SearchOutcome lacas_search(const ProblemInstance& ins,
                                  const NeighborIndex& index,
                                  const SearchConfig& config,
                                  CallCounter& counter,
                                  ImproveCallback on_improve = {},
                                  SearchObserver* observer = nullptr) {
  TreeBatches batches(index);
  LazySearch<TreeBatches> search(ins, batches, config, counter);
  search.set_on_improve(std::move(on_improve));
  search.set_observer(observer);
  return search.run();
}

/// Partial-expansion baseline: LaCAS control flow with sorted lists in
/// place of the k-d tree.
inline SearchOutcome pe_search(const ProblemInstance& ins,
                               const SearchConfig& config,
                               CallCounter& counter,
                               ImproveCallback on_improve = {},
                               SearchObserver* observer = nullptr) {
  SortedBatches batches(ins);
  LazySearch<SortedBatches> search(ins, batches, config, counter);
  search.set_on_improve(std::move(on_improve));
  search.set_observer(observer);
  return search.run();
}

}  // namespace lacas

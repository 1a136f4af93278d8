// Comparison planners over the same oracle: A*, greedy best-first (each
// with all / k-nearest / radius successors) and goal-ordered DFS.
#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <tuple>
#include <vector>

#include "lacas/geometry.hpp"
#include "lacas/neighbor_index.hpp"
#include "lacas/outcome.hpp"

namespace lacas {

struct SuccessorMode {
  enum class Kind { kAll, kKNearest, kRadius };
  Kind kind = Kind::kAll;
  std::size_t k = 10;
  double r = 0.1;

  static SuccessorMode all() { return {}; }
  static SuccessorMode nearest(std::size_t k) {
    if (k == 0) throw std::invalid_argument("k must be positive");
    return {Kind::kKNearest, k, 0.0};
  }
  static SuccessorMode radius(double r) {
    if (!(r > 0.0)) throw std::invalid_argument("r must be positive");
    return {Kind::kRadius, 0, r};
  }
  bool complete() const noexcept { return kind == Kind::kAll; }
};

namespace detail {

inline std::vector<LocationId> candidates(const ProblemInstance& ins,
                                          const NeighborIndex& index,
                                          const SuccessorMode& mode,
                                          LocationId u) {
  switch (mode.kind) {
    case SuccessorMode::Kind::kKNearest:
      return index.nearest_beyond(u, mode.k, kMinKey);
    case SuccessorMode::Kind::kRadius:
      return index.within_radius(u, mode.r);
    case SuccessorMode::Kind::kAll:
      break;
  }
  std::vector<LocationId> all;
  all.reserve(ins.size());
  for (LocationId v = 0; v < ins.size(); ++v)
    if (v != u) all.push_back(v);
  return all;
}

inline SearchOutcome solution_from_parents(const ProblemInstance& ins,
                                           const std::vector<LocationId>& parent,
                                           std::uint64_t iterations,
                                           double seconds,
                                           std::uint64_t connects) {
  SearchOutcome out;
  out.kind = OutcomeKind::kSolution;
  for (LocationId cur = ins.goal;; cur = parent[cur]) {
    out.path.push_back(cur);
    if (cur == ins.start) break;
  }
  std::reverse(out.path.begin(), out.path.end());
  out.waypoints = to_waypoints(ins, out.path);
  out.cost = path_cost(ins, out.path);
  out.iterations = iterations;
  out.events.push_back({seconds, iterations, out.cost, connects});
  return out;
}

inline SearchOutcome exhausted(const SuccessorMode& mode,
                               std::uint64_t iterations) {
  SearchOutcome out;
  out.iterations = iterations;
  // a restricted successor set proves nothing about the full graph
  if (mode.complete()) {
    out.kind = OutcomeKind::kNoSolution;
  } else {
    out.kind = OutcomeKind::kFailure;
    out.reason = FailureReason::kExhausted;
  }
  return out;
}

enum class Priority { kAStar, kGreedy };

inline SearchOutcome best_first(const ProblemInstance& ins,
                                const NeighborIndex& index,
                                const SuccessorMode& mode, CallCounter& counter,
                                const Budget& budget, Priority priority) {
  const Deadline deadline(budget);
  const auto n = ins.size();
  const Point& goal = ins.at(ins.goal);
  const auto h = [&](LocationId v) { return dist(ins.at(v), goal); };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> g(n, kInf);
  std::vector<LocationId> parent(n, ins.start);
  std::vector<bool> closed(n, false);
  std::vector<bool> seen(n, false);  // greedy: generated at most once

  using Entry = std::tuple<double, double, LocationId>;  // key, -g, id
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  g[ins.start] = 0.0;
  seen[ins.start] = true;
  open.emplace(h(ins.start), 0.0, ins.start);

  std::uint64_t iterations = 0;
  while (!open.empty()) {
    if (deadline.expired(iterations)) return budget_failure(budget, iterations);
    const auto [key, neg_g, u] = open.top();
    open.pop();
    if (closed[u]) continue;
    closed[u] = true;
    ++iterations;
    if (u == ins.goal)
      return solution_from_parents(ins, parent, iterations, deadline.elapsed(),
                                   counter.count());
    const Point& pu = ins.at(u);
    for (const LocationId v : candidates(ins, index, mode, u)) {
      if (closed[v]) continue;
      const double ng = g[u] + dist(pu, ins.at(v));
      if (priority == Priority::kAStar) {
        if (!(ng < g[v])) continue;
      } else if (seen[v]) {
        continue;
      }
      if (!connect(ins, u, v, counter)) continue;
      g[v] = ng;
      parent[v] = u;
      seen[v] = true;
      const double k = priority == Priority::kAStar ? ng + h(v) : h(v);
      open.emplace(k, -ng, v);
    }
  }
  return exhausted(mode, iterations);
}

}  // namespace detail

/// Best-first on g + dist(., goal). Optimal with SuccessorMode::all().
inline SearchOutcome astar_search(const ProblemInstance& ins,
                                  const NeighborIndex& index,
                                  const SuccessorMode& mode,
                                  CallCounter& counter, const Budget& budget) {
  auto out = detail::best_first(ins, index, mode, counter, budget,
                                detail::Priority::kAStar);
  out.proven_optimal = out.solved() && mode.complete();
  return out;
}

/// Best-first on dist(., goal) alone; first goal expansion returns.
inline SearchOutcome gbfs_search(const ProblemInstance& ins,
                                 const NeighborIndex& index,
                                 const SuccessorMode& mode,
                                 CallCounter& counter, const Budget& budget) {
  return detail::best_first(ins, index, mode, counter, budget,
                            detail::Priority::kGreedy);
}

/// Depth-first search; each node tries unvisited locations nearest to the
/// goal first and the first goal hit returns.
inline SearchOutcome dfs_search(const ProblemInstance& ins,
                                CallCounter& counter, const Budget& budget) {
  const Deadline deadline(budget);
  const auto n = ins.size();
  const Point& goal = ins.at(ins.goal);

  // the goal-distance order is the same for every node
  std::vector<TieKey> keyed;
  keyed.reserve(n);
  for (LocationId v = 0; v < n; ++v) keyed.push_back({dist(ins.at(v), goal), v});
  std::sort(keyed.begin(), keyed.end());

  std::vector<bool> visited(n, false);
  std::vector<LocationId> parent(n, ins.start);
  struct Frame {
    LocationId loc;
    std::size_t cursor;
  };
  std::vector<Frame> stack{{ins.start, 0}};
  visited[ins.start] = true;
  std::uint64_t iterations = 1;

  while (!stack.empty()) {
    if (deadline.expired(iterations))
      return budget_failure(budget, iterations);
    Frame& top = stack.back();
    bool descended = false;
    while (top.cursor < keyed.size()) {
      const LocationId v = keyed[top.cursor++].id;
      if (visited[v]) continue;
      if (!connect(ins, top.loc, v, counter)) continue;
      visited[v] = true;
      parent[v] = top.loc;
      ++iterations;
      if (v == ins.goal)
        return detail::solution_from_parents(ins, parent, iterations,
                                             deadline.elapsed(), counter.count());
      stack.push_back({v, 0});
      descended = true;
      break;
    }
    if (!descended) stack.pop_back();
  }
  SearchOutcome out;
  out.kind = OutcomeKind::kNoSolution;
  out.iterations = iterations;
  return out;
}

}  // namespace lacas

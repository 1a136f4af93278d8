// Sampling-based baselines that ignore the given locations: RRT with a
// goal-connection check per addition, and bidirectional RRT-Connect.
//
// Every collision check of a candidate edge counts as one oracle call.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "lacas/geometry.hpp"
#include "lacas/outcome.hpp"

namespace lacas {

struct SamplingParams {
  double step = 0.1;               // max edge length, except edges to the goal
  bool goal_connect_each_iter = true;
  std::uint64_t seed = 0;
};

namespace detail {

inline double unit_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Bucketed point set over the unit square for nearest-vertex lookups.
class PointGrid {
 public:
  explicit PointGrid(int cells = 64) : cells_(cells), buckets_(cells * cells) {}

  void insert(const Point& p, std::uint32_t id) {
    buckets_[cell(p.y) * cells_ + cell(p.x)].push_back({p, id});
    ++count_;
  }

  std::uint32_t nearest(const Point& q) const {
    const int cx = cell(q.x);
    const int cy = cell(q.y);
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t best_id = 0;
    for (int ring = 0; ring < cells_; ++ring) {
      // every unvisited cell is at least (ring - 1) cell widths away
      if (ring > 0 && best < (ring - 1) / static_cast<double>(cells_)) break;
      for (int y = cy - ring; y <= cy + ring; ++y) {
        for (int x = cx - ring; x <= cx + ring; ++x) {
          if (std::max(std::abs(x - cx), std::abs(y - cy)) != ring) continue;
          if (x < 0 || y < 0 || x >= cells_ || y >= cells_) continue;
          for (const auto& e : buckets_[y * cells_ + x]) {
            const double d = dist(e.p, q);
            if (d < best || (d == best && e.id < best_id)) {
              best = d;
              best_id = e.id;
            }
          }
        }
      }
    }
    return best_id;
  }

 private:
  struct Entry {
    Point p;
    std::uint32_t id;
  };
  int cell(double v) const {
    return std::clamp(static_cast<int>(v * cells_), 0, cells_ - 1);
  }
  int cells_;
  std::vector<std::vector<Entry>> buckets_;
  std::size_t count_ = 0;
};

struct Tree {
  std::vector<Point> pts;
  std::vector<std::uint32_t> parent;
  PointGrid grid;

  std::uint32_t add(const Point& p, std::uint32_t par) {
    const auto id = static_cast<std::uint32_t>(pts.size());
    pts.push_back(p);
    parent.push_back(par);
    grid.insert(p, id);
    return id;
  }

  // root first
  std::vector<Point> branch(std::uint32_t id) const {
    std::vector<Point> out;
    for (std::uint32_t cur = id;; cur = parent[cur]) {
      out.push_back(pts[cur]);
      if (cur == 0) break;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }
};

inline Point steer(const Point& from, const Point& to, double step) {
  const double d = dist(from, to);
  if (d <= step) return to;
  const double s = step / d;
  return {from.x + (to.x - from.x) * s, from.y + (to.y - from.y) * s};
}

inline bool edge_free(const ProblemInstance& ins, const Point& a,
                      const Point& b, CallCounter& counter) {
  counter.bump();
  return segment_is_free(ins.obstacles, {a, b});
}

inline SearchOutcome sampled_solution(std::vector<Point> pts,
                                      std::uint64_t iterations, double seconds,
                                      std::uint64_t connects) {
  SearchOutcome out;
  out.kind = OutcomeKind::kSolution;
  out.waypoints = std::move(pts);
  out.cost = polyline_length(out.waypoints);
  out.iterations = iterations;
  out.events.push_back({seconds, iterations, out.cost, connects});
  return out;
}

}  // namespace detail

/// `edges`, when given, receives every tree edge ever added.
inline SearchOutcome rrt_search(const ProblemInstance& ins,
                                const SamplingParams& params,
                                CallCounter& counter, const Budget& budget,
                                std::vector<Segment>* edges = nullptr) {
  const Deadline deadline(budget);
  std::mt19937_64 rng(params.seed);
  const Point start = ins.at(ins.start);
  const Point goal = ins.at(ins.goal);
  detail::Tree tree;
  tree.add(start, 0);

  const auto try_goal = [&](std::uint32_t id) {
    const Point& p = tree.pts[id];
    if (!params.goal_connect_each_iter && dist(p, goal) > params.step)
      return false;
    return detail::edge_free(ins, p, goal, counter);
  };

  std::uint64_t iterations = 0;
  if (try_goal(0))
    return detail::sampled_solution({start, goal}, iterations,
                                    deadline.elapsed(), counter.count());
  while (!deadline.expired(iterations)) {
    ++iterations;
    const Point q{detail::unit_real(rng), detail::unit_real(rng)};
    const auto near = tree.grid.nearest(q);
    const Point next = detail::steer(tree.pts[near], q, params.step);
    if (next == tree.pts[near]) continue;
    if (!detail::edge_free(ins, tree.pts[near], next, counter)) continue;
    const auto id = tree.add(next, near);
    if (edges) edges->push_back({tree.pts[near], next});
    if (try_goal(id)) {
      auto pts = tree.branch(id);
      pts.push_back(goal);
      return detail::sampled_solution(std::move(pts), iterations,
                                      deadline.elapsed(), counter.count());
    }
  }
  return budget_failure(budget, iterations);
}

inline SearchOutcome rrt_connect_search(const ProblemInstance& ins,
                                        const SamplingParams& params,
                                        CallCounter& counter,
                                        const Budget& budget,
                                        std::vector<Segment>* edges = nullptr) {
  const Deadline deadline(budget);
  std::mt19937_64 rng(params.seed);
  detail::Tree from_start;
  detail::Tree from_goal;
  from_start.add(ins.at(ins.start), 0);
  from_goal.add(ins.at(ins.goal), 0);

  enum class Status { kTrapped, kAdvanced, kReached };
  struct Step {
    Status status;
    std::uint32_t id;
  };
  const auto extend = [&](detail::Tree& tree, const Point& q) -> Step {
    const auto near = tree.grid.nearest(q);
    const Point next = detail::steer(tree.pts[near], q, params.step);
    if (next == tree.pts[near]) return {Status::kReached, near};
    if (!detail::edge_free(ins, tree.pts[near], next, counter))
      return {Status::kTrapped, 0};
    const auto id = tree.add(next, near);
    if (edges) edges->push_back({tree.pts[near], next});
    return {next == q ? Status::kReached : Status::kAdvanced, id};
  };

  detail::Tree* a = &from_start;
  detail::Tree* b = &from_goal;
  std::uint64_t iterations = 0;
  while (!deadline.expired(iterations)) {
    ++iterations;
    const Point q{detail::unit_real(rng), detail::unit_real(rng)};
    const Step grown = extend(*a, q);
    if (grown.status != Status::kTrapped) {
      const Point target = a->pts[grown.id];
      Step toward{Status::kAdvanced, 0};
      while (toward.status == Status::kAdvanced)
        toward = extend(*b, target);
      if (toward.status == Status::kReached) {
        auto head = a->branch(grown.id);
        auto tail = b->branch(toward.id);
        if (a != &from_start) std::swap(head, tail);
        // both branches end at the meeting point
        tail.pop_back();
        std::reverse(tail.begin(), tail.end());
        head.insert(head.end(), tail.begin(), tail.end());
        return detail::sampled_solution(std::move(head), iterations,
                                        deadline.elapsed(), counter.count());
      }
    }
    std::swap(a, b);
  }
  return budget_failure(budget, iterations);
}

}  // namespace lacas

// Lazy successor generation: a 2-d tree over the instance's locations that
// answers "the b nearest locations strictly beyond threshold theta".
#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <queue>
#include <vector>

#include "lacas/geometry.hpp"

namespace lacas {

class NeighborIndex {
 public:
  NeighborIndex() = default;

  /// Median-split tree with alternating axes; O(n log n) to build.
  explicit NeighborIndex(const ProblemInstance& ins) : ins_(&ins) {
    const auto n = ins.size();
    order_.resize(n);
    for (std::size_t i = 0; i < n; ++i) order_[i] = static_cast<LocationId>(i);
    boxes_.resize(n);
    build(0, n, 0);
    pts_.reserve(n);
    for (auto id : order_) pts_.push_back(ins.at(id));
  }

  std::size_t size() const noexcept { return order_.size(); }
  const ProblemInstance& instance() const noexcept { return *ins_; }

  /// Up to `b` locations u != source with tie_key(source, u) > theta, in
  /// ascending key order. Empty once nothing lies beyond theta.
  std::vector<LocationId> nearest_beyond(LocationId source, std::size_t b,
                                         const TieKey& theta) const {
    std::vector<LocationId> out;
    if (b == 0 || order_.empty()) return out;
    Query q{ins_->at(source), source, theta, b, {}};
    search(0, order_.size(), 0, q);
    out.resize(q.heap.size());
    for (auto i = out.size(); i-- > 0;) {
      out[i] = q.heap.top().id;
      q.heap.pop();
    }
    return out;
  }

  /// All locations u != source within Euclidean distance r, ascending by key.
  std::vector<LocationId> within_radius(LocationId source, double r) const {
    std::vector<TieKey> found;
    if (!order_.empty())
      collect_radius(0, order_.size(), 0, ins_->at(source), source, r, found);
    std::sort(found.begin(), found.end());
    std::vector<LocationId> out;
    out.reserve(found.size());
    for (const auto& k : found) out.push_back(k.id);
    return out;
  }

 private:
  struct Box {
    double lo_x, lo_y, hi_x, hi_y;
  };

  struct Query {
    Point at;
    LocationId source;
    TieKey theta;
    std::size_t b;
    std::priority_queue<TieKey> heap;  // worst kept key on top
  };

  // Relative slack so rounding in box distances never prunes a true answer.
  static constexpr double kSlack = 1e-12;

  static double coord(const Point& p, int axis) { return axis == 0 ? p.x : p.y; }

  void build(std::size_t lo, std::size_t hi, int depth) {
    if (lo >= hi) return;
    const std::size_t mid = lo + (hi - lo) / 2;
    const int axis = depth % 2;
    const auto& locs = ins_->locations;
    std::nth_element(order_.begin() + lo, order_.begin() + mid,
                     order_.begin() + hi, [&](LocationId a, LocationId b) {
                       const double ca = coord(locs[a], axis);
                       const double cb = coord(locs[b], axis);
                       return ca < cb || (ca == cb && a < b);
                     });
    build(lo, mid, depth + 1);
    build(mid + 1, hi, depth + 1);
    const Point& p = locs[order_[mid]];
    Box box{p.x, p.y, p.x, p.y};
    const auto merge = [&](std::size_t l, std::size_t h) {
      if (l >= h) return;
      const Box& c = boxes_[l + (h - l) / 2];
      box.lo_x = std::min(box.lo_x, c.lo_x);
      box.lo_y = std::min(box.lo_y, c.lo_y);
      box.hi_x = std::max(box.hi_x, c.hi_x);
      box.hi_y = std::max(box.hi_y, c.hi_y);
    };
    merge(lo, mid);
    merge(mid + 1, hi);
    boxes_[mid] = box;
  }

  static double min_dist(const Box& b, const Point& q) {
    const double dx = std::max({b.lo_x - q.x, 0.0, q.x - b.hi_x});
    const double dy = std::max({b.lo_y - q.y, 0.0, q.y - b.hi_y});
    return std::sqrt(dx * dx + dy * dy);
  }

  static double max_dist(const Box& b, const Point& q) {
    const double dx = std::max(q.x - b.lo_x, b.hi_x - q.x);
    const double dy = std::max(q.y - b.lo_y, b.hi_y - q.y);
    return std::sqrt(dx * dx + dy * dy);
  }

  void search(std::size_t lo, std::size_t hi, int depth, Query& q) const {
    if (lo >= hi) return;
    const std::size_t mid = lo + (hi - lo) / 2;
    const Box& box = boxes_[mid];
    // everything in this subtree was already served
    if (max_dist(box, q.at) * (1.0 + kSlack) < q.theta.d) return;
    if (q.heap.size() == q.b &&
        min_dist(box, q.at) * (1.0 - kSlack) > q.heap.top().d)
      return;

    const LocationId id = order_[mid];
    if (id != q.source) {
      const TieKey key{dist(q.at, pts_[mid]), id};
      if (q.theta < key) {
        if (q.heap.size() < q.b) {
          q.heap.push(key);
        } else if (key < q.heap.top()) {
          q.heap.pop();
          q.heap.push(key);
        }
      }
    }

    const int axis = depth % 2;
    const bool left_first = coord(q.at, axis) < coord(pts_[mid], axis);
    if (left_first) {
      search(lo, mid, depth + 1, q);
      search(mid + 1, hi, depth + 1, q);
    } else {
      search(mid + 1, hi, depth + 1, q);
      search(lo, mid, depth + 1, q);
    }
  }

  void collect_radius(std::size_t lo, std::size_t hi, int depth,
                      const Point& at, LocationId source, double r,
                      std::vector<TieKey>& found) const {
    if (lo >= hi) return;
    const std::size_t mid = lo + (hi - lo) / 2;
    if (min_dist(boxes_[mid], at) * (1.0 - kSlack) > r) return;
    const LocationId id = order_[mid];
    if (id != source) {
      const double d = dist(at, pts_[mid]);
      if (d <= r) found.push_back({d, id});
    }
    collect_radius(lo, mid, depth + 1, at, source, r, found);
    collect_radius(mid + 1, hi, depth + 1, at, source, r, found);
  }

  const ProblemInstance* ins_ = nullptr;
  std::vector<LocationId> order_;  // ids in tree layout
  std::vector<Point> pts_;         // coordinates in tree layout
  std::vector<Box> boxes_;         // subtree bounds, indexed by subtree root
};

/// Reference implementation of NeighborIndex::nearest_beyond by full sort.
inline std::vector<LocationId> brute_force_neighbors(const ProblemInstance& ins,
                                                     LocationId source,
                                                     std::size_t b,
                                                     const TieKey& theta) {
  std::vector<TieKey> keys;
  const Point& at = ins.at(source);
  for (LocationId u = 0; u < ins.size(); ++u) {
    if (u == source) continue;
    const TieKey key{dist(at, ins.at(u)), u};
    if (theta < key) keys.push_back(key);
  }
  std::sort(keys.begin(), keys.end());
  if (keys.size() > b) keys.resize(b);
  std::vector<LocationId> out;
  out.reserve(keys.size());
  for (const auto& k : keys) out.push_back(k.id);
  return out;
}

}  // namespace lacas

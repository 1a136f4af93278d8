// 2-D primitives shared by every planner: points, obstacle segments, the
// tie-broken distance key and the instrumented connectivity oracle.
#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lacas {

using LocationId = std::uint32_t;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct Segment {
  Point a;
  Point b;

  friend bool operator==(const Segment&, const Segment&) = default;
};

inline double dist(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

/// Distance with the destination index as tiebreaker. Ordered
/// lexicographically, so keys from one source never compare equal.
struct TieKey {
  double d = 0.0;
  LocationId id = 0;

  friend std::partial_ordering operator<=>(const TieKey& lhs,
                                          const TieKey& rhs) {
    if (auto c = lhs.d <=> rhs.d; c != 0) return c;
    return lhs.id <=> rhs.id;
  }
  friend bool operator==(const TieKey&, const TieKey&) = default;
};

/// Threshold that sorts below every real key (all real distances are >= 0).
inline constexpr TieKey kMinKey{-std::numeric_limits<double>::infinity(), 0};

/// Number of oracle invocations of one run. Not shared between threads.
class CallCounter {
 public:
  void bump() noexcept { ++count_; }
  std::uint64_t count() const noexcept { return count_; }
  void reset() noexcept { count_ = 0; }

 private:
  std::uint64_t count_ = 0;
};

struct ProblemInstance {
  std::vector<Point> locations;
  LocationId start = 0;
  LocationId goal = 0;
  std::vector<Segment> obstacles;

  std::size_t size() const noexcept { return locations.size(); }
  const Point& at(LocationId id) const { return locations[id]; }

  friend bool operator==(const ProblemInstance&,
                         const ProblemInstance&) = default;
};

/// Throws std::invalid_argument describing the first violated invariant.
inline void validate_instance(const ProblemInstance& ins) {
  const auto n = ins.locations.size();
  if (n == 0) throw std::invalid_argument("instance has no locations");
  for (const auto& p : ins.locations) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw std::invalid_argument("non-finite location coordinate");
    if (p.x < 0.0 || p.x > 1.0 || p.y < 0.0 || p.y > 1.0)
      throw std::invalid_argument("location outside the unit workspace");
  }
  if (ins.start >= n) throw std::invalid_argument("start id out of range");
  if (ins.goal >= n) throw std::invalid_argument("goal id out of range");
  if (ins.start == ins.goal)
    throw std::invalid_argument("start and goal must differ");
  for (const auto& s : ins.obstacles) {
    if (s.a == s.b) throw std::invalid_argument("degenerate obstacle segment");
  }
  std::set<std::pair<double, double>> seen;
  for (const auto& p : ins.locations) {
    if (!seen.emplace(p.x, p.y).second)
      throw std::invalid_argument("duplicate location coordinates");
  }
}

inline TieKey tie_key(const ProblemInstance& ins, LocationId from,
                      LocationId to) {
  if (from == to) throw std::invalid_argument("tie_key: from == to");
  return {dist(ins.at(from), ins.at(to)), to};
}

namespace detail {

inline constexpr double kCollinearEps = 1e-12;

inline double orient(const Point& p, const Point& q, const Point& r) {
  return (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
}

inline int orient_sign(const Point& p, const Point& q, const Point& r) {
  const double o = orient(p, q, r);
  if (o > kCollinearEps) return 1;
  if (o < -kCollinearEps) return -1;
  return 0;
}

// r is known to be collinear with pq; test whether it lies within the box.
inline bool within_box(const Point& p, const Point& q, const Point& r) {
  return std::min(p.x, q.x) - kCollinearEps <= r.x &&
         r.x <= std::max(p.x, q.x) + kCollinearEps &&
         std::min(p.y, q.y) - kCollinearEps <= r.y &&
         r.y <= std::max(p.y, q.y) + kCollinearEps;
}

}  // namespace detail

/// Closed-segment intersection; touching endpoints and collinear overlap
/// count as intersecting.
inline bool segments_intersect(const Segment& s1, const Segment& s2) {
  using detail::orient_sign;
  using detail::within_box;
  const int d1 = orient_sign(s2.a, s2.b, s1.a);
  const int d2 = orient_sign(s2.a, s2.b, s1.b);
  const int d3 = orient_sign(s1.a, s1.b, s2.a);
  const int d4 = orient_sign(s1.a, s1.b, s2.b);
  if (d1 * d2 < 0 && d3 * d4 < 0) return true;
  if (d1 == 0 && within_box(s2.a, s2.b, s1.a)) return true;
  if (d2 == 0 && within_box(s2.a, s2.b, s1.b)) return true;
  if (d3 == 0 && within_box(s1.a, s1.b, s2.a)) return true;
  if (d4 == 0 && within_box(s1.a, s1.b, s2.b)) return true;
  return false;
}

/// Obstacle test for an arbitrary segment, without touching any counter.
inline bool segment_is_free(const std::vector<Segment>& obstacles,
                            const Segment& seg) {
  const double lo_x = std::min(seg.a.x, seg.b.x);
  const double hi_x = std::max(seg.a.x, seg.b.x);
  const double lo_y = std::min(seg.a.y, seg.b.y);
  const double hi_y = std::max(seg.a.y, seg.b.y);
  for (const auto& obs : obstacles) {
    // bounding-box rejection
    if (std::max(obs.a.x, obs.b.x) < lo_x - detail::kCollinearEps ||
        std::min(obs.a.x, obs.b.x) > hi_x + detail::kCollinearEps ||
        std::max(obs.a.y, obs.b.y) < lo_y - detail::kCollinearEps ||
        std::min(obs.a.y, obs.b.y) > hi_y + detail::kCollinearEps)
      continue;
    if (segments_intersect(seg, obs)) return false;
  }
  return true;
}

/// The connectivity oracle: true iff the straight move u -> v hits no
/// obstacle. Every call is counted.
inline bool connect(const ProblemInstance& ins, LocationId u, LocationId v,
                    CallCounter& counter) {
  if (u == v) throw std::invalid_argument("connect: u == v");
  counter.bump();
  return segment_is_free(ins.obstacles, {ins.at(u), ins.at(v)});
}

}  // namespace lacas

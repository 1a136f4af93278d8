// Reference implementations used by the tests. They avoid the library's
// geometry and search code so that agreement means something.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "lacas/geometry.hpp"

namespace oracle {

using lacas::LocationId;
using lacas::Point;
using lacas::ProblemInstance;
using lacas::Segment;

// Coordinates used by the generators below are multiples of 2^-kBits, so
// they convert to integers exactly and every predicate is exact in int64.
inline constexpr int kBits = 18;
inline constexpr double kScale = double(1 << kBits);

inline std::int64_t to_int(double v) {
  return static_cast<std::int64_t>(std::llround(v * kScale));
}

inline bool on_grid(double v) { return double(to_int(v)) / kScale == v; }

struct IPoint {
  std::int64_t x, y;
};

inline IPoint to_ipoint(const Point& p) { return {to_int(p.x), to_int(p.y)}; }

inline int sign(std::int64_t v) { return (v > 0) - (v < 0); }

inline int orientation(IPoint p, IPoint q, IPoint r) {
  return sign((q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x));
}

inline bool in_box(IPoint p, IPoint q, IPoint r) {
  return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) &&
         std::min(p.y, q.y) <= r.y && r.y <= std::max(p.y, q.y);
}

/// Closed-segment intersection (touching counts) in exact arithmetic.
inline bool intersects(const Segment& s, const Segment& t) {
  const IPoint a = to_ipoint(s.a), b = to_ipoint(s.b);
  const IPoint c = to_ipoint(t.a), d = to_ipoint(t.b);
  const int o1 = orientation(a, b, c), o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a), o4 = orientation(c, d, b);
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && in_box(a, b, c)) return true;
  if (o2 == 0 && in_box(a, b, d)) return true;
  if (o3 == 0 && in_box(c, d, a)) return true;
  if (o4 == 0 && in_box(c, d, b)) return true;
  return false;
}

inline bool visible(const ProblemInstance& ins, LocationId u, LocationId v) {
  const Segment s{ins.locations[u], ins.locations[v]};
  for (const auto& o : ins.obstacles)
    if (intersects(s, o)) return false;
  return true;
}

inline double euclid(const Point& a, const Point& b) {
  const double dx = a.x - b.x, dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

/// Single-source shortest distances over the complete visibility graph.
inline std::vector<double> dijkstra(const ProblemInstance& ins, LocationId src) {
  const auto n = ins.locations.size();
  std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
  for (LocationId u = 0; u < n; ++u)
    for (LocationId v = u + 1; v < n; ++v) adj[u][v] = adj[v][u] = visible(ins, u, v);
  std::vector<double> d(n, std::numeric_limits<double>::infinity());
  std::vector<bool> done(n, false);
  d[src] = 0.0;
  // dense O(n^2) variant
  for (std::size_t it = 0; it < n; ++it) {
    LocationId best = 0;
    double bd = std::numeric_limits<double>::infinity();
    for (LocationId u = 0; u < n; ++u)
      if (!done[u] && d[u] < bd) bd = d[u], best = u;
    if (!std::isfinite(bd)) break;
    done[best] = true;
    for (LocationId v = 0; v < n; ++v)
      if (adj[best][v]) d[v] = std::min(d[v], bd + euclid(ins.locations[best], ins.locations[v]));
  }
  return d;
}

inline double optimal_cost(const ProblemInstance& ins) {
  return dijkstra(ins, ins.start)[ins.goal];
}

inline bool reachable(const ProblemInstance& ins) {
  return std::isfinite(optimal_cost(ins));
}

inline double grid_real(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  return double(to_int(u(rng))) / kScale;
}

/// Random instance with grid coordinates: n distinct locations in [0,1]^2,
/// start 0, goal 1, and `obstacles` segments of length in [min_len, max_len].
inline ProblemInstance random_instance(std::uint64_t seed, std::size_t n,
                                       std::size_t obstacles, double min_len = 0.1,
                                       double max_len = 0.4) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 12345);
  ProblemInstance ins;
  std::set<std::pair<double, double>> seen;
  while (ins.locations.size() < n) {
    const Point p{grid_real(rng, 0.0, 1.0), grid_real(rng, 0.0, 1.0)};
    if (seen.emplace(p.x, p.y).second) ins.locations.push_back(p);
  }
  ins.start = 0;
  ins.goal = 1;
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  while (ins.obstacles.size() < obstacles) {
    const double len = min_len + (max_len - min_len) * u01(rng);
    const double ang = 3.141592653589793 * u01(rng);
    const double cx = u01(rng), cy = u01(rng);
    Segment s{{cx - 0.5 * len * std::cos(ang), cy - 0.5 * len * std::sin(ang)},
              {cx + 0.5 * len * std::cos(ang), cy + 0.5 * len * std::sin(ang)}};
    s.a = {double(to_int(s.a.x)) / kScale, double(to_int(s.a.y)) / kScale};
    s.b = {double(to_int(s.b.x)) / kScale, double(to_int(s.b.y)) / kScale};
    if (!(s.a == s.b)) ins.obstacles.push_back(s);
  }
  return ins;
}

/// Two clusters of `per_side` locations (x < 0.25 and x > 0.75) split by a
/// wall at x = 0.5 with one narrow opening. Start and goal face each other
/// through the opening, so every crossing edge is longer than 0.5.
inline ProblemInstance one_long_edge_instance(std::uint64_t seed, std::size_t per_side = 40) {
  std::mt19937_64 rng(seed + 777);
  ProblemInstance ins;
  ins.locations = {{0.125, 0.5}, {0.875, 0.5}};
  ins.start = 0;
  ins.goal = 1;
  std::set<std::pair<double, double>> seen{{0.125, 0.5}, {0.875, 0.5}};
  for (int side = 0; side < 2; ++side) {
    std::size_t added = 0;
    while (added < per_side) {
      const double x = grid_real(rng, 0.0, 0.25) + (side ? 0.75 : 0.0);
      const Point p{x, grid_real(rng, 0.0, 1.0)};
      if (seen.emplace(p.x, p.y).second) {
        ins.locations.push_back(p);
        ++added;
      }
    }
  }
  const double lo = 0.5 - 1.0 / 64, hi = 0.5 + 1.0 / 64;
  ins.obstacles = {{{0.5, -0.1}, {0.5, lo}}, {{0.5, hi}, {0.5, 1.1}}};
  return ins;
}

/// Brute force: ids u != source sorted by (distance, id).
inline std::vector<LocationId> by_distance(const ProblemInstance& ins, LocationId source) {
  std::vector<std::pair<double, LocationId>> keyed;
  for (LocationId u = 0; u < ins.locations.size(); ++u)
    if (u != source) keyed.emplace_back(euclid(ins.locations[source], ins.locations[u]), u);
  std::sort(keyed.begin(), keyed.end());
  std::vector<LocationId> out;
  for (const auto& k : keyed) out.push_back(k.second);
  return out;
}

}  // namespace oracle

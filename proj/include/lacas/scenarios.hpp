// Seeded generators for the eight benchmark families and the corpus
// manifest (`<family> <seed> <path>` per line).
//
// Random streams: std::mt19937_64 (bit-exact by the standard) seeded with a
// SplitMix64 mix of (family, seed); reals are formed from the top 53 bits,
// so instances are identical on every conforming platform.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lacas/geometry.hpp"

namespace lacas {

enum class Family {
  kScatter1k,
  kScatter10k,
  kGrid10k,
  kPlus2k,
  kTrap,
  kZigzag,
  kGateways,
  kSplit,
};

inline constexpr std::array<std::pair<Family, std::string_view>, 8> kFamilyNames{{
    {Family::kScatter1k, "scatter-1k"},
    {Family::kScatter10k, "scatter-10k"},
    {Family::kGrid10k, "grid-10k"},
    {Family::kPlus2k, "plus-2k"},
    {Family::kTrap, "trap"},
    {Family::kZigzag, "zigzag"},
    {Family::kGateways, "gateways"},
    {Family::kSplit, "split"},
}};

inline std::string_view family_name(Family f) {
  for (const auto& [fam, name] : kFamilyNames)
    if (fam == f) return name;
  return "?";
}

inline Family parse_family(std::string_view name) {
  for (const auto& [fam, n] : kFamilyNames)
    if (n == name) return fam;
  throw std::invalid_argument("unknown scenario family '" + std::string(name) + "'");
}

/// Frozen generator defaults. Bump kScenarioConfigVersion whenever any value
/// changes, since corpora are only comparable within one version.
inline constexpr int kScenarioConfigVersion = 1;

struct ScenarioDefaults {
  std::size_t locations;
  std::size_t obstacles;  // random segments, or plus shapes for plus-2k
  double min_length;
  double max_length;
};

inline ScenarioDefaults scenario_defaults(Family f) {
  switch (f) {
    case Family::kScatter1k: return {1000, 100, 0.05, 0.2};
    case Family::kScatter10k: return {10000, 100, 0.05, 0.2};
    case Family::kGrid10k: return {10000, 100, 0.05, 0.2};
    case Family::kPlus2k: return {2000, 40, 0.08, 0.16};
    case Family::kTrap:
    case Family::kZigzag:
    case Family::kGateways:
    case Family::kSplit: return {1000, 0, 0.0, 0.0};
  }
  return {};
}

struct ScenarioSpec {
  Family family = Family::kScatter1k;
  std::uint64_t seed = 0;
  std::optional<std::size_t> locations;
  std::optional<std::size_t> obstacles;
  std::optional<double> min_length;
  std::optional<double> max_length;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

class Stream {
 public:
  Stream(Family f, std::uint64_t seed)
      : rng_(splitmix64(splitmix64(static_cast<std::uint64_t>(f) + 1) ^ seed)) {}

  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

 private:
  std::mt19937_64 rng_;
};

// Adds uniformly random locations (optionally restricted) until `total`.
template <class Accept>
void scatter_locations(ProblemInstance& ins, std::size_t total, Stream& rs,
                       Accept&& accept) {
  std::set<std::pair<double, double>> seen;
  for (const auto& p : ins.locations) seen.emplace(p.x, p.y);
  while (ins.locations.size() < total) {
    const Point p{rs.unit(), rs.unit()};
    if (!accept(p)) continue;
    if (!seen.emplace(p.x, p.y).second) continue;
    ins.locations.push_back(p);
  }
}

inline void random_segments(ProblemInstance& ins, std::size_t count,
                            double min_len, double max_len, Stream& rs) {
  for (std::size_t i = 0; i < count; ++i) {
    const Point c{rs.unit(), rs.unit()};
    const double len = rs.range(min_len, max_len);
    const double ang = rs.range(0.0, std::numbers::pi);
    const double hx = 0.5 * len * std::cos(ang);
    const double hy = 0.5 * len * std::sin(ang);
    ins.obstacles.push_back({{c.x - hx, c.y - hy}, {c.x + hx, c.y + hy}});
  }
}

// Vertical wall over [-0.1, 1.1] at x with an opening [lo, hi].
inline void wall_with_gap(ProblemInstance& ins, double x, double lo, double hi) {
  ins.obstacles.push_back({{x, -0.1}, {x, lo}});
  ins.obstacles.push_back({{x, hi}, {x, 1.1}});
}

}  // namespace detail

/// Start and goal are fixed per family (bottom-left / top-right unless the
/// layout needs otherwise); the remaining locations are random.
inline ProblemInstance generate_instance(const ScenarioSpec& spec) {
  const auto def = scenario_defaults(spec.family);
  const std::size_t n = spec.locations.value_or(def.locations);
  const std::size_t n_obs = spec.obstacles.value_or(def.obstacles);
  const double min_len = spec.min_length.value_or(def.min_length);
  const double max_len = spec.max_length.value_or(def.max_length);
  if (n < 2) throw std::invalid_argument("need at least two locations");

  detail::Stream rs(spec.family, spec.seed);
  ProblemInstance ins;
  const auto anywhere = [](const Point&) { return true; };
  const auto corners = [&ins] {
    ins.locations = {{0.05, 0.05}, {0.95, 0.95}};
    ins.start = 0;
    ins.goal = 1;
  };

  switch (spec.family) {
    case Family::kScatter1k:
    case Family::kScatter10k:
      corners();
      detail::scatter_locations(ins, n, rs, anywhere);
      detail::random_segments(ins, n_obs, min_len, max_len, rs);
      break;

    case Family::kGrid10k: {
      // 0.01 lattice; n is rounded to a full square
      const auto side = static_cast<std::size_t>(std::llround(std::sqrt(double(n))));
      if (side < 7) throw std::invalid_argument("grid too small");
      for (std::size_t iy = 0; iy < side; ++iy)
        for (std::size_t ix = 0; ix < side; ++ix)
          ins.locations.push_back({double(ix) / 100.0, double(iy) / 100.0});
      const std::size_t lo = 5;
      const std::size_t hi = side - 5;
      ins.start = static_cast<LocationId>(lo * side + lo);
      ins.goal = static_cast<LocationId>(hi * side + hi);
      detail::random_segments(ins, n_obs, min_len, max_len, rs);
      break;
    }

    case Family::kPlus2k:
      corners();
      detail::scatter_locations(ins, n, rs, anywhere);
      for (std::size_t i = 0; i < n_obs; ++i) {
        const Point c{rs.range(0.1, 0.9), rs.range(0.1, 0.9)};
        const double h = 0.5 * rs.range(min_len, max_len);
        ins.obstacles.push_back({{c.x - h, c.y}, {c.x + h, c.y}});
        ins.obstacles.push_back({{c.x, c.y - h}, {c.x, c.y + h}});
      }
      break;

    case Family::kTrap:
      // corner-shaped basket between start and goal, open towards the start
      corners();
      detail::scatter_locations(ins, n, rs, anywhere);
      ins.obstacles = {
          {{0.2, 0.75}, {0.75, 0.75}},
          {{0.75, 0.2}, {0.75, 0.75}},
          {{0.2, 0.75}, {0.2, 0.6}},
          {{0.75, 0.2}, {0.6, 0.2}},
      };
      break;

    case Family::kZigzag:
      // alternating walls force long horizontal detours
      ins.locations = {{0.9, 0.05}, {0.9, 0.95}};
      ins.start = 0;
      ins.goal = 1;
      detail::scatter_locations(ins, n, rs, anywhere);
      ins.obstacles = {
          {{0.25, 0.2}, {1.1, 0.2}},
          {{-0.1, 0.4}, {0.75, 0.4}},
          {{0.25, 0.6}, {1.1, 0.6}},
          {{-0.1, 0.8}, {0.75, 0.8}},
      };
      break;

    case Family::kGateways: {
      // five walls, each with one narrow opening
      ins.locations = {{0.05, 0.5}, {0.95, 0.5}};
      ins.start = 0;
      ins.goal = 1;
      detail::scatter_locations(ins, n, rs, anywhere);
      constexpr double kWidth = 0.04;
      constexpr std::array<double, 5> kCenters{0.2, 0.8, 0.2, 0.8, 0.2};
      for (int i = 0; i < 5; ++i) {
        const double x = (i + 1) / 6.0;
        detail::wall_with_gap(ins, x, kCenters[i] - kWidth / 2, kCenters[i] + kWidth / 2);
      }
      break;
    }

    case Family::kSplit: {
      // two zones with an empty band between them, crossed by three walls
      // whose openings line up
      corners();
      detail::scatter_locations(ins, n, rs, [](const Point& p) {
        return p.x < 0.4 || p.x > 0.6;
      });
      for (const double x : {0.45, 0.5, 0.55}) detail::wall_with_gap(ins, x, 0.47, 0.53);
      break;
    }
  }
  return ins;
}

struct ManifestEntry {
  std::string family;
  std::uint64_t seed = 0;
  std::string path;
};

inline std::vector<ManifestEntry> parse_manifest(std::istream& is) {
  std::vector<ManifestEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    ManifestEntry e;
    if (!(ls >> e.family)) continue;
    if (!(ls >> e.seed >> e.path))
      throw std::runtime_error("manifest line " + std::to_string(lineno) +
                               ": expected '<family> <seed> <path>'");
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<ManifestEntry> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest " + path);
  return parse_manifest(in);
}

inline void write_manifest(std::ostream& os, const std::vector<ManifestEntry>& entries) {
  for (const auto& e : entries) os << e.family << ' ' << e.seed << ' ' << e.path << '\n';
}

}  // namespace lacas

// Result types shared by LaCAS and the baselines, plus the solution dump
// format read back by the renderer.
#pragma once

#include <chrono>
#include <cstdint>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lacas/geometry.hpp"

namespace lacas {

using Clock = std::chrono::steady_clock;

/// Wall-clock and/or iteration cap. An empty budget never interrupts.
struct Budget {
  std::optional<double> seconds;
  std::optional<std::uint64_t> iterations;

  static Budget time(double s) { return {s, std::nullopt}; }
  static Budget steps(std::uint64_t n) { return {std::nullopt, n}; }
};

/// Polled once per search iteration.
class Deadline {
 public:
  explicit Deadline(const Budget& budget)
      : budget_(budget), started_(Clock::now()) {}

  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - started_).count();
  }

  bool expired(std::uint64_t iterations_done) const {
    if (budget_.iterations && iterations_done >= *budget_.iterations)
      return true;
    return budget_.seconds && elapsed() >= *budget_.seconds;
  }

 private:
  Budget budget_;
  Clock::time_point started_;
};

enum class OutcomeKind { kSolution, kNoSolution, kFailure };

enum class FailureReason { kNone, kTimeout, kIterationCap, kExhausted };

inline const char* to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::kSolution: return "solution";
    case OutcomeKind::kNoSolution: return "no_solution";
    case OutcomeKind::kFailure: return "failure";
  }
  return "?";
}

inline const char* to_string(FailureReason r) {
  switch (r) {
    case FailureReason::kNone: return "none";
    case FailureReason::kTimeout: return "timeout";
    case FailureReason::kIterationCap: return "iteration_cap";
    case FailureReason::kExhausted: return "exhausted";
  }
  return "?";
}

struct ImproveEvent {
  double seconds = 0.0;
  std::uint64_t iteration = 0;
  double cost = 0.0;
  std::uint64_t connect_calls = 0;
};

struct SearchOutcome {
  OutcomeKind kind = OutcomeKind::kFailure;
  FailureReason reason = FailureReason::kNone;
  std::vector<LocationId> path;  // graph planners only
  std::vector<Point> waypoints;  // always filled for solutions
  double cost = std::numeric_limits<double>::infinity();
  bool proven_optimal = false;
  std::vector<ImproveEvent> events;
  std::uint64_t iterations = 0;

  bool solved() const noexcept { return kind == OutcomeKind::kSolution; }
};

/// Failure record for a search stopped by its budget.
inline SearchOutcome budget_failure(const Budget& budget,
                                    std::uint64_t iterations) {
  SearchOutcome out;
  out.kind = OutcomeKind::kFailure;
  out.iterations = iterations;
  out.reason = budget.iterations && iterations >= *budget.iterations
                   ? FailureReason::kIterationCap
                   : FailureReason::kTimeout;
  return out;
}

inline double path_cost(const ProblemInstance& ins,
                        const std::vector<LocationId>& path) {
  double c = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k)
    c += dist(ins.at(path[k]), ins.at(path[k + 1]));
  return c;
}

inline double polyline_length(const std::vector<Point>& pts) {
  double c = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) c += dist(pts[k], pts[k + 1]);
  return c;
}

/// Checks the path is a solution: correct endpoints, ids in range, every
/// consecutive pair distinct and connected.
inline bool validate_path(const ProblemInstance& ins,
                          const std::vector<LocationId>& path,
                          CallCounter& counter) {
  if (path.empty() || path.front() != ins.start || path.back() != ins.goal)
    return false;
  for (auto id : path)
    if (id >= ins.size()) return false;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    if (path[k] == path[k + 1]) return false;
    if (!connect(ins, path[k], path[k + 1], counter)) return false;
  }
  return true;
}

/// Obstacle check for a free-space polyline (sampling-based planners).
inline bool validate_waypoints(const ProblemInstance& ins,
                               const std::vector<Point>& pts) {
  if (pts.size() < 2) return false;
  if (!(pts.front() == ins.at(ins.start)) || !(pts.back() == ins.at(ins.goal)))
    return false;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k)
    if (!segment_is_free(ins.obstacles, {pts[k], pts[k + 1]})) return false;
  return true;
}

inline std::vector<Point> to_waypoints(const ProblemInstance& ins,
                                       const std::vector<LocationId>& path) {
  std::vector<Point> pts;
  pts.reserve(path.size());
  for (auto id : path) pts.push_back(ins.at(id));
  return pts;
}

// Solution dump:
//   path <id> <id> ...
//   cost <real>
//   optimal <0|1>
//   improve <t_seconds> <iteration> <cost>     (one per event)
// Sampling-based planners have no location ids and write `point <x> <y>`
// lines instead of `path`.

inline void write_solution(std::ostream& os, const SearchOutcome& out) {
  os.precision(17);
  if (!out.path.empty()) {
    os << "path";
    for (auto id : out.path) os << ' ' << id;
    os << '\n';
  } else {
    for (const auto& p : out.waypoints) os << "point " << p.x << ' ' << p.y << '\n';
  }
  os << "cost " << out.cost << '\n';
  os << "optimal " << (out.proven_optimal ? 1 : 0) << '\n';
  for (const auto& e : out.events)
    os << "improve " << e.seconds << ' ' << e.iteration << ' ' << e.cost << '\n';
}

struct SolutionDump {
  std::vector<LocationId> path;
  std::vector<Point> points;
  double cost = std::numeric_limits<double>::infinity();
  bool optimal = false;
  std::vector<ImproveEvent> events;
};

inline SolutionDump read_solution(std::istream& is) {
  SolutionDump dump;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == '#') continue;
    bool ok = true;
    if (tag == "path") {
      LocationId id;
      while (ls >> id) dump.path.push_back(id);
      ok = ls.eof();
    } else if (tag == "point") {
      Point p;
      ok = static_cast<bool>(ls >> p.x >> p.y);
      dump.points.push_back(p);
    } else if (tag == "cost") {
      ok = static_cast<bool>(ls >> dump.cost);
    } else if (tag == "optimal") {
      int v = 0;
      ok = static_cast<bool>(ls >> v);
      dump.optimal = v != 0;
    } else if (tag == "improve") {
      ImproveEvent e;
      ok = static_cast<bool>(ls >> e.seconds >> e.iteration >> e.cost);
      dump.events.push_back(e);
    } else {
      ok = false;
    }
    if (!ok)
      throw std::runtime_error("solution line " + std::to_string(lineno) +
                               ": cannot parse '" + line + "'");
  }
  return dump;
}

}  // namespace lacas

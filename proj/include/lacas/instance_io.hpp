// Plain-text instance files.
//
//   # comment
//   n <count>
//   loc <x> <y>                 (count lines, ids in order from 0)
//   start <id>
//   goal <id>
//   obst <x1> <y1> <x2> <y2>    (any number)
#pragma once

#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

#include "lacas/geometry.hpp"

namespace lacas {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what
                                    : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

inline void serialize_instance(std::ostream& os, const ProblemInstance& ins) {
  const auto old = os.precision(17);
  os << "n " << ins.size() << '\n';
  for (const auto& p : ins.locations) os << "loc " << p.x << ' ' << p.y << '\n';
  os << "start " << ins.start << '\n';
  os << "goal " << ins.goal << '\n';
  for (const auto& s : ins.obstacles)
    os << "obst " << s.a.x << ' ' << s.a.y << ' ' << s.b.x << ' ' << s.b.y << '\n';
  os.precision(old);
}

inline std::string serialize_instance(const ProblemInstance& ins) {
  std::ostringstream os;
  serialize_instance(os, ins);
  return os.str();
}

inline ProblemInstance parse_instance(std::istream& is) {
  ProblemInstance ins;
  std::optional<std::size_t> count;
  std::optional<std::pair<long long, int>> start, goal;  // value, line
  std::map<std::pair<double, double>, LocationId> seen;
  std::string line;
  int lineno = 0;

  const auto expect_end = [&](std::istringstream& ls) {
    std::string extra;
    if (ls >> extra) throw ParseError(lineno, "trailing data '" + extra + "'");
  };

  while (std::getline(is, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;

    if (tag == "n") {
      long long n = 0;
      if (count) throw ParseError(lineno, "duplicate 'n' line");
      if (!(ls >> n) || n <= 0) throw ParseError(lineno, "bad location count");
      expect_end(ls);
      count = static_cast<std::size_t>(n);
      ins.locations.reserve(*count);
    } else if (tag == "loc") {
      if (!count) throw ParseError(lineno, "'loc' before 'n'");
      Point p;
      if (!(ls >> p.x >> p.y)) throw ParseError(lineno, "bad 'loc' coordinates");
      expect_end(ls);
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || p.x < 0.0 ||
          p.x > 1.0 || p.y < 0.0 || p.y > 1.0)
        throw ParseError(lineno, "location outside [0,1]^2");
      if (ins.locations.size() == *count)
        throw ParseError(lineno, "more 'loc' lines than declared");
      const auto id = static_cast<LocationId>(ins.locations.size());
      if (auto [it, fresh] = seen.emplace(std::pair{p.x, p.y}, id); !fresh)
        throw ParseError(lineno, "duplicate coordinates of location " +
                                     std::to_string(it->second));
      ins.locations.push_back(p);
    } else if (tag == "start" || tag == "goal") {
      auto& slot = tag == "start" ? start : goal;
      long long id = 0;
      if (slot) throw ParseError(lineno, "duplicate '" + tag + "' line");
      if (!(ls >> id)) throw ParseError(lineno, "bad '" + tag + "' id");
      expect_end(ls);
      slot = std::pair{id, lineno};
    } else if (tag == "obst") {
      Segment s;
      if (!(ls >> s.a.x >> s.a.y >> s.b.x >> s.b.y))
        throw ParseError(lineno, "bad 'obst' coordinates");
      expect_end(ls);
      if (s.a == s.b) throw ParseError(lineno, "degenerate obstacle");
      ins.obstacles.push_back(s);
    } else {
      throw ParseError(lineno, "unknown record '" + tag + "'");
    }
  }

  if (!count) throw ParseError(0, "missing 'n' line");
  if (ins.locations.size() != *count)
    throw ParseError(0, "expected " + std::to_string(*count) +
                            " 'loc' lines, found " +
                            std::to_string(ins.locations.size()));
  if (!start) throw ParseError(0, "missing 'start' line");
  if (!goal) throw ParseError(0, "missing 'goal' line");
  const auto resolve = [&](const std::pair<long long, int>& v,
                           const char* what) {
    if (v.first < 0 || static_cast<std::size_t>(v.first) >= *count)
      throw ParseError(v.second, std::string(what) + " id " +
                                     std::to_string(v.first) +
                                     " out of range [0, " +
                                     std::to_string(*count) + ")");
    return static_cast<LocationId>(v.first);
  };
  ins.start = resolve(*start, "start");
  ins.goal = resolve(*goal, "goal");
  if (ins.start == ins.goal)
    throw ParseError(goal->second, "goal equals start");
  return ins;
}

inline ProblemInstance parse_instance(const std::string& text) {
  std::istringstream is(text);
  return parse_instance(is);
}

inline ProblemInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file " + path);
  return parse_instance(in);
}

inline void save_instance(const std::string& path, const ProblemInstance& ins) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file " + path);
  serialize_instance(out, ins);
}

}  // namespace lacas

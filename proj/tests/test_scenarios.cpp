#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <deque>
#include <optional>
#include <sstream>

#include "lacas/baselines.hpp"
#include "lacas/instance_io.hpp"
#include "lacas/lacas.hpp"
#include "lacas/scenarios.hpp"

using namespace lacas;

namespace {

ScenarioSpec spec(Family f, std::uint64_t seed) {
  ScenarioSpec s;
  s.family = f;
  s.seed = seed;
  return s;
}

bool same(const ProblemInstance& a, const ProblemInstance& b) {
  return a.locations == b.locations && a.start == b.start && a.goal == b.goal &&
         a.obstacles == b.obstacles;
}

// Breadth-first reachability over the visibility graph, optionally skipping
// some edges.
template <class Skip>
bool reachable_without(const ProblemInstance& ins, Skip&& skip) {
  std::vector<bool> seen(ins.size(), false);
  std::deque<LocationId> q{ins.start};
  seen[ins.start] = true;
  CallCounter counter;
  while (!q.empty()) {
    const auto u = q.front();
    q.pop_front();
    if (u == ins.goal) return true;
    for (LocationId v = 0; v < ins.size(); ++v) {
      if (seen[v] || skip(u, v) || !connect(ins, u, v, counter)) continue;
      seen[v] = true;
      q.push_back(v);
    }
  }
  return false;
}

// Exhaustive LaCAS from either end; the smaller component settles it.
std::optional<bool> solvable(const ProblemInstance& ins, double seconds) {
  auto rev = ins;
  std::swap(rev.start, rev.goal);
  const std::array<const ProblemInstance*, 2> ends{&ins, &rev};
  for (const ProblemInstance* p : ends) {
    const NeighborIndex idx(*p);
    SearchConfig cfg;
    cfg.reinsert = cfg.rolling = true;
    cfg.budget = Budget::time(seconds);
    CallCounter counter;
    const auto out = lacas_search(*p, idx, cfg, counter);
    if (out.solved()) return true;
    if (out.kind == OutcomeKind::kNoSolution) return false;
  }
  return std::nullopt;
}

}  // namespace

TEST(Scenarios, DeterministicPerSeed) {
  for (const auto& [fam, name] : kFamilyNames) {
    const auto a = serialize_instance(generate_instance(spec(fam, 1)));
    const auto b = serialize_instance(generate_instance(spec(fam, 1)));
    EXPECT_EQ(a, b) << name;
    if (fam != Family::kGrid10k)
      EXPECT_NE(a, serialize_instance(generate_instance(spec(fam, 2)))) << name;
  }
}

TEST(Scenarios, FamilyNamesRoundTrip) {
  for (const auto& [fam, name] : kFamilyNames) EXPECT_EQ(parse_family(name), fam);
  EXPECT_THROW(parse_family("nope"), std::invalid_argument);
}

TEST(Scenarios, ValidAndInsideBounds) {
  for (const auto& [fam, name] : kFamilyNames) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto ins = generate_instance(spec(fam, seed));
      EXPECT_NO_THROW(validate_instance(ins)) << name;
      EXPECT_EQ(ins.size(), scenario_defaults(fam).locations) << name;
      for (const auto& p : ins.locations) {
        EXPECT_TRUE(p.x >= 0 && p.x <= 1 && p.y >= 0 && p.y <= 1) << name;
      }
      for (const auto& s : ins.obstacles)
        for (const auto& p : {s.a, s.b})
          EXPECT_TRUE(p.x >= -0.1 && p.x <= 1.1 && p.y >= -0.1 && p.y <= 1.1) << name;
    }
  }
}

TEST(Scenarios, StartBottomLeftGoalTopRight) {
  for (auto fam : {Family::kScatter1k, Family::kScatter10k, Family::kGrid10k, Family::kPlus2k}) {
    const auto ins = generate_instance(spec(fam, 0));
    EXPECT_LT(ins.at(ins.start).x, 0.1);
    EXPECT_LT(ins.at(ins.start).y, 0.1);
    EXPECT_GT(ins.at(ins.goal).x, 0.9);
    EXPECT_GT(ins.at(ins.goal).y, 0.9);
  }
}

TEST(Scenarios, GridIsOnHundredthLattice) {
  const auto ins = generate_instance(spec(Family::kGrid10k, 3));
  EXPECT_EQ(ins.size(), 10000u);
  for (const auto& p : ins.locations) {
    EXPECT_EQ(p.x, std::round(p.x * 100) / 100);
    EXPECT_EQ(p.y, std::round(p.y * 100) / 100);
  }
}

TEST(Scenarios, SplitNeedsACrossingEdge) {
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const auto ins = generate_instance(spec(Family::kSplit, seed));
    for (const auto& p : ins.locations) EXPECT_TRUE(p.x < 0.4 || p.x > 0.6);
    const auto crossing = [&](LocationId u, LocationId v) {
      return (ins.at(u).x < 0.5) != (ins.at(v).x < 0.5);
    };
    EXPECT_FALSE(reachable_without(ins, crossing));
    EXPECT_TRUE(reachable_without(ins, [](LocationId, LocationId) { return false; }));
  }
}

TEST(Scenarios, DesignedLayouts) {
  EXPECT_EQ(generate_instance(spec(Family::kGateways, 0)).obstacles.size(), 10u);
  EXPECT_EQ(generate_instance(spec(Family::kZigzag, 0)).obstacles.size(), 4u);
  EXPECT_EQ(generate_instance(spec(Family::kPlus2k, 0)).obstacles.size(),
            2 * scenario_defaults(Family::kPlus2k).obstacles);
  // the basket blocks the straight route
  const auto trap = generate_instance(spec(Family::kTrap, 0));
  EXPECT_FALSE(segment_is_free(trap.obstacles, {trap.at(trap.start), trap.at(trap.goal)}));
}

TEST(Scenarios, DesignedFamiliesAreSolvable) {
  for (auto fam : {Family::kTrap, Family::kZigzag, Family::kGateways, Family::kSplit}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto ins = generate_instance(spec(fam, seed));
      EXPECT_EQ(solvable(ins, 30.0), std::optional<bool>(true)) << family_name(fam) << ' ' << seed;
    }
  }
}

TEST(Scenarios, OverridesApply) {
  ScenarioSpec s = spec(Family::kScatter1k, 4);
  s.locations = 50;
  s.obstacles = 7;
  const auto ins = generate_instance(s);
  EXPECT_EQ(ins.size(), 50u);
  EXPECT_EQ(ins.obstacles.size(), 7u);
}

TEST(Scenarios, ScatterSolvableFraction) {
  int yes = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto ins = generate_instance(spec(Family::kScatter1k, seed));
    const NeighborIndex idx(ins);
    CallCounter counter;
    const auto out = astar_search(ins, idx, SuccessorMode::all(), counter, Budget::time(60.0));
    ASSERT_NE(out.kind, OutcomeKind::kFailure) << seed;
    yes += out.solved();
  }
  EXPECT_GE(yes, 60);
  EXPECT_LE(yes, 95);
}

TEST(Scenarios, LargeScatterSolvableFraction) {
  for (auto fam : {Family::kScatter10k, Family::kGrid10k}) {
    int yes = 0, decided = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto r = solvable(generate_instance(spec(fam, seed)), 20.0);
      if (!r) continue;
      ++decided;
      yes += *r;
    }
    ASSERT_EQ(decided, 20) << family_name(fam);
    EXPECT_GE(yes, 12) << family_name(fam);
    EXPECT_LE(yes, 19) << family_name(fam);
  }
}

TEST(InstanceIo, RoundTrip) {
  int count = 0;
  for (const auto& [fam, name] : kFamilyNames) {
    for (std::uint64_t seed = 0; seed < 13; ++seed, ++count) {
      ScenarioSpec s = spec(fam, seed);
      if (fam != Family::kGrid10k) s.locations = 200;
      const auto ins = generate_instance(s);
      EXPECT_TRUE(same(parse_instance(serialize_instance(ins)), ins)) << name << ' ' << seed;
    }
  }
  EXPECT_GE(count, 100);
}

TEST(InstanceIo, CommentsAndBlankLines) {
  const auto ins = parse_instance(
      "# header\n\nn 2\nloc 0 0  # start\nloc 1 1\nstart 0\ngoal 1\nobst 0 1 1 0\n");
  EXPECT_EQ(ins.size(), 2u);
  EXPECT_EQ(ins.goal, 1u);
  ASSERT_EQ(ins.obstacles.size(), 1u);
}

namespace {

void expect_parse_error(const std::string& text, int line, const std::string& needle) {
  try {
    parse_instance(text);
    ADD_FAILURE() << "no error for:\n" << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
  }
}

}  // namespace

TEST(InstanceIo, Errors) {
  expect_parse_error("n 2\nloc 0 0\nloc 1 1\nstart 0\n", 0, "goal");
  expect_parse_error("n 2\nloc 0 0\nloc 1 1\nstart 2\ngoal 1\n", 4, "out of range");
  expect_parse_error("n 2\nloc 0 0\nloc 0 0\nstart 0\ngoal 1\n", 3, "duplicate");
  expect_parse_error("n 2\nloc 0 zero\n", 2, "loc");
  expect_parse_error("n 2\nloc 0 0\nloc 1 1\nstart 0\ngoal 1\nwall 1 2\n", 6, "unknown");
  expect_parse_error("n 3\nloc 0 0\nloc 1 1\nstart 0\ngoal 1\n", 0, "expected 3");
  expect_parse_error("loc 0 0\n", 1, "before");
  expect_parse_error("n 2\nloc 0 0\nloc 1 1\nstart 0\ngoal 0\n", 5, "equals start");
  expect_parse_error("n 2\nloc 0 0\nloc 1 1\nstart 0\ngoal 1\nobst 0 0 0 0\n", 6, "degenerate");
  expect_parse_error("n 2\nloc 0 0\nloc 1.5 1\n", 3, "outside");
}

TEST(Manifest, RoundTripAndErrors) {
  const std::vector<ManifestEntry> entries{{"trap", 3, "trap-3.txt"}, {"split", 9, "x/y.txt"}};
  std::stringstream ss;
  write_manifest(ss, entries);
  const auto back = parse_manifest(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].family, "split");
  EXPECT_EQ(back[1].seed, 9u);
  EXPECT_EQ(back[1].path, "x/y.txt");
  std::istringstream bad("trap 3\n");
  EXPECT_THROW(parse_manifest(bad), std::runtime_error);
}

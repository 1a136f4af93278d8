// Benchmark harness: algorithm registry, per-run records, CSV output and
// the aggregate statistics used for boxplots and batch-size sweeps.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "lacas/baselines.hpp"
#include "lacas/instance_io.hpp"
#include "lacas/lacas.hpp"
#include "lacas/sampling.hpp"
#include "lacas/scenarios.hpp"

namespace lacas {

enum class Method {
  kLacas,
  kPe,
  kAStar,
  kGbfs,
  kDfs,
  kRrt,
  kRrtConnect,
};

/// A planner plus its settings, written as `name[,flag...]`.
///
/// Names: lacas, lacas*, lacat, lacat*, pe, astar, astar-k, astar-r, gbfs,
/// gbfs-k, gbfs-r, dfs, rrt, rrt-connect. The LaCAS family defaults to
/// sorted batches with reinsert and rolling; the `*` forms add refinement
/// and `lacat` adds the grandparent check. Flags replace those defaults:
/// sort, random, reinsert, rolling, gp, anytime, plus k=INT, r=REAL,
/// b=INT and seed=INT.
struct AlgorithmSpec {
  std::string label;  // as written
  Method method = Method::kLacas;
  SearchConfig config;
  SuccessorMode mode;
  SamplingParams sampling;

  /// Canonical flag string, '+'-separated (CSV-safe).
  std::string flags() const {
    std::vector<std::string> f;
    switch (method) {
      case Method::kLacas:
      case Method::kPe:
        f.push_back(config.sort_batch ? "sort" : "random");
        if (config.reinsert) f.push_back("reinsert");
        if (config.rolling) f.push_back("rolling");
        if (config.grandparent) f.push_back("gp");
        if (config.anytime) f.push_back("anytime");
        break;
      case Method::kAStar:
      case Method::kGbfs:
        if (mode.kind == SuccessorMode::Kind::kKNearest)
          f.push_back("k=" + std::to_string(mode.k));
        if (mode.kind == SuccessorMode::Kind::kRadius) {
          std::ostringstream r;
          r << "r=" << mode.r;
          f.push_back(r.str());
        }
        break;
      case Method::kRrt:
      case Method::kRrtConnect:
        f.push_back("seed=" + std::to_string(sampling.seed));
        break;
      case Method::kDfs:
        break;
    }
    std::string out;
    for (const auto& s : f) out += (out.empty() ? "" : "+") + s;
    return out.empty() ? "-" : out;
  }
};

inline AlgorithmSpec parse_algorithm(const std::string& text) {
  std::vector<std::string> parts;
  {
    std::istringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (!tok.empty()) parts.push_back(tok);
    }
  }
  if (parts.empty()) throw std::invalid_argument("empty algorithm spec");
  AlgorithmSpec spec;
  spec.label = text;
  const std::string& name = parts.front();
  auto& c = spec.config;
  const auto lacas_defaults = [&](bool anytime, bool gp) {
    c.sort_batch = true;
    c.reinsert = true;
    c.rolling = true;
    c.grandparent = gp;
    c.anytime = anytime;
  };
  if (name == "lacas") {
    lacas_defaults(false, false);
  } else if (name == "lacas*") {
    lacas_defaults(true, false);
  } else if (name == "lacat") {
    lacas_defaults(false, true);
  } else if (name == "lacat*") {
    lacas_defaults(true, true);
  } else if (name == "pe") {
    spec.method = Method::kPe;
    lacas_defaults(false, false);
  } else if (name == "astar" || name == "gbfs") {
    spec.method = name == "astar" ? Method::kAStar : Method::kGbfs;
  } else if (name == "astar-k" || name == "gbfs-k") {
    spec.method = name == "astar-k" ? Method::kAStar : Method::kGbfs;
    spec.mode = SuccessorMode::nearest(10);
  } else if (name == "astar-r" || name == "gbfs-r") {
    spec.method = name == "astar-r" ? Method::kAStar : Method::kGbfs;
    spec.mode = SuccessorMode::radius(0.1);
  } else if (name == "dfs") {
    spec.method = Method::kDfs;
  } else if (name == "rrt") {
    spec.method = Method::kRrt;
  } else if (name == "rrt-connect") {
    spec.method = Method::kRrtConnect;
  } else {
    throw std::invalid_argument("unknown algorithm '" + name + "'");
  }

  bool technique_flags = false;
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const std::string& f = parts[i];
    const auto eq = f.find('=');
    const std::string key = f.substr(0, eq);
    const std::string val = eq == std::string::npos ? "" : f.substr(eq + 1);
    const bool lacas_like = spec.method == Method::kLacas || spec.method == Method::kPe;
    const auto technique = [&](auto apply) {
      if (!lacas_like) throw std::invalid_argument("flag '" + f + "' needs a LaCAS-family algorithm");
      if (!technique_flags) {
        c.sort_batch = c.reinsert = c.rolling = c.grandparent = false;
        technique_flags = true;
      }
      apply();
    };
    if (key == "sort") {
      technique([&] { c.sort_batch = true; });
    } else if (key == "random") {
      technique([&] { c.sort_batch = false; });
    } else if (key == "reinsert") {
      technique([&] { c.reinsert = true; });
    } else if (key == "rolling") {
      technique([&] { c.rolling = true; });
    } else if (key == "gp") {
      technique([&] { c.grandparent = true; });
    } else if (key == "anytime") {
      if (!lacas_like) throw std::invalid_argument("'anytime' needs a LaCAS-family algorithm");
      c.anytime = true;
    } else if (key == "b" && !val.empty()) {
      c.batch_size = std::stoul(val);
      if (c.batch_size == 0) throw std::invalid_argument("b must be positive");
    } else if (key == "k" && !val.empty()) {
      spec.mode = SuccessorMode::nearest(std::stoul(val));
    } else if (key == "r" && !val.empty()) {
      spec.mode = SuccessorMode::radius(std::stod(val));
    } else if (key == "seed" && !val.empty()) {
      c.seed = std::stoull(val);
      spec.sampling.seed = c.seed;
    } else {
      throw std::invalid_argument("unknown flag '" + f + "'");
    }
  }
  // `sort`/`random` decide the order; a flag set without either keeps the
  // sorted order
  if (technique_flags &&
      std::none_of(parts.begin() + 1, parts.end(),
                   [](const std::string& p) { return p == "random"; }))
    c.sort_batch = true;
  return spec;
}

struct RunResult {
  SearchOutcome outcome;
  std::uint64_t connect_calls = 0;
  double setup_seconds = 0.0;  // k-d tree construction
  double wall_seconds = 0.0;
};

/// Runs one planner on one instance with a fresh oracle counter. Improvement
/// event times include the index construction.
inline RunResult run_algorithm(const AlgorithmSpec& algo,
                               const ProblemInstance& ins,
                               const Budget& budget) {
  RunResult res;
  CallCounter counter;
  const auto t0 = Clock::now();
  const auto since = [&t0] {
    return std::chrono::duration<double>(Clock::now() - t0).count();
  };
  std::optional<NeighborIndex> index;
  const bool needs_index = algo.method == Method::kLacas ||
                           ((algo.method == Method::kAStar || algo.method == Method::kGbfs) &&
                            !algo.mode.complete());
  if (needs_index) index.emplace(ins);
  res.setup_seconds = since();
  Budget remaining = budget;
  if (remaining.seconds) remaining.seconds = std::max(0.0, *remaining.seconds - res.setup_seconds);

  SearchConfig cfg = algo.config;
  cfg.budget = remaining;
  SamplingParams sp = algo.sampling;
  switch (algo.method) {
    case Method::kLacas:
      res.outcome = lacas_search(ins, *index, cfg, counter);
      break;
    case Method::kPe:
      res.outcome = pe_search(ins, cfg, counter);
      break;
    case Method::kAStar: {
      const NeighborIndex empty;
      res.outcome = astar_search(ins, index ? *index : empty, algo.mode, counter, remaining);
      break;
    }
    case Method::kGbfs: {
      const NeighborIndex empty;
      res.outcome = gbfs_search(ins, index ? *index : empty, algo.mode, counter, remaining);
      break;
    }
    case Method::kDfs:
      res.outcome = dfs_search(ins, counter, remaining);
      break;
    case Method::kRrt:
      res.outcome = rrt_search(ins, sp, counter, remaining);
      break;
    case Method::kRrtConnect:
      res.outcome = rrt_connect_search(ins, sp, counter, remaining);
      break;
  }
  for (auto& e : res.outcome.events) e.seconds += res.setup_seconds;
  res.connect_calls = counter.count();
  res.wall_seconds = since();
  return res;
}

struct RunRecord {
  std::uint64_t run_id = 0;
  std::string scenario;
  std::uint64_t seed = 0;
  std::string algorithm;
  std::string flags;
  std::size_t b = 0;
  bool solved = false;
  double time_to_first_solution = std::numeric_limits<double>::quiet_NaN();
  double first_cost = std::numeric_limits<double>::quiet_NaN();
  double final_cost = std::numeric_limits<double>::quiet_NaN();
  bool proven_optimal = false;
  std::uint64_t connect_calls = 0;        // whole run
  std::uint64_t first_connect_calls = 0;  // up to the first solution
  std::uint64_t iterations = 0;
  std::uint64_t first_iterations = 0;
  std::string outcome;
  std::string reason;
  double wall_seconds = 0.0;
  std::string error;
  std::vector<ImproveEvent> events;  // written to the sibling stream file
};

inline RunRecord make_record(const AlgorithmSpec& algo, const RunResult& res) {
  RunRecord r;
  r.algorithm = algo.label.substr(0, algo.label.find(','));
  r.flags = algo.flags();
  r.b = (algo.method == Method::kLacas || algo.method == Method::kPe) ? algo.config.batch_size : 0;
  const auto& out = res.outcome;
  r.solved = out.solved();
  r.outcome = to_string(out.kind);
  r.reason = to_string(out.reason);
  r.proven_optimal = out.proven_optimal;
  r.connect_calls = res.connect_calls;
  r.iterations = out.iterations;
  r.wall_seconds = res.wall_seconds;
  r.events = out.events;
  if (out.solved() && !out.events.empty()) {
    r.time_to_first_solution = out.events.front().seconds;
    r.first_cost = out.events.front().cost;
    r.first_connect_calls = out.events.front().connect_calls;
    r.first_iterations = out.events.front().iteration;
    r.final_cost = out.cost;
  } else {
    r.first_connect_calls = res.connect_calls;
    r.first_iterations = out.iterations;
  }
  return r;
}

struct BenchTask {
  ManifestEntry entry;
  AlgorithmSpec algo;
};

/// One record per (instance, algorithm). Instance errors are recorded and
/// the run continues. Each worker owns its search state and counter.
inline std::vector<RunRecord> run_benchmark(
    const std::vector<ManifestEntry>& manifest,
    const std::vector<AlgorithmSpec>& algorithms, double timeout_seconds,
    unsigned workers, const std::string& base_dir = {},
    std::function<void(const RunRecord&)> on_record = {}) {
  std::vector<BenchTask> tasks;
  for (const auto& e : manifest)
    for (const auto& a : algorithms) tasks.push_back({e, a});
  std::vector<RunRecord> records(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex sink;

  const auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto& task = tasks[i];
      RunRecord rec;
      try {
        std::filesystem::path p(task.entry.path);
        if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
        const ProblemInstance ins = load_instance(p.string());
        validate_instance(ins);
        rec = make_record(task.algo, run_algorithm(task.algo, ins, Budget::time(timeout_seconds)));
      } catch (const std::exception& ex) {
        rec.algorithm = task.algo.label.substr(0, task.algo.label.find(','));
        rec.flags = task.algo.flags();
        rec.outcome = "error";
        rec.reason = "none";
        rec.error = ex.what();
      }
      rec.run_id = i;
      rec.scenario = task.entry.family;
      rec.seed = task.entry.seed;
      std::lock_guard lock(sink);
      records[i] = rec;
      if (on_record) on_record(records[i]);
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return records;
}

// CSV. Column order is fixed; see kCsvHeader.

inline constexpr const char* kCsvHeader =
    "run_id,scenario,seed,algorithm,flags,b,solved,time_to_first_solution,"
    "first_cost,final_cost,proven_optimal,connect_calls,first_connect_calls,"
    "iterations,first_iterations,outcome,reason,wall_seconds,error";

namespace detail {

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch == '\n' ? ' ' : ch;
  }
  return out + '"';
}

inline std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  cells.push_back(cur);
  return cells;
}

inline std::string fmt_real(double v) {
  if (std::isnan(v)) return "";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline double parse_real(const std::string& s) {
  return s.empty() ? std::numeric_limits<double>::quiet_NaN() : std::stod(s);
}

}  // namespace detail

inline void write_csv(std::ostream& os, const std::vector<RunRecord>& records) {
  using detail::csv_escape;
  using detail::fmt_real;
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    os << r.run_id << ',' << csv_escape(r.scenario) << ',' << r.seed << ','
       << csv_escape(r.algorithm) << ',' << csv_escape(r.flags) << ',' << r.b << ','
       << (r.solved ? 1 : 0) << ',' << fmt_real(r.time_to_first_solution) << ','
       << fmt_real(r.first_cost) << ',' << fmt_real(r.final_cost) << ','
       << (r.proven_optimal ? 1 : 0) << ',' << r.connect_calls << ','
       << r.first_connect_calls << ',' << r.iterations << ',' << r.first_iterations << ','
       << r.outcome << ',' << r.reason << ',' << fmt_real(r.wall_seconds) << ','
       << csv_escape(r.error) << '\n';
  }
}

inline void write_improvements(std::ostream& os, const std::vector<RunRecord>& records) {
  os << "run_id,seconds,iteration,cost,connect_calls\n";
  for (const auto& r : records)
    for (const auto& e : r.events)
      os << r.run_id << ',' << detail::fmt_real(e.seconds) << ',' << e.iteration << ','
         << detail::fmt_real(e.cost) << ',' << e.connect_calls << '\n';
}

/// Writes `path` and the improvement streams to `path` + ".improve.csv".
inline void emit_csv(const std::vector<RunRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_csv(out, records);
  std::ofstream imp(path + ".improve.csv");
  if (!imp) throw std::runtime_error("cannot write " + path + ".improve.csv");
  write_improvements(imp, records);
}

inline std::vector<RunRecord> read_csv(std::istream& is) {
  std::vector<RunRecord> out;
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader)
    throw std::runtime_error("unexpected CSV header");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto c = detail::csv_split(line);
    if (c.size() != 19) throw std::runtime_error("CSV row has " + std::to_string(c.size()) + " cells");
    RunRecord r;
    r.run_id = std::stoull(c[0]);
    r.scenario = c[1];
    r.seed = std::stoull(c[2]);
    r.algorithm = c[3];
    r.flags = c[4];
    r.b = std::stoul(c[5]);
    r.solved = c[6] == "1";
    r.time_to_first_solution = detail::parse_real(c[7]);
    r.first_cost = detail::parse_real(c[8]);
    r.final_cost = detail::parse_real(c[9]);
    r.proven_optimal = c[10] == "1";
    r.connect_calls = std::stoull(c[11]);
    r.first_connect_calls = std::stoull(c[12]);
    r.iterations = std::stoull(c[13]);
    r.first_iterations = std::stoull(c[14]);
    r.outcome = c[15];
    r.reason = c[16];
    r.wall_seconds = detail::parse_real(c[17]);
    r.error = c[18];
    out.push_back(std::move(r));
  }
  return out;
}

/// Attaches improvement streams read from the sibling file.
inline void read_improvements(std::istream& is, std::vector<RunRecord>& records) {
  std::map<std::uint64_t, RunRecord*> by_id;
  for (auto& r : records) by_id[r.run_id] = &r;
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto c = detail::csv_split(line);
    if (c.size() != 5) throw std::runtime_error("bad improvement row");
    auto it = by_id.find(std::stoull(c[0]));
    if (it == by_id.end()) continue;
    it->second->events.push_back({detail::parse_real(c[1]), std::stoull(c[2]),
                                  detail::parse_real(c[3]), std::stoull(c[4])});
  }
}

// Aggregation.

struct Quartiles {
  double q1 = std::numeric_limits<double>::quiet_NaN();
  double median = std::numeric_limits<double>::quiet_NaN();
  double q3 = std::numeric_limits<double>::quiet_NaN();
};

/// Linear-interpolation quantile (the common "type 7" definition).
inline double quantile(std::vector<double> v, double q) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

inline Quartiles quartiles(const std::vector<double>& v) {
  return {quantile(v, 0.25), quantile(v, 0.5), quantile(v, 0.75)};
}

inline double mean(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

/// Boxplot row for one (scenario, algorithm, flags, b) group; time, cost and
/// #connect are over solved runs and refer to the first solution.
struct GroupSummary {
  std::string scenario;
  std::string algorithm;
  std::string flags;
  std::size_t b = 0;
  std::size_t runs = 0;
  std::size_t solved = 0;
  Quartiles time;
  Quartiles cost;
  Quartiles final_cost;
  Quartiles connects;
};

inline std::vector<GroupSummary> summarize(const std::vector<RunRecord>& records) {
  using Key = std::tuple<std::string, std::string, std::string, std::size_t>;
  std::map<Key, std::vector<const RunRecord*>> groups;
  for (const auto& r : records) groups[{r.scenario, r.algorithm, r.flags, r.b}].push_back(&r);
  std::vector<GroupSummary> out;
  for (const auto& [key, rs] : groups) {
    GroupSummary s;
    std::tie(s.scenario, s.algorithm, s.flags, s.b) = key;
    s.runs = rs.size();
    std::vector<double> t, c, fc, k;
    for (const auto* r : rs) {
      if (!r->solved) continue;
      ++s.solved;
      t.push_back(r->time_to_first_solution);
      c.push_back(r->first_cost);
      fc.push_back(r->final_cost);
      k.push_back(static_cast<double>(r->first_connect_calls));
    }
    s.time = quartiles(t);
    s.cost = quartiles(c);
    s.final_cost = quartiles(fc);
    s.connects = quartiles(k);
    out.push_back(std::move(s));
  }
  return out;
}

inline void write_summary(std::ostream& os, const std::vector<GroupSummary>& rows) {
  using detail::fmt_real;
  os << "scenario,algorithm,flags,b,runs,solved,solved_pct,"
        "time_q1,time_median,time_q3,cost_q1,cost_median,cost_q3,"
        "final_cost_q1,final_cost_median,final_cost_q3,"
        "connect_q1,connect_median,connect_q3\n";
  for (const auto& s : rows) {
    const auto q = [&](const Quartiles& x) {
      return fmt_real(x.q1) + ',' + fmt_real(x.median) + ',' + fmt_real(x.q3);
    };
    os << s.scenario << ',' << s.algorithm << ',' << s.flags << ',' << s.b << ',' << s.runs << ','
       << s.solved << ',' << fmt_real(s.runs ? 100.0 * s.solved / s.runs : 0.0) << ','
       << q(s.time) << ',' << q(s.cost) << ',' << q(s.final_cost) << ',' << q(s.connects) << '\n';
  }
}

/// Per-b row of a batch-size sweep.
struct SweepRow {
  std::size_t b = 0;
  std::size_t runs = 0;
  std::size_t solved = 0;
  double solved_pct = 0.0;
  Quartiles connects;  // first-solution #connect over solved runs
};

struct SweepResult {
  std::vector<RunRecord> records;
  std::vector<SweepRow> rows;
};

/// LaCAS (`base`, default flags) for every b in `sizes`.
inline SweepResult batch_size_sweep(const std::vector<ManifestEntry>& manifest,
                                    const std::vector<std::size_t>& sizes,
                                    double timeout_seconds, unsigned workers = 1,
                                    const std::string& base_dir = {},
                                    const std::string& base = "lacas") {
  std::vector<AlgorithmSpec> algos;
  for (auto b : sizes) {
    auto a = parse_algorithm(base);
    if (b == 0) throw std::invalid_argument("b must be positive");
    a.config.batch_size = b;
    algos.push_back(a);
  }
  SweepResult out;
  out.records = run_benchmark(manifest, algos, timeout_seconds, workers, base_dir);
  for (auto b : sizes) {
    SweepRow row;
    row.b = b;
    std::vector<double> k;
    for (const auto& r : out.records) {
      if (r.b != b) continue;
      ++row.runs;
      if (!r.solved) continue;
      ++row.solved;
      k.push_back(static_cast<double>(r.first_connect_calls));
    }
    row.solved_pct = row.runs ? 100.0 * row.solved / row.runs : 0.0;
    row.connects = quartiles(k);
    out.rows.push_back(row);
  }
  return out;
}

inline void write_sweep_summary(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "b,runs,solved,solved_pct,connect_q1,connect_median,connect_q3\n";
  for (const auto& r : rows)
    os << r.b << ',' << r.runs << ',' << r.solved << ',' << detail::fmt_real(r.solved_pct) << ','
       << detail::fmt_real(r.connects.q1) << ',' << detail::fmt_real(r.connects.median) << ','
       << detail::fmt_real(r.connects.q3) << '\n';
}

}  // namespace lacas

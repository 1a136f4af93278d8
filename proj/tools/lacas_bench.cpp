// Command-line harness: instance generation, benchmark grids, batch-size
// sweeps, single solves and SVG rendering.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lacas/bench.hpp"
#include "lacas/svg.hpp"

namespace fs = std::filesystem;
using namespace lacas;

namespace {

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const auto v = std::stoull(s);
    return {v, v};
  }
  const auto lo = std::stoull(s.substr(0, dots));
  const auto hi = std::stoull(s.substr(dots + 2));
  if (hi < lo) throw std::invalid_argument("empty seed range " + s);
  return {lo, hi};
}

std::string base_dir_of(const std::string& manifest) {
  return fs::absolute(manifest).parent_path().string();
}

void print_summary(const std::vector<GroupSummary>& rows) {
  std::printf("%-12s %-12s %-28s %5s %8s %10s %10s %12s\n", "scenario", "algorithm", "flags", "b",
              "solved", "time(med)", "cost(med)", "#conn(med)");
  for (const auto& s : rows)
    std::printf("%-12s %-12s %-28s %5zu %4zu/%-3zu %10.4f %10.4f %12.0f\n", s.scenario.c_str(),
                s.algorithm.c_str(), s.flags.c_str(), s.b, s.solved, s.runs, s.time.median,
                s.cost.median, s.connects.median);
}

int cmd_gen(const std::string& family, const std::string& seeds, const std::string& out,
            std::optional<std::size_t> locations, std::optional<std::size_t> obstacles) {
  const Family fam = parse_family(family);
  const auto [lo, hi] = parse_seed_range(seeds);
  fs::create_directories(out);
  const fs::path manifest = fs::path(out) / "manifest.txt";
  std::vector<ManifestEntry> entries;
  if (fs::exists(manifest)) entries = load_manifest(manifest.string());
  std::map<std::pair<std::string, std::uint64_t>, std::size_t> where;
  for (std::size_t i = 0; i < entries.size(); ++i) where[{entries[i].family, entries[i].seed}] = i;
  for (auto seed = lo; seed <= hi; ++seed) {
    ScenarioSpec spec{fam, seed, locations, obstacles, std::nullopt, std::nullopt};
    const auto ins = generate_instance(spec);
    const std::string name = family + "-" + std::to_string(seed) + ".txt";
    save_instance((fs::path(out) / name).string(), ins);
    ManifestEntry e{family, seed, name};
    if (auto it = where.find({family, seed}); it != where.end()) {
      entries[it->second] = e;
    } else {
      where[{family, seed}] = entries.size();
      entries.push_back(e);
    }
  }
  std::ofstream os(manifest);
  write_manifest(os, entries);
  std::cout << "wrote " << (hi - lo + 1) << " instances to " << out << '\n';
  return 0;
}

int cmd_run(const std::string& manifest, const std::vector<std::string>& algos,
            std::optional<std::size_t> b, double timeout, unsigned workers,
            const std::string& csv) {
  const auto entries = load_manifest(manifest);
  std::vector<AlgorithmSpec> specs;
  for (const auto& a : algos) {
    auto spec = parse_algorithm(a);
    if (b) spec.config.batch_size = *b;
    specs.push_back(spec);
  }
  const auto records = run_benchmark(entries, specs, timeout, workers, base_dir_of(manifest),
                                     [](const RunRecord& r) {
                                       std::cerr << r.scenario << ' ' << r.seed << ' '
                                                 << r.algorithm << ' ' << r.outcome << '\n';
                                     });
  emit_csv(records, csv);
  const auto summary = summarize(records);
  std::ofstream sum(csv + ".summary.csv");
  write_summary(sum, summary);
  print_summary(summary);
  return 0;
}

int cmd_sweep(const std::string& manifest, const std::string& b_list, double timeout,
              unsigned workers, const std::string& csv, const std::string& base) {
  std::vector<std::size_t> sizes;
  std::istringstream ss(b_list);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) sizes.push_back(std::stoul(tok));
  if (sizes.empty()) throw std::invalid_argument("--b needs at least one value");
  const auto result =
      batch_size_sweep(load_manifest(manifest), sizes, timeout, workers, base_dir_of(manifest), base);
  emit_csv(result.records, csv);
  std::ofstream sum(csv + ".summary.csv");
  write_sweep_summary(sum, result.rows);
  write_sweep_summary(std::cout, result.rows);
  return 0;
}

int cmd_solve(const std::string& instance, const std::string& algo, double timeout,
              const std::string& out, const std::string& svg) {
  const auto ins = load_instance(instance);
  validate_instance(ins);
  const auto spec = parse_algorithm(algo);
  const auto res = run_algorithm(spec, ins, Budget::time(timeout));
  std::cout << to_string(res.outcome.kind);
  if (res.outcome.solved()) std::cout << " cost " << res.outcome.cost;
  std::cout << " #connect " << res.connect_calls << " #iteration " << res.outcome.iterations
            << '\n';
  if (!out.empty() && res.outcome.solved()) {
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot write " + out);
    write_solution(os, res.outcome);
  }
  if (!svg.empty()) {
    RenderOptions opt;
    if (res.outcome.solved()) opt.paths.push_back({res.outcome.waypoints, spec.label});
    render_svg(svg, ins, opt);
  }
  return 0;
}

int cmd_render(const std::string& instance, const std::vector<std::string>& solutions,
               const std::string& out) {
  const auto ins = load_instance(instance);
  validate_instance(ins);
  RenderOptions opt;
  for (const auto& path : solutions) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open solution " + path);
    const auto dump = read_solution(is);
    LabeledPath lp;
    lp.label = fs::path(path).filename().string();
    for (auto id : dump.path) {
      if (id >= ins.size()) throw std::runtime_error(path + ": location id out of range");
      lp.points.push_back(ins.at(id));
    }
    lp.points.insert(lp.points.end(), dump.points.begin(), dump.points.end());
    opt.paths.push_back(std::move(lp));
  }
  render_svg(out, ins, opt);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LaCAS pathfinding benchmark harness"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "generate scenario instances and a manifest");
  std::string family, seeds, out_dir;
  std::optional<std::size_t> gen_locations, gen_obstacles;
  gen->add_option("--family", family, "scenario family")->required();
  gen->add_option("--seeds", seeds, "seed or range A..B")->required();
  gen->add_option("--out", out_dir, "output directory")->required();
  gen->add_option("--locations", gen_locations, "override location count");
  gen->add_option("--obstacles", gen_obstacles, "override obstacle count");

  auto* run = app.add_subcommand("run", "run algorithms over a manifest");
  std::string manifest, csv;
  std::vector<std::string> algos;
  std::optional<std::size_t> batch;
  double timeout = 30.0;
  unsigned workers = 1;
  run->add_option("--manifest", manifest, "manifest file")->required();
  run->add_option("--algo", algos, "NAME[,flags]; repeatable")->required();
  run->add_option("--b", batch, "batch size for LaCAS-family algorithms");
  run->add_option("--timeout", timeout, "seconds per run")->capture_default_str();
  run->add_option("--workers", workers, "parallel runs")->capture_default_str();
  run->add_option("--csv", csv, "output CSV")->required();

  auto* sweep = app.add_subcommand("sweep", "batch-size sweep of LaCAS");
  std::string b_list, sweep_base = "lacas";
  sweep->add_option("--manifest", manifest, "manifest file")->required();
  sweep->add_option("--b", b_list, "comma-separated batch sizes")->required();
  sweep->add_option("--csv", csv, "output CSV")->required();
  sweep->add_option("--timeout", timeout, "seconds per run")->capture_default_str();
  sweep->add_option("--workers", workers, "parallel runs")->capture_default_str();
  sweep->add_option("--algo", sweep_base, "LaCAS variant to sweep")->capture_default_str();

  auto* solve = app.add_subcommand("solve", "solve one instance and dump the solution");
  std::string instance, algo = "lacas", sol_out, svg_out;
  solve->add_option("--instance", instance, "instance file")->required();
  solve->add_option("--algo", algo, "NAME[,flags]")->capture_default_str();
  solve->add_option("--timeout", timeout, "seconds")->capture_default_str();
  solve->add_option("--out", sol_out, "solution dump");
  solve->add_option("--svg", svg_out, "also render to this SVG");

  auto* render = app.add_subcommand("render", "render an instance and solutions to SVG");
  std::vector<std::string> solutions;
  std::string render_out;
  render->add_option("--instance", instance, "instance file")->required();
  render->add_option("--solution", solutions, "solution dump; repeatable");
  render->add_option("--out", render_out, "SVG path")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (*gen) return cmd_gen(family, seeds, out_dir, gen_locations, gen_obstacles);
    if (*run) return cmd_run(manifest, algos, batch, timeout, workers, csv);
    if (*sweep) return cmd_sweep(manifest, b_list, timeout, workers, csv, sweep_base);
    if (*solve) return cmd_solve(instance, algo, timeout, sol_out, svg_out);
    if (*render) return cmd_render(instance, solutions, render_out);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 1;
  }
  return 0;
}

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gridplan/experiment.hpp"
#include "gridplan/mapgen.hpp"
#include "gridplan/rstar.hpp"
#include "gridplan/search.hpp"

namespace fs = std::filesystem;
using namespace gridplan;

namespace {

CellIndex parse_cell(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos)
    throw CLI::ValidationError("expected 'i,j', got '" + text + "'");
  return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
}

std::string pad_id(const std::string& family, int n) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%03d", family.c_str(), n);
  return buf;
}

int cmd_generate(const std::string& family_str, int rows, int cols,
                 double threshold, int count, std::uint64_t seed,
                 const std::string& out_dir) {
  const auto family = parse_family(family_str);
  if (!family) {
    std::cerr << "unknown family: " << family_str << "\n";
    return 1;
  }
  fs::create_directories(out_dir);
  const Cost target = kCardinalCost * (cols - 1);

  std::vector<CorpusEntry> entries;
  for (int n = 0; n < count; ++n) {
    const std::string map_id = pad_id(family_str, n);
    // Regenerate with a fresh derived seed until the task placement
    // succeeds.
    for (int attempt = 0;; ++attempt) {
      if (attempt >= 50) {
        std::cerr << "could not place a solvable task on " << map_id << "\n";
        return 1;
      }
      const std::uint64_t map_seed =
          derive_seed(seed, map_id, static_cast<std::uint64_t>(attempt), 0);
      GenConfig cfg = GenConfig::scaled(*family, rows, cols, threshold, map_seed);
      Rng rng(map_seed);
      const Grid grid = generate(cfg, rng);
      const auto task = place_task(grid, target, rng);
      if (!task) continue;
      const std::string file = map_id + ".map";
      save_map_file(grid, (fs::path(out_dir) / file).string());
      entries.push_back({map_id, family_str, map_seed, rows, cols,
                         grid.blocked_fraction(), task->s, task->g, file});
      break;
    }
  }

  const fs::path manifest = fs::path(out_dir) / "manifest.txt";
  std::ofstream out(manifest, std::ios::binary | std::ios::app);
  if (!out) {
    std::cerr << "cannot write " << manifest.string() << "\n";
    return 1;
  }
  out << format_manifest(entries);
  std::cout << "generated " << count << " " << family_str << " maps -> "
            << manifest.string() << "\n";
  return 0;
}

int cmd_plan(const std::string& map_file, const std::string& start_str,
             const std::string& goal_str, const std::string& algo, double w,
             bool auto_flag, Cost delta, int k, std::uint64_t m,
             std::uint64_t seed, const std::string& trace_file) {
  const Grid grid = load_map_file(map_file);
  const CellIndex s = parse_cell(start_str);
  const CellIndex g = parse_cell(goal_str);

  bool solved = false;
  Cost length = 0;
  std::uint64_t cells = 0;
  double time_ms = 0.0;

  if (algo == "astar" || algo == "wastar") {
    const HeuristicWeight weight =
        algo == "astar" ? HeuristicWeight{1, 1} : HeuristicWeight::of(w);
    const SearchResult res = weighted_astar(grid, s, g, weight);
    solved = res.found();
    length = res.length;
    cells = res.stats.cells;
    time_ms = res.stats.wall_time_ms;
  } else if (algo == "rstar") {
    RStarParams params;
    if (auto_flag) {
      params = auto_params(s, g, HeuristicWeight::of(w));
    } else {
      params.delta = delta;
      params.k_succ = k;
      params.m_budget = m;
      params.w = HeuristicWeight::of(w);
    }
    std::ofstream trace_out;
    std::ostream* trace = nullptr;
    if (!trace_file.empty()) {
      trace_out.open(trace_file, std::ios::binary);
      if (!trace_out) {
        std::cerr << "cannot write trace file " << trace_file << "\n";
        return 1;
      }
      trace = &trace_out;
    }
    Rng rng(seed);
    const RStarResult res = rstar_plan(grid, s, g, params, rng, trace);
    solved = res.found();
    length = res.stats.length;
    cells = res.stats.cells;
    time_ms = res.stats.wall_time_ms;
  } else {
    std::cerr << "unknown algo: " << algo << "\n";
    return 1;
  }

  char line[128];
  std::snprintf(line, sizeof line, "%d %lld %llu %.3f\n", solved ? 1 : 0,
                static_cast<long long>(length),
                static_cast<unsigned long long>(cells), time_ms);
  std::cout << line;
  return 0;
}

int cmd_sweep(const std::string& corpus_file, double sigma, int reps,
              std::uint64_t seed, const std::string& out_file, int jobs,
              double w) {
  const auto corpus = load_manifest_file(corpus_file);
  if (corpus.empty()) {
    std::cerr << "empty corpus manifest\n";
    return 1;
  }
  const Cost reference_dist = static_cast<Cost>(std::llround(sigma * 5000.0));
  auto series = default_series(reference_dist);
  for (auto& s : series) s.fixed.w = HeuristicWeight::of(w);

  SweepOptions options;
  options.repetitions = reps;
  options.base_seed = seed;
  options.jobs = jobs;

  const std::string dir = fs::path(corpus_file).parent_path().string();
  const auto records = run_sweep(corpus, dir, series, options);

  std::ofstream out(out_file, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write " << out_file << "\n";
    return 1;
  }
  write_csv(out, records);
  std::cout << records.size() << " runs -> " << out_file << "\n";
  return 0;
}

int cmd_report(const std::string& in_file, const std::string& series_name) {
  std::ifstream in(in_file, std::ios::binary);
  if (!in) {
    std::cerr << "cannot open " << in_file << "\n";
    return 1;
  }
  auto records = read_csv(in);
  if (!series_name.empty()) {
    std::erase_if(records, [&](const RunRecord& r) { return r.series != series_name; });
    if (records.empty()) {
      std::cerr << "no records for series " << series_name << "\n";
      return 1;
    }
  }
  print_summary(std::cout, aggregate(records));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grid path planning benchmarks: R*, WA*, map generation, sweeps"};
  app.require_subcommand(1);

  // generate
  std::string gen_family = "rects", gen_out;
  int gen_rows = 501, gen_cols = 501, gen_count = 10;
  double gen_threshold = 0.30;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("generate", "generate a map corpus + manifest");
  gen->add_option("--family", gen_family, "rects|tetris")->required();
  gen->add_option("--rows", gen_rows, "grid rows");
  gen->add_option("--cols", gen_cols, "grid cols");
  gen->add_option("--threshold", gen_threshold, "blocked fraction");
  gen->add_option("--count", gen_count, "number of maps")->required();
  gen->add_option("--seed", gen_seed, "base seed");
  gen->add_option("--out", gen_out, "output directory")->required();

  // plan
  std::string plan_map, plan_start, plan_goal, plan_algo = "rstar", plan_trace;
  double plan_w = 3.0;
  bool plan_auto = false;
  Cost plan_delta = 0;
  int plan_k = 0;
  std::uint64_t plan_m = 0, plan_seed = 0;
  auto* plan = app.add_subcommand("plan", "run one planner on one task");
  plan->add_option("--map", plan_map, "map file")->required();
  plan->add_option("--start", plan_start, "start cell i,j")->required();
  plan->add_option("--goal", plan_goal, "goal cell i,j")->required();
  plan->add_option("--algo", plan_algo, "astar|wastar|rstar")->required();
  plan->add_option("--w", plan_w, "heuristic weight");
  plan->add_flag("--auto", plan_auto, "derive R* params from the task");
  plan->add_option("--delta", plan_delta, "R* successor distance");
  plan->add_option("--k", plan_k, "R* successors per expansion");
  plan->add_option("--m", plan_m, "R* local-search budget");
  plan->add_option("--seed", plan_seed, "rng seed");
  plan->add_option("--trace", plan_trace, "write the expansion trace here");

  // sweep
  std::string sweep_corpus, sweep_out = "results.csv";
  double sweep_scale = 1.0, sweep_w = 3.0;
  int sweep_reps = 3, sweep_jobs = 1;
  std::uint64_t sweep_seed = 1;
  auto* sweep = app.add_subcommand("sweep", "run the three parameter-sweep series");
  sweep->add_option("--corpus", sweep_corpus, "manifest file")->required();
  sweep->add_option("--scale", sweep_scale, "task scale sigma (1 = dist 5000)");
  sweep->add_option("--reps", sweep_reps, "repetitions per task");
  sweep->add_option("--seed", sweep_seed, "base seed");
  sweep->add_option("--out", sweep_out, "output CSV");
  sweep->add_option("--jobs", sweep_jobs, "worker threads");
  sweep->add_option("--w", sweep_w, "heuristic weight");

  // report
  std::string report_in, report_series;
  auto* report = app.add_subcommand("report", "summarize a sweep CSV");
  report->add_option("--in", report_in, "results CSV")->required();
  report->add_option("--series", report_series, "restrict to one series");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed())
      return cmd_generate(gen_family, gen_rows, gen_cols, gen_threshold,
                          gen_count, gen_seed, gen_out);
    if (plan->parsed())
      return cmd_plan(plan_map, plan_start, plan_goal, plan_algo, plan_w,
                      plan_auto, plan_delta, plan_k, plan_m, plan_seed,
                      plan_trace);
    if (sweep->parsed())
      return cmd_sweep(sweep_corpus, sweep_scale, sweep_reps, sweep_seed,
                       sweep_out, sweep_jobs, sweep_w);
    if (report->parsed()) return cmd_report(report_in, report_series);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

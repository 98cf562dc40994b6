#include "gridplan/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

namespace gridplan {

namespace {

constexpr Cost kReferenceTaskDist = 5000;

Cost scale_value(Cost v, Cost reference_dist) {
  return (v * reference_dist + kReferenceTaskDist / 2) / kReferenceTaskDist;
}

Cost k_upper_bound(Cost delta) { return (6 * delta + 9) / 10; }
Cost m_lower_bound(Cost delta) { return (delta + 5) / 10; }

int clamp_k(Cost k, Cost delta) {
  return static_cast<int>(std::clamp<Cost>(k, 3, k_upper_bound(delta)));
}

// Recommended bindings K = Δ/20 and m = Δ/5 for a given delta.
int bound_k_for(Cost delta) { return clamp_k((delta + 10) / 20, delta); }
std::uint64_t bound_m_for(Cost delta) {
  return static_cast<std::uint64_t>(
      std::max(m_lower_bound(delta), (2 * delta + 5) / 10));
}

void check_collapse(const std::string& name, const std::vector<Cost>& values) {
  std::vector<Cost> distinct(values);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (distinct.size() >= 2) return;
  std::string msg = name + " collapsed after scaling; values:";
  for (Cost v : values) msg += " " + std::to_string(v);
  throw std::invalid_argument(msg);
}

}  // namespace

std::vector<SweepSeries> default_series(Cost reference_dist) {
  if (reference_dist <= 0)
    throw std::invalid_argument("default_series: reference_dist must be positive");

  const Cost delta0 = std::max(kCardinalCost, scale_value(500, reference_dist));
  std::vector<SweepSeries> series;

  {
    SweepSeries m;
    m.name = "m_series";
    m.varying = "m_budget";
    m.fixed.delta = delta0;
    m.fixed.k_succ = clamp_k(scale_value(50, reference_dist), delta0);
    for (Cost v : {50, 75, 100, 200, 300, 500, 750, 1000})
      m.values.push_back(std::max(scale_value(v, reference_dist), m_lower_bound(delta0)));
    check_collapse(m.name, m.values);
    series.push_back(std::move(m));
  }
  {
    SweepSeries k;
    k.name = "k_series";
    k.varying = "k_succ";
    k.fixed.delta = delta0;
    k.fixed.m_budget = static_cast<std::uint64_t>(
        std::max(scale_value(100, reference_dist), m_lower_bound(delta0)));
    for (Cost v : {3, 5, 7, 10, 25, 50, 70, 100})
      k.values.push_back(clamp_k(scale_value(v, reference_dist), delta0));
    check_collapse(k.name, k.values);
    series.push_back(std::move(k));
  }
  {
    SweepSeries d;
    d.name = "delta_series";
    d.varying = "delta";
    for (Cost v : {50, 100, 200, 300, 500, 750, 1000, 1500, 2500})
      d.values.push_back(std::max(kCardinalCost, scale_value(v, reference_dist)));
    check_collapse(d.name, d.values);
    series.push_back(std::move(d));
  }
  return series;
}

std::vector<SweepConfig> flatten_series(const std::vector<SweepSeries>& series,
                                        std::ostream* skip_log) {
  std::vector<SweepConfig> configs;
  int index = 0;
  for (const auto& s : series) {
    if (s.values.empty())
      throw std::invalid_argument("series " + s.name + " has no values");
    for (Cost v : s.values) {
      SweepConfig cfg;
      cfg.series = s.name;
      cfg.config_index = index++;
      cfg.varying_value = v;
      cfg.params = s.fixed;
      if (s.varying == "m_budget") {
        cfg.params.m_budget = static_cast<std::uint64_t>(v);
      } else if (s.varying == "k_succ") {
        cfg.params.k_succ = static_cast<int>(v);
      } else if (s.varying == "delta") {
        // A varying delta re-derives K and m from the recommended
        // bindings (Δ/20 and Δ/5).
        cfg.params.delta = v;
        cfg.params.k_succ = bound_k_for(v);
        cfg.params.m_budget = bound_m_for(v);
      } else {
        throw std::invalid_argument("unknown varying parameter: " + s.varying);
      }
      const auto violations = validate_params(cfg.params);
      if (!violations.empty()) {
        if (skip_log) {
          *skip_log << "skipping " << s.name << " point " << v << ":";
          for (const auto& msg : violations) *skip_log << ' ' << msg << ';';
          *skip_log << '\n';
        }
        continue;
      }
      configs.push_back(std::move(cfg));
    }
  }
  return configs;
}

std::vector<RunRecord> run_sweep(const std::vector<CorpusEntry>& corpus,
                                 const std::string& corpus_dir,
                                 const std::vector<SweepSeries>& series,
                                 const SweepOptions& options) {
  if (options.repetitions < 1)
    throw std::invalid_argument("run_sweep: repetitions must be >= 1");
  const std::vector<SweepConfig> configs = flatten_series(series, nullptr);
  if (configs.empty()) throw std::invalid_argument("run_sweep: no valid configs");

  std::vector<Grid> grids;
  grids.reserve(corpus.size());
  for (const auto& e : corpus) {
    const auto path = std::filesystem::path(corpus_dir) / e.file;
    grids.push_back(load_map_file(path.string()));
  }

  const std::size_t reps = static_cast<std::size_t>(options.repetitions);
  const std::size_t total = corpus.size() * configs.size() * reps;
  std::vector<RunRecord> records(total);

  auto run_one = [&](std::size_t index) {
    const std::size_t rep = index % reps;
    const std::size_t ci = (index / reps) % configs.size();
    const std::size_t mi = index / (reps * configs.size());
    const CorpusEntry& entry = corpus[mi];
    const SweepConfig& cfg = configs[ci];

    RunRecord rec;
    rec.series = cfg.series;
    rec.config_index = cfg.config_index;
    rec.map_id = entry.map_id;
    rec.family = entry.family;
    rec.seed = derive_seed(options.base_seed, entry.map_id,
                           static_cast<std::uint64_t>(cfg.config_index), rep);
    rec.algo = "rstar";
    rec.delta = cfg.params.delta;
    rec.k_succ = cfg.params.k_succ;
    rec.m_budget = cfg.params.m_budget;
    rec.w = cfg.params.w.value();

    Rng rng(rec.seed);
    const RStarResult res =
        rstar_plan(grids[mi], entry.s, entry.g, cfg.params, rng);
    rec.solved = res.found();
    rec.length = res.found() ? res.stats.length : 0;
    rec.cells = res.stats.cells;
    rec.time_ms = res.stats.wall_time_ms;
    rec.sparse_states = res.stats.sparse_states;
    rec.local_searches = res.stats.local_searches;
    rec.failed_local = res.stats.failed_local;
    records[index] = std::move(rec);
  };

  if (options.jobs <= 1) {
    for (std::size_t i = 0; i < total; ++i) run_one(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    const int n = std::min<int>(options.jobs, static_cast<int>(total));
    workers.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) {
      workers.emplace_back([&] {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= total) return;
          run_one(i);
        }
      });
    }
    for (auto& w : workers) w.join();
  }
  return records;
}

namespace {

constexpr const char* kCsvHeader =
    "series,config_index,map_id,family,seed,algo,delta,k_succ,m_budget,w,"
    "solved,length,cells,time_ms,sparse_states,local_searches,failed_local";

std::string format_double(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

std::string format_time_ms(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& r : records) {
    out << r.series << ',' << r.config_index << ',' << r.map_id << ','
        << r.family << ',' << r.seed << ',' << r.algo << ',' << r.delta << ','
        << r.k_succ << ',' << r.m_budget << ',' << format_double(r.w) << ','
        << (r.solved ? 1 : 0) << ',' << r.length << ',' << r.cells << ','
        << format_time_ms(r.time_ms) << ',' << r.sparse_states << ','
        << r.local_searches << ',' << r.failed_local << '\n';
  }
}

std::vector<RunRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty CSV");
  if (split_csv_line(line) != split_csv_line(kCsvHeader))
    throw std::runtime_error("unexpected CSV header");
  std::vector<RunRecord> records;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 17)
      throw std::runtime_error("CSV line " + std::to_string(lineno) +
                               " has " + std::to_string(f.size()) + " fields");
    RunRecord r;
    r.series = f[0];
    r.config_index = std::stoi(f[1]);
    r.map_id = f[2];
    r.family = f[3];
    r.seed = std::stoull(f[4]);
    r.algo = f[5];
    r.delta = std::stoll(f[6]);
    r.k_succ = std::stoi(f[7]);
    r.m_budget = std::stoull(f[8]);
    r.w = std::stod(f[9]);
    r.solved = f[10] == "1";
    r.length = std::stoll(f[11]);
    r.cells = std::stoull(f[12]);
    r.time_ms = std::stod(f[13]);
    r.sparse_states = std::stoull(f[14]);
    r.local_searches = std::stoull(f[15]);
    r.failed_local = std::stoull(f[16]);
    records.push_back(std::move(r));
  }
  return records;
}

namespace {

Cost varying_value_of(const RunRecord& r) {
  if (r.series == "m_series") return static_cast<Cost>(r.m_budget);
  if (r.series == "k_series") return r.k_succ;
  if (r.series == "delta_series") return r.delta;
  throw std::runtime_error("aggregate: unknown series '" + r.series + "'");
}

double median_of(std::vector<double>& v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<SeriesSummary> aggregate(const std::vector<RunRecord>& records) {
  if (records.empty()) throw std::invalid_argument("aggregate: no records");

  struct Group {
    std::uint64_t runs = 0, solved = 0;
    std::uint64_t cells_sum = 0;
    std::int64_t time_us_sum = 0;
    std::int64_t length_sum = 0;
    std::vector<double> cells_vals, time_vals, length_vals;
  };
  std::map<std::pair<std::string, Cost>, Group> groups;

  for (const auto& r : records) {
    Group& g = groups[{r.series, varying_value_of(r)}];
    ++g.runs;
    if (!r.solved) continue;
    ++g.solved;
    g.cells_sum += r.cells;
    g.time_us_sum += std::llround(r.time_ms * 1000.0);
    g.length_sum += r.length;
    g.cells_vals.push_back(static_cast<double>(r.cells));
    g.time_vals.push_back(r.time_ms);
    g.length_vals.push_back(static_cast<double>(r.length));
  }

  static const char* kSeriesOrder[] = {"m_series", "k_series", "delta_series"};
  std::vector<SeriesSummary> result;
  for (const char* name : kSeriesOrder) {
    SeriesSummary summary;
    summary.series = name;
    summary.varying = std::string(name) == "m_series"   ? "m_budget"
                      : std::string(name) == "k_series" ? "k_succ"
                                                        : "delta";
    for (auto& [key, g] : groups) {
      if (key.first != name) continue;
      SummaryRow row;
      row.value = key.second;
      row.runs = g.runs;
      row.solved = g.solved;
      row.solve_rate = g.runs ? static_cast<double>(g.solved) / g.runs : 0.0;
      if (g.solved > 0) {
        row.mean_cells = static_cast<double>(g.cells_sum) / g.solved;
        row.mean_time_ms = static_cast<double>(g.time_us_sum) / 1000.0 / g.solved;
        row.mean_length = static_cast<double>(g.length_sum) / g.solved;
        row.median_cells = median_of(g.cells_vals);
        row.median_time_ms = median_of(g.time_vals);
        row.median_length = median_of(g.length_vals);
      }
      summary.rows.push_back(row);
    }
    if (summary.rows.empty()) continue;
    // Already sorted by value: std::map keys are ordered.
    double best_cells = 0, best_time = 0, best_length = 0;
    for (const auto& row : summary.rows) {
      if (row.solved == 0) continue;
      if (best_cells == 0 || row.mean_cells < best_cells) best_cells = row.mean_cells;
      if (best_time == 0 || row.mean_time_ms < best_time) best_time = row.mean_time_ms;
      if (best_length == 0 || row.mean_length < best_length) best_length = row.mean_length;
    }
    for (auto& row : summary.rows) {
      if (row.solved == 0) continue;
      row.cells_ratio = best_cells > 0 ? row.mean_cells / best_cells : 0.0;
      row.time_ratio = best_time > 0 ? row.mean_time_ms / best_time : 0.0;
      row.length_ratio = best_length > 0 ? row.mean_length / best_length : 0.0;
    }
    result.push_back(std::move(summary));
  }
  return result;
}

void print_summary(std::ostream& out, const std::vector<SeriesSummary>& summaries) {
  for (const auto& s : summaries) {
    out << "series " << s.series << " (varying " << s.varying << ")\n";
    char buf[256];
    std::snprintf(buf, sizeof buf, "%10s %5s %6s %6s %12s %12s %10s %9s %8s %8s %8s\n",
                  s.varying.c_str(), "runs", "solved", "rate", "mean_cells",
                  "mean_ms", "mean_len", "med_len", "cells_x", "time_x", "len_x");
    out << buf;
    for (const auto& r : s.rows) {
      std::snprintf(buf, sizeof buf,
                    "%10lld %5llu %6llu %6.2f %12.1f %12.3f %10.1f %9.1f %8.2f %8.2f %8.3f\n",
                    static_cast<long long>(r.value),
                    static_cast<unsigned long long>(r.runs),
                    static_cast<unsigned long long>(r.solved), r.solve_rate,
                    r.mean_cells, r.mean_time_ms, r.mean_length, r.median_length,
                    r.cells_ratio, r.time_ratio, r.length_ratio);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace gridplan

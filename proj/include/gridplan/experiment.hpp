#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gridplan/mapgen.hpp"
#include "gridplan/rstar.hpp"

namespace gridplan {

/// One experimental series: a set of fixed parameters and an ordered list
/// of values for the varying one.
struct SweepSeries {
  std::string name;      // m_series | k_series | delta_series
  std::string varying;   // m_budget | k_succ | delta
  RStarParams fixed;     // the varying field is overridden per value
  std::vector<Cost> values;
};

/// The three paper sweep series scaled to a task distance. reference_dist
/// is the octile distance between start and goal (5000 reproduces the
/// original value lists); every value is scaled by reference_dist/5000,
/// rounded half up and clamped into its bound. Throws std::invalid_argument
/// when scaling collapses a series to fewer than two distinct values,
/// listing the collapsed points.
std::vector<SweepSeries> default_series(Cost reference_dist);

/// A series point flattened to concrete parameters.
struct SweepConfig {
  std::string series;
  int config_index = 0;  // global index across the series list
  Cost varying_value = 0;
  RStarParams params;
};

/// Expands series into concrete configs with global indices. Configs that
/// fail validate_params are reported to skip_log (one line each) and
/// dropped; pass nullptr to drop silently.
std::vector<SweepConfig> flatten_series(const std::vector<SweepSeries>& series,
                                        std::ostream* skip_log = nullptr);

/// One CSV row of the experiment harness.
struct RunRecord {
  std::string series;
  int config_index = 0;
  std::string map_id;
  std::string family;
  std::uint64_t seed = 0;
  std::string algo;
  Cost delta = 0;
  int k_succ = 0;
  std::uint64_t m_budget = 0;
  double w = 0.0;
  bool solved = false;
  Cost length = 0;
  std::uint64_t cells = 0;
  double time_ms = 0.0;
  std::uint64_t sparse_states = 0;
  std::uint64_t local_searches = 0;
  std::uint64_t failed_local = 0;
};

struct SweepOptions {
  int repetitions = 3;
  std::uint64_t base_seed = 1;
  int jobs = 1;  // worker threads; <= 1 runs inline
};

/// Runs every (map, config, repetition) combination; per-run seeds derive
/// from (base_seed, map_id, config_index, repetition). Failed plans are
/// recorded with solved=false. Record order is canonical (maps outer,
/// then configs, then repetitions) regardless of jobs. corpus_dir is the
/// directory manifest file paths are relative to.
std::vector<RunRecord> run_sweep(const std::vector<CorpusEntry>& corpus,
                                 const std::string& corpus_dir,
                                 const std::vector<SweepSeries>& series,
                                 const SweepOptions& options);

/// CSV with a fixed header, comma separators, \n line endings.
void write_csv(std::ostream& out, const std::vector<RunRecord>& records);
std::vector<RunRecord> read_csv(std::istream& in);

/// Aggregate over one parameter value of one series.
struct SummaryRow {
  Cost value = 0;
  std::uint64_t runs = 0;
  std::uint64_t solved = 0;
  double solve_rate = 0.0;
  double mean_cells = 0.0, median_cells = 0.0;
  double mean_time_ms = 0.0, median_time_ms = 0.0;
  double mean_length = 0.0, median_length = 0.0;
  // Ratios against the best (smallest) mean in the series.
  double cells_ratio = 0.0, time_ratio = 0.0, length_ratio = 0.0;
};

struct SeriesSummary {
  std::string series;
  std::string varying;
  std::vector<SummaryRow> rows;  // sorted by value
};

/// Groups records by (series, varying value); means and medians are over
/// solved runs only. Order-independent: shuffling records does not change
/// the result.
std::vector<SeriesSummary> aggregate(const std::vector<RunRecord>& records);

void print_summary(std::ostream& out, const std::vector<SeriesSummary>& summaries);

}  // namespace gridplan

#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "gridplan/grid.hpp"

namespace gridplan {

/// Heuristic weight as a reduced rational so priorities can be computed
/// in exact integer arithmetic: f = den * g + num * h.
struct HeuristicWeight {
  std::int64_t num = 1;
  std::int64_t den = 1;

  /// Nearest rational with denominator dividing 1000; requires w >= 1.
  static HeuristicWeight of(double w);

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const HeuristicWeight&, const HeuristicWeight&) = default;
};

struct SearchLimits {
  static constexpr std::uint64_t kUnlimited = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t max_expansions = kUnlimited;
};

enum class Outcome { kFound, kBudgetExhausted, kSpaceExhausted };

struct SearchStats {
  std::uint64_t expansions = 0;
  std::uint64_t generated = 0;
  std::uint64_t open_size_final = 0;
  std::uint64_t closed_size_final = 0;
  /// Distinct states ever inserted into OPEN or CLOSED.
  std::uint64_t cells = 0;
  double wall_time_ms = 0.0;
};

struct SearchResult {
  Outcome outcome = Outcome::kSpaceExhausted;
  Path path;      // present iff outcome == kFound
  Cost length = 0;
  SearchStats stats;

  bool found() const { return outcome == Outcome::kFound; }
};

/// Reusable scratch space for repeated searches (open list, per-cell
/// bookkeeping). One instance per thread of execution; the grid may change
/// between calls.
class SearchSpace {
 public:
  /// Best-first search with priority f = g + w*octile(.,goal). One
  /// expansion = one pop plus successor generation; popping the goal ends
  /// the search and is not counted as an expansion. Ties on f prefer the
  /// larger g, then insertion order. Throws std::invalid_argument on
  /// blocked endpoints, s == g, or a zero expansion limit.
  SearchResult weighted_astar(const Grid& grid, CellIndex s, CellIndex g,
                              HeuristicWeight w, SearchLimits limits = {},
                              CornerRule rule = CornerRule::kNeverCut);

 private:
  void prepare(const Grid& grid);

  struct Entry {
    Cost f;
    Cost g;
    std::uint64_t seq;
    std::int32_t idx;
  };
  std::vector<Entry> open_;
  std::vector<Cost> g_;
  std::vector<std::int32_t> parent_;
  std::vector<std::uint32_t> stamp_;
  std::vector<std::uint8_t> closed_;
  std::uint32_t epoch_ = 0;
};

/// One-shot convenience wrappers around SearchSpace.
SearchResult weighted_astar(const Grid& grid, CellIndex s, CellIndex g,
                            HeuristicWeight w, SearchLimits limits = {},
                            CornerRule rule = CornerRule::kNeverCut);

/// weighted_astar with w = 1; the found path is optimal.
SearchResult astar(const Grid& grid, CellIndex s, CellIndex g,
                   CornerRule rule = CornerRule::kNeverCut);

/// Exact shortest-path length under the same move and corner rules, or
/// nullopt when unreachable. Independent of the weighted_astar machinery
/// (plain uniform-cost expansion) so it can serve as a test oracle.
std::optional<Cost> dijkstra_oracle(const Grid& grid, CellIndex s, CellIndex g,
                                    CornerRule rule = CornerRule::kNeverCut);

/// Breadth-first reachability under the same move and corner rules.
bool reachable(const Grid& grid, CellIndex s, CellIndex g,
               CornerRule rule = CornerRule::kNeverCut);

}  // namespace gridplan

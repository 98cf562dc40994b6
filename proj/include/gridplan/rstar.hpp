#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gridplan/grid.hpp"
#include "gridplan/rng.hpp"
#include "gridplan/search.hpp"

namespace gridplan {

/// The tunable triple (delta, K, m) plus local heuristic weight and the
/// budget-escalation factor applied when an AVOID state is retried.
struct RStarParams {
  Cost delta = 0;               // distance between a cell and its successors
  int k_succ = 0;               // successors sampled per expansion
  std::uint64_t m_budget = 0;   // local-search expansion budget
  HeuristicWeight w{3, 1};
  int escalation = 2;

  friend bool operator==(const RStarParams&, const RStarParams&) = default;
};

/// Checks every RStarParams bound; each violated bound is reported with
/// its formula. Empty result means the params are usable.
std::vector<std::string> validate_params(const RStarParams& p);

/// Auto-parameterization from the task endpoints:
///   delta = dist(s,g)/10 rounded to a multiple of c_hv (>= c_hv),
///   K     = max(10, delta/20), m = max(delta/10, delta/5),
/// with K and m clamped into their bounds. Throws std::invalid_argument
/// when s == g.
RStarParams auto_params(CellIndex s, CellIndex g, HeuristicWeight w = {3, 1});

enum class LocalStatus { kNoneNeeded, kPending, kSolved, kFailed };

/// High-level search node: a waypoint cell plus the local path linking it
/// to its predecessor.
struct SparseState {
  CellIndex cell;
  const SparseState* pred = nullptr;  // null for the start state
  Cost g_cost = 0;                    // solved lengths along the chain, octile for unsolved links
  Cost h_cost = 0;
  bool avoid = false;
  LocalStatus local_status = LocalStatus::kPending;
  Path local_path;                    // pred->cell when solved
  std::uint32_t retry_count = 0;

  // Internal: bumped on every key-affecting mutation; OPEN entries carry
  // the stamp they were pushed with and are stale when it differs.
  std::uint32_t stamp = 0;
  bool closed = false;
};

enum class RStarOutcome { kFound, kSpaceExhausted };

struct RStarStats {
  std::uint64_t sparse_states = 0;
  std::uint64_t local_searches = 0;
  std::uint64_t failed_local = 0;
  std::uint64_t local_cells = 0;  // summed over all local runs
  std::uint64_t cells = 0;        // sparse_states + local_cells
  double wall_time_ms = 0.0;
  Cost length = 0;
};

struct RStarResult {
  RStarOutcome outcome = RStarOutcome::kSpaceExhausted;
  Path path;                   // present iff outcome == kFound
  std::vector<Path> segments;  // local paths along the final chain
  RStarStats stats;

  bool found() const { return outcome == RStarOutcome::kFound; }
};

/// Concatenates the local paths along goal_state's predecessor chain,
/// keeping each junction cell once. Throws std::logic_error if any link
/// is unsolved.
Path reconstruct(const SparseState& goal_state);

/// R* plan: sparse best-first search over randomly sampled waypoints.
/// Selection prefers the minimum-f non-AVOID state; AVOID states are
/// considered only when no others remain. A selected state without a
/// solved local path runs WA*(pred -> cell) with budget
/// m * escalation^retry_count; failure marks it AVOID and keeps it in
/// OPEN, proven unreachability discards it. Solved states re-enter OPEN
/// with their exact g and are expanded on a later selection: successors
/// are sampled at distance delta, and the goal is injected whenever it
/// lies within delta. Terminates when the goal is selected with a solved
/// local path, or when OPEN empties.
///
/// When trace is non-null, one line per selection event is written:
///   <step> <i> <j> <f> <g> <avoid?> <event>
/// with f in the integer-scaled priority units and event one of
/// expand|solved|avoid|dead|goal.
RStarResult rstar_plan(const Grid& grid, CellIndex s, CellIndex g,
                       const RStarParams& params, Rng& rng,
                       std::ostream* trace = nullptr,
                       CornerRule rule = CornerRule::kNeverCut);

}  // namespace gridplan

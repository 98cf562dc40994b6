#include "gridplan/rstar.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <ostream>
#include <unordered_map>

#include "gridplan/ring.hpp"

namespace gridplan {

std::vector<std::string> validate_params(const RStarParams& p) {
  std::vector<std::string> violations;
  const Cost k_upper = (6 * p.delta + 9) / 10;      // ceil(6·Δ/10)
  const Cost m_lower = (p.delta + 5) / 10;          // round(Δ/10)
  if (p.delta < kCardinalCost)
    violations.push_back("Δ = " + std::to_string(p.delta) + " violates Δ ≥ c_hv = 10");
  if (p.k_succ < 3)
    violations.push_back("K = " + std::to_string(p.k_succ) + " violates K ≥ 3");
  else if (p.delta >= kCardinalCost && p.k_succ > k_upper)
    violations.push_back("K = " + std::to_string(p.k_succ) +
                         " violates K ≤ 6·Δ/10 = " + std::to_string(k_upper));
  if (p.delta >= kCardinalCost && p.m_budget < static_cast<std::uint64_t>(m_lower))
    violations.push_back("m = " + std::to_string(p.m_budget) +
                         " violates m ≥ Δ/10 = " + std::to_string(m_lower));
  if (p.w.den < 1 || p.w.num < p.w.den)
    violations.push_back("w = " + std::to_string(p.w.value()) + " violates w ≥ 1");
  if (p.escalation < 2)
    violations.push_back("escalation = " + std::to_string(p.escalation) +
                         " violates escalation ≥ 2");
  return violations;
}

RStarParams auto_params(CellIndex s, CellIndex g, HeuristicWeight w) {
  if (s == g) throw std::invalid_argument("auto_params: start equals goal");
  const Cost dist = octile_dist(s, g);
  RStarParams p;
  p.delta = std::max(kCardinalCost, ((dist + 50) / 100) * 10);
  const Cost k_upper = (6 * p.delta + 9) / 10;
  p.k_succ = static_cast<int>(
      std::clamp<Cost>(std::max<Cost>(10, (p.delta + 10) / 20), 3, k_upper));
  const Cost m_lower = (p.delta + 5) / 10;
  p.m_budget = static_cast<std::uint64_t>(std::max(m_lower, (2 * p.delta + 5) / 10));
  p.w = w;
  p.escalation = 2;
  return p;
}

Path reconstruct(const SparseState& goal_state) {
  std::vector<const SparseState*> chain;
  for (const SparseState* s = &goal_state; s != nullptr; s = s->pred)
    chain.push_back(s);
  std::reverse(chain.begin(), chain.end());

  Path out;
  out.cells.push_back(chain.front()->cell);
  for (std::size_t k = 1; k < chain.size(); ++k) {
    const SparseState* st = chain[k];
    if (st->local_status != LocalStatus::kSolved)
      throw std::logic_error("reconstruct: unsolved link in predecessor chain");
    const Path& seg = st->local_path;
    if (seg.size() < 2 || !(seg.front() == chain[k - 1]->cell) ||
        !(seg.back() == st->cell))
      throw std::logic_error("reconstruct: local path does not join its endpoints");
    out.cells.insert(out.cells.end(), seg.cells.begin() + 1, seg.cells.end());
  }
  return out;
}

namespace {

const char* event_name(int e) {
  static const char* names[] = {"expand", "solved", "avoid", "dead", "goal"};
  return names[e];
}

}  // namespace

RStarResult rstar_plan(const Grid& grid, CellIndex s, CellIndex g,
                       const RStarParams& params, Rng& rng, std::ostream* trace,
                       CornerRule rule) {
  {
    const auto violations = validate_params(params);
    if (!violations.empty()) {
      std::string msg = "rstar_plan: invalid params:";
      for (const auto& v : violations) msg += " " + v + ";";
      throw std::invalid_argument(msg);
    }
  }
  if (!grid.traversable(s) || !grid.traversable(g))
    throw std::invalid_argument("rstar_plan: endpoints must be traversable");
  if (s == g) throw std::invalid_argument("rstar_plan: start equals goal");

  const auto t0 = std::chrono::steady_clock::now();

  RStarResult result;
  auto& stats = result.stats;

  // Every predecessor chain starts at s, so cells outside s's connected
  // component can never carry a local path. Filtering sampled successors
  // against the component up front avoids escalating local searches that
  // are doomed to exhaust the whole map.
  std::vector<std::uint8_t> in_component(
      static_cast<std::size_t>(grid.cell_count()), 0);
  {
    std::deque<CellIndex> frontier{s};
    in_component[grid.flat(s)] = 1;
    while (!frontier.empty()) {
      const CellIndex c = frontier.front();
      frontier.pop_front();
      for_each_neighbor(grid, c, rule, [&](CellIndex n, Cost) {
        auto& seen = in_component[grid.flat(n)];
        if (!seen) {
          seen = 1;
          frontier.push_back(n);
        }
      });
    }
  }

  std::deque<SparseState> arena;  // stable addresses
  std::unordered_map<std::int32_t, SparseState*> by_cell;
  SearchSpace local_space;

  struct Entry {
    std::uint8_t avoid;
    Cost f;
    Cost g;
    std::uint64_t seq;
    SparseState* state;
    std::uint32_t stamp;
  };
  // push_heap keeps the best entry last-popped... we order so the *top* is
  // the minimum key (avoid, f, -g, seq); "less" therefore means worse.
  auto heap_less = [](const Entry& a, const Entry& b) {
    if (a.avoid != b.avoid) return a.avoid > b.avoid;
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    return a.seq > b.seq;
  };
  std::vector<Entry> open;
  std::uint64_t seq = 0;
  std::uint64_t live_nonavoid = 0;  // OPEN states with avoid == false

  auto push = [&](SparseState* st) {
    const Cost f = params.w.den * st->g_cost + params.w.num * st->h_cost;
    open.push_back({st->avoid ? std::uint8_t{1} : std::uint8_t{0}, f, st->g_cost,
                    seq++, st, st->stamp});
    std::push_heap(open.begin(), open.end(), heap_less);
  };

  auto make_state = [&](CellIndex cell, const SparseState* pred, Cost g_cost,
                        LocalStatus status) {
    arena.push_back(SparseState{cell, pred, g_cost, octile_dist(cell, g), false,
                                status, Path{}, 0, 0, false});
    SparseState* st = &arena.back();
    by_cell[grid.flat(cell)] = st;
    ++live_nonavoid;
    push(st);
    return st;
  };

  make_state(s, nullptr, 0, LocalStatus::kNoneNeeded);

  const std::uint64_t budget_cap = static_cast<std::uint64_t>(grid.cell_count());
  auto local_budget = [&](const SparseState* st) {
    std::uint64_t b = params.m_budget;
    const std::uint64_t esc = static_cast<std::uint64_t>(params.escalation);
    for (std::uint32_t r = 0; r < st->retry_count; ++r) {
      if (b >= budget_cap / esc) {
        b = budget_cap;
        break;
      }
      b *= esc;
    }
    // At the cap the whole reachable space fits, so run to a definitive
    // found / space_exhausted outcome instead of another timeout.
    SearchLimits lim;
    if (b < budget_cap) lim.max_expansions = b;
    return lim;
  };

  std::uint64_t step = 0;
  auto emit = [&](const Entry& e, int event) {
    if (trace) {
      *trace << step << ' ' << e.state->cell.i << ' ' << e.state->cell.j << ' '
             << e.f << ' ' << e.g << ' ' << int(e.avoid) << ' '
             << event_name(event) << '\n';
    }
  };

  auto finish = [&](RStarOutcome outcome) {
    stats.sparse_states = arena.size();
    stats.cells = stats.sparse_states + stats.local_cells;
    stats.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    result.outcome = outcome;
    return result;
  };

  while (!open.empty()) {
    std::pop_heap(open.begin(), open.end(), heap_less);
    const Entry top = open.back();
    open.pop_back();
    SparseState* st = top.state;
    if (st->closed || top.stamp != st->stamp) continue;  // stale
    if (top.avoid && live_nonavoid > 0)
      throw std::logic_error("rstar_plan: AVOID state selected over non-AVOID");
    ++step;

    if (st->local_status == LocalStatus::kPending ||
        st->local_status == LocalStatus::kFailed) {
      const SearchResult local = local_space.weighted_astar(
          grid, st->pred->cell, st->cell, params.w, local_budget(st), rule);
      ++stats.local_searches;
      stats.local_cells += local.stats.cells;
      if (local.found()) {
        st->local_path = local.path;
        st->g_cost = st->pred->g_cost + local.length;
        st->local_status = LocalStatus::kSolved;
        if (st->avoid) {
          st->avoid = false;
          ++live_nonavoid;
        }
        ++st->stamp;
        push(st);
        emit(top, 1);
      } else if (local.outcome == Outcome::kBudgetExhausted) {
        ++stats.failed_local;
        if (!st->avoid) {
          st->avoid = true;
          --live_nonavoid;
        }
        ++st->retry_count;
        st->local_status = LocalStatus::kFailed;
        ++st->stamp;
        push(st);
        emit(top, 2);
      } else {
        // Provably unreachable from pred: drop the state so a later
        // expansion may recreate the cell with a different predecessor.
        ++stats.failed_local;
        st->local_status = LocalStatus::kFailed;
        if (!st->avoid) --live_nonavoid;
        ++st->stamp;
        by_cell.erase(grid.flat(st->cell));
        emit(top, 3);
      }
      continue;
    }

    if (st->cell == g) {
      result.path = reconstruct(*st);
      for (const SparseState* p = st; p->pred != nullptr; p = p->pred)
        result.segments.push_back(p->local_path);
      std::reverse(result.segments.begin(), result.segments.end());
      stats.length = st->g_cost;
      emit(top, 4);
      return finish(RStarOutcome::kFound);
    }

    // Expansion: retire the state, sample successors, inject the goal
    // when it is within delta.
    st->closed = true;
    --live_nonavoid;
    emit(top, 0);

    std::vector<CellIndex> succs =
        sample_successors(grid, st->cell, params.delta, params.k_succ, rng);
    if (octile_dist(st->cell, g) <= params.delta &&
        std::find(succs.begin(), succs.end(), g) == succs.end()) {
      succs.push_back(g);
    }
    for (CellIndex b : succs) {
      if (!in_component[grid.flat(b)]) continue;  // provably unreachable
      const Cost cand_g = st->g_cost + octile_dist(st->cell, b);
      const auto it = by_cell.find(grid.flat(b));
      if (it == by_cell.end()) {
        make_state(b, st, cand_g, LocalStatus::kPending);
        continue;
      }
      SparseState* ex = it->second;
      if (ex->closed || cand_g >= ex->g_cost) continue;
      // Better route to an existing waypoint: re-parent and restart its
      // local task.
      ex->pred = st;
      ex->g_cost = cand_g;
      ex->local_status = LocalStatus::kPending;
      ex->local_path = Path{};
      ex->retry_count = 0;
      if (ex->avoid) {
        ex->avoid = false;
        ++live_nonavoid;
      }
      ++ex->stamp;
      push(ex);
    }
  }
  return finish(RStarOutcome::kSpaceExhausted);
}

}  // namespace gridplan

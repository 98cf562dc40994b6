#include "gridplan/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <numeric>
#include <queue>

namespace gridplan {

HeuristicWeight HeuristicWeight::of(double w) {
  const std::int64_t scaled = std::llround(w * 1000.0);
  if (scaled < 1000) throw std::invalid_argument("heuristic weight must be >= 1");
  const std::int64_t g = std::gcd(scaled, std::int64_t{1000});
  return {scaled / g, 1000 / g};
}

void SearchSpace::prepare(const Grid& grid) {
  const std::size_t n = static_cast<std::size_t>(grid.cell_count());
  if (stamp_.size() < n) {
    g_.resize(n);
    parent_.resize(n);
    stamp_.assign(n, 0);
    closed_.resize(n);
    epoch_ = 0;
  }
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  open_.clear();
}

SearchResult SearchSpace::weighted_astar(const Grid& grid, CellIndex s,
                                         CellIndex g, HeuristicWeight w,
                                         SearchLimits limits, CornerRule rule) {
  if (!grid.traversable(s) || !grid.traversable(g))
    throw std::invalid_argument("weighted_astar: endpoints must be traversable");
  if (s == g) throw std::invalid_argument("weighted_astar: start equals goal");
  if (w.num < w.den || w.den < 1)
    throw std::invalid_argument("weighted_astar: weight must be >= 1");
  if (limits.max_expansions == 0)
    throw std::invalid_argument("weighted_astar: expansion limit must be >= 1");

  const auto t0 = std::chrono::steady_clock::now();
  prepare(grid);

  auto heap_less = [](const Entry& a, const Entry& b) {
    // std::push_heap keeps the *largest* on top, so "less" = worse:
    // higher f, then smaller g, then later insertion.
    if (a.f != b.f) return a.f > b.f;
    if (a.g != b.g) return a.g < b.g;
    return a.seq > b.seq;
  };
  std::uint64_t seq = 0;
  auto push = [&](std::int32_t idx, Cost gval, Cost hval) {
    open_.push_back({w.den * gval + w.num * hval, gval, seq++, idx});
    std::push_heap(open_.begin(), open_.end(), heap_less);
  };

  const std::int32_t goal_idx = grid.flat(g);
  std::uint64_t distinct = 0;
  std::uint64_t closed_count = 0;

  SearchResult result;
  auto& st = result.stats;

  {
    const std::int32_t si = grid.flat(s);
    stamp_[si] = epoch_;
    g_[si] = 0;
    parent_[si] = -1;
    closed_[si] = 0;
    ++distinct;
    push(si, 0, octile_dist(s, g));
  }

  auto finish = [&](Outcome outcome) {
    st.closed_size_final = closed_count;
    st.open_size_final = distinct - closed_count;
    st.cells = distinct;
    st.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    result.outcome = outcome;
    return result;
  };

  while (!open_.empty()) {
    std::pop_heap(open_.begin(), open_.end(), heap_less);
    const Entry top = open_.back();
    open_.pop_back();
    const std::int32_t idx = top.idx;
    if (closed_[idx] || top.g != g_[idx]) continue;  // stale (lazy deletion)

    if (idx == goal_idx) {
      closed_[idx] = 1;
      ++closed_count;
      // Walk parents back to s.
      std::vector<CellIndex> cells;
      for (std::int32_t at = idx; at != -1; at = parent_[at])
        cells.push_back({at / grid.cols(), at % grid.cols()});
      std::reverse(cells.begin(), cells.end());
      result.path.cells = std::move(cells);
      result.length = g_[idx];
      return finish(Outcome::kFound);
    }
    if (st.expansions >= limits.max_expansions)
      return finish(Outcome::kBudgetExhausted);

    closed_[idx] = 1;
    ++closed_count;
    ++st.expansions;

    const CellIndex cur{idx / grid.cols(), idx % grid.cols()};
    const Cost cur_g = g_[idx];
    for_each_neighbor(grid, cur, rule, [&](CellIndex n, Cost step) {
      const std::int32_t ni = grid.flat(n);
      const Cost ng = cur_g + step;
      if (stamp_[ni] != epoch_) {
        stamp_[ni] = epoch_;
        g_[ni] = ng;
        parent_[ni] = idx;
        closed_[ni] = 0;
        ++distinct;
        ++st.generated;
        push(ni, ng, octile_dist(n, g));
      } else if (!closed_[ni] && ng < g_[ni]) {
        g_[ni] = ng;
        parent_[ni] = idx;
        ++st.generated;
        push(ni, ng, octile_dist(n, g));
      }
    });
  }
  return finish(Outcome::kSpaceExhausted);
}

SearchResult weighted_astar(const Grid& grid, CellIndex s, CellIndex g,
                            HeuristicWeight w, SearchLimits limits,
                            CornerRule rule) {
  SearchSpace space;
  return space.weighted_astar(grid, s, g, w, limits, rule);
}

SearchResult astar(const Grid& grid, CellIndex s, CellIndex g, CornerRule rule) {
  SearchSpace space;
  return space.weighted_astar(grid, s, g, {1, 1}, {}, rule);
}

// The oracle deliberately shares nothing with SearchSpace: its own queue,
// its own relaxation loop, its own corner-rule check.
std::optional<Cost> dijkstra_oracle(const Grid& grid, CellIndex s, CellIndex g,
                                    CornerRule rule) {
  if (!grid.traversable(s) || !grid.traversable(g))
    throw std::invalid_argument("dijkstra_oracle: endpoints must be traversable");
  if (s == g) return Cost{0};

  constexpr Cost kInf = std::numeric_limits<Cost>::max();
  std::vector<Cost> dist(static_cast<std::size_t>(grid.cell_count()), kInf);
  using Item = std::pair<Cost, std::int32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;

  dist[grid.flat(s)] = 0;
  queue.push({0, grid.flat(s)});
  const std::int32_t goal = grid.flat(g);

  static constexpr int kOff[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                     {0, 1},   {1, -1}, {1, 0},  {1, 1}};
  while (!queue.empty()) {
    const auto [d, idx] = queue.top();
    queue.pop();
    if (d != dist[idx]) continue;
    if (idx == goal) return d;
    const CellIndex c{idx / grid.cols(), idx % grid.cols()};
    for (const auto& off : kOff) {
      const CellIndex n{c.i + off[0], c.j + off[1]};
      if (!grid.traversable(n)) continue;
      const bool diag = off[0] != 0 && off[1] != 0;
      if (diag && rule == CornerRule::kNeverCut &&
          (!grid.traversable({c.i + off[0], c.j}) ||
           !grid.traversable({c.i, c.j + off[1]})))
        continue;
      const Cost nd = d + (diag ? kDiagonalCost : kCardinalCost);
      const std::int32_t ni = grid.flat(n);
      if (nd < dist[ni]) {
        dist[ni] = nd;
        queue.push({nd, ni});
      }
    }
  }
  return std::nullopt;
}

bool reachable(const Grid& grid, CellIndex s, CellIndex g, CornerRule rule) {
  if (!grid.traversable(s) || !grid.traversable(g)) return false;
  if (s == g) return true;
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(grid.cell_count()), 0);
  std::deque<CellIndex> frontier{s};
  seen[grid.flat(s)] = 1;
  const std::int32_t goal = grid.flat(g);
  while (!frontier.empty()) {
    const CellIndex c = frontier.front();
    frontier.pop_front();
    bool hit = false;
    for_each_neighbor(grid, c, rule, [&](CellIndex n, Cost) {
      const std::int32_t ni = grid.flat(n);
      if (seen[ni]) return;
      if (ni == goal) hit = true;
      seen[ni] = 1;
      frontier.push_back(n);
    });
    if (hit) return true;
  }
  return false;
}

}  // namespace gridplan

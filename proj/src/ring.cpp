#include "gridplan/ring.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <set>
#include <unordered_map>

namespace gridplan {

namespace {

// Angle order on offsets (di, dj) mapped to math coordinates x = dj,
// y = -di: counterclockwise from the positive x axis. Pure integer
// comparison, so the canonical order is platform-independent.
bool angle_less(CellIndex a, CellIndex b) {
  const long long ax = a.j, ay = -static_cast<long long>(a.i);
  const long long bx = b.j, by = -static_cast<long long>(b.i);
  const int ha = (ay < 0 || (ay == 0 && ax < 0)) ? 1 : 0;
  const int hb = (by < 0 || (by == 0 && bx < 0)) ? 1 : 0;
  if (ha != hb) return ha < hb;
  const long long cross = ax * by - ay * bx;
  if (cross != 0) return cross > 0;
  return std::pair(a.i, a.j) < std::pair(b.i, b.j);  // identical angle
}

RingOffsets rasterize(int radius) {
  std::set<std::pair<int, int>> points;
  auto plot8 = [&](int x, int y) {
    points.insert({y, x});
    points.insert({y, -x});
    points.insert({-y, x});
    points.insert({-y, -x});
    points.insert({x, y});
    points.insert({x, -y});
    points.insert({-x, y});
    points.insert({-x, -y});
  };
  // Integer midpoint circle, decision variable d = 3 - 2r.
  int x = 0;
  int y = radius;
  int d = 3 - 2 * radius;
  while (x <= y) {
    plot8(x, y);
    if (d <= 0) {
      d += 4 * x + 6;
    } else {
      d += 4 * (x - y) + 10;
      --y;
    }
    ++x;
  }

  RingOffsets ring;
  ring.radius = radius;
  ring.offsets.reserve(points.size());
  for (const auto& [i, j] : points) ring.offsets.push_back({i, j});
  std::sort(ring.offsets.begin(), ring.offsets.end(), angle_less);
  return ring;
}

}  // namespace

const RingOffsets& enumerate_ring(int radius) {
  if (radius < 1) throw std::invalid_argument("enumerate_ring: radius must be >= 1");
  static std::mutex mutex;
  static std::unordered_map<int, std::unique_ptr<RingOffsets>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[radius];
  if (!slot) slot = std::make_unique<RingOffsets>(rasterize(radius));
  return *slot;
}

int ring_radius_for(Cost delta) {
  const Cost r = (delta + kCardinalCost / 2) / kCardinalCost;
  return static_cast<int>(std::max<Cost>(r, 1));
}

std::vector<CellIndex> ring_cells(const Grid& grid, CellIndex center, int radius) {
  if (!grid.in_bounds(center))
    throw std::invalid_argument("ring_cells: center out of bounds");
  const RingOffsets& ring = enumerate_ring(radius);
  std::vector<CellIndex> out;
  out.reserve(ring.offsets.size());
  for (CellIndex off : ring.offsets) {
    const CellIndex c{center.i + off.i, center.j + off.j};
    if (grid.traversable(c)) out.push_back(c);
  }
  return out;
}

std::vector<CellIndex> sample_successors(const Grid& grid, CellIndex center,
                                         Cost delta, int k, Rng& rng) {
  if (delta < kCardinalCost)
    throw std::invalid_argument("sample_successors: delta must be >= c_hv");
  if (k < 1) throw std::invalid_argument("sample_successors: k must be >= 1");
  std::vector<CellIndex> cells = ring_cells(grid, center, ring_radius_for(delta));
  const std::size_t want = std::min<std::size_t>(k, cells.size());
  // Partial Fisher-Yates over the canonically ordered ring.
  for (std::size_t k2 = 0; k2 < want; ++k2) {
    const std::size_t pick = k2 + rng.next_below(cells.size() - k2);
    std::swap(cells[k2], cells[pick]);
  }
  cells.resize(want);
  return cells;
}

}  // namespace gridplan

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "gridplan/ring.hpp"

using namespace gridplan;

TEST_CASE("radius-1 ring is the four axis offsets in canonical order") {
  const auto& ring = enumerate_ring(1);
  const std::vector<CellIndex> expected{{0, 1}, {-1, 0}, {0, -1}, {1, 0}};
  CHECK(ring.offsets == expected);
}

TEST_CASE("radius-5 ring has 28 offsets") {
  const auto& ring = enumerate_ring(5);
  CHECK(ring.offsets.size() == 28);
  CHECK(ring.offsets.size() >= 25);
  CHECK(ring.offsets.size() <= 30);
}

TEST_CASE("ring cardinality stays within [5r, 6r]") {
  for (int r = 3; r <= 100; ++r) {
    const auto n = enumerate_ring(r).offsets.size();
    CHECK(n >= std::size_t(5 * r));
    CHECK(n <= std::size_t(6 * r));
  }
}

TEST_CASE("rings are 8-way symmetric and hug the radius") {
  for (int r : {1, 2, 3, 7, 20, 63}) {
    const auto& ring = enumerate_ring(r);
    std::set<std::pair<int, int>> set;
    for (const auto o : ring.offsets) set.insert({o.i, o.j});
    CHECK(set.size() == ring.offsets.size());  // deduplicated
    for (const auto& [i, j] : set) {
      CHECK(set.count({j, i}) == 1);
      CHECK(set.count({-i, j}) == 1);
      CHECK(set.count({i, -j}) == 1);
      const double err = std::abs(std::sqrt(double(i) * i + double(j) * j) - r);
      CHECK(err <= 1.0);
    }
  }
}

TEST_CASE("enumerate_ring rejects radius < 1 and is deterministic") {
  CHECK_THROWS_AS(enumerate_ring(0), std::invalid_argument);
  CHECK(enumerate_ring(9).offsets == enumerate_ring(9).offsets);
}

TEST_CASE("ring_cells clips at the map corner") {
  const Grid grid = Grid::open(8, 8);
  const auto cells = ring_cells(grid, {0, 0}, 1);
  const std::vector<CellIndex> expected{{0, 1}, {1, 0}};
  CHECK(cells == expected);
}

TEST_CASE("ring_cells on an open interior keeps every offset") {
  const Grid grid = Grid::open(64, 64);
  CHECK(ring_cells(grid, {32, 32}, 5).size() == enumerate_ring(5).offsets.size());
}

TEST_CASE("ring_cells is empty when the ring is fully blocked") {
  std::vector<std::uint8_t> blocked(11 * 11, 1);
  blocked[5 * 11 + 5] = 0;
  const Grid grid(11, 11, blocked);
  CHECK(ring_cells(grid, {5, 5}, 5).empty());
}

TEST_CASE("sample_successors clamps, stays in the ring, and is seeded") {
  const Grid grid = Grid::open(64, 64);
  const CellIndex center{32, 32};

  Rng rng(5);
  const auto everything = sample_successors(grid, center, 50, 1000, rng);
  const auto ring = ring_cells(grid, center, 5);
  CHECK(everything.size() == ring.size());
  auto as_set = [](std::vector<CellIndex> v) {
    std::set<std::pair<int, int>> s;
    for (const auto c : v) s.insert({c.i, c.j});
    return s;
  };
  CHECK(as_set(everything) == as_set(ring));

  Rng rng_a(17), rng_b(17), rng_c(18);
  const auto a = sample_successors(grid, center, 50, 3, rng_a);
  const auto b = sample_successors(grid, center, 50, 3, rng_b);
  const auto c = sample_successors(grid, center, 50, 3, rng_c);
  CHECK(a == b);       // same seed, same sample
  CHECK(a.size() == 3);
  CHECK(as_set(a).size() == 3);  // distinct
  const auto ring_set = as_set(ring);
  for (const auto cell : a) CHECK(ring_set.count({cell.i, cell.j}) == 1);
  CHECK(c != a);  // different stream almost surely differs

  CHECK_THROWS_AS(sample_successors(grid, center, 5, 3, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_successors(grid, center, 50, 0, rng), std::invalid_argument);
}

TEST_CASE("sampled cells sit in the octile distance band of the ring") {
  const Grid grid = Grid::open(256, 256);
  const CellIndex center{128, 128};
  for (int r : {1, 2, 5, 12, 40}) {
    for (const auto cell : ring_cells(grid, center, r)) {
      const Cost d = octile_dist(center, cell);
      CHECK(d >= kCardinalCost * (r - 1));
      CHECK(d <= kDiagonalCost * r);
    }
  }
}

#pragma once

#include <vector>

#include "gridplan/grid.hpp"
#include "gridplan/rng.hpp"

namespace gridplan {

/// Discrete circle of a given radius (in cells) around the origin,
/// produced by the midpoint circle rasterizer. Offsets are deduplicated,
/// closed under the 8 dihedral symmetries, and stored in canonical order:
/// counterclockwise starting due east (rows grow downward).
struct RingOffsets {
  int radius = 0;
  std::vector<CellIndex> offsets;
};

/// Rasterizes (and memoizes) the ring of the given radius. Thread-safe;
/// the returned reference stays valid for the program lifetime. Throws
/// std::invalid_argument for radius < 1.
const RingOffsets& enumerate_ring(int radius);

/// Radius in cells for a successor distance delta: round(delta / c_hv),
/// at least 1.
int ring_radius_for(Cost delta);

/// Ring offsets translated to center, clipped to in-bounds traversable
/// cells; keeps the canonical enumeration order. May be empty.
std::vector<CellIndex> ring_cells(const Grid& grid, CellIndex center, int radius);

/// Uniform sample without replacement of min(k, available) ring cells at
/// distance delta from center. Deterministic for a fixed (grid, center,
/// delta, k, rng state). Throws std::invalid_argument if delta < c_hv or
/// k < 1.
std::vector<CellIndex> sample_successors(const Grid& grid, CellIndex center,
                                         Cost delta, int k, Rng& rng);

}  // namespace gridplan

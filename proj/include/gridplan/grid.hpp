#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridplan {

/// Integer cost units of the grid metric: every cardinal step costs 10,
/// every diagonal step costs 14. All lengths and heuristic values are in
/// this scale, which keeps results bit-reproducible.
using Cost = std::int64_t;

inline constexpr Cost kCardinalCost = 10;
inline constexpr Cost kDiagonalCost = 14;

/// (row, column) position; origin is the top-left corner of the grid.
struct CellIndex {
  int i = 0;
  int j = 0;

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// Whether a diagonal step may pass between blocked orthogonal cells.
/// kNeverCut (the default everywhere) requires both orthogonally adjacent
/// cells of a diagonal move to be traversable.
enum class CornerRule { kNeverCut, kAllowCut };

/// Octile (diagonal) distance between two cells. Grid-independent.
Cost octile_dist(CellIndex a, CellIndex b);

/// Immutable traversability field of rows x cols cells.
class Grid {
 public:
  Grid(int rows, int cols, std::vector<std::uint8_t> blocked);

  /// All-traversable grid.
  static Grid open(int rows, int cols);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::int64_t cell_count() const { return std::int64_t{rows_} * cols_; }

  bool in_bounds(CellIndex c) const {
    return c.i >= 0 && c.i < rows_ && c.j >= 0 && c.j < cols_;
  }
  /// Row-major flat index; c must be in bounds.
  int flat(CellIndex c) const { return c.i * cols_ + c.j; }

  bool blocked(CellIndex c) const { return blocked_[flat(c)] != 0; }
  bool traversable(CellIndex c) const { return in_bounds(c) && !blocked(c); }

  std::int64_t blocked_count() const { return blocked_count_; }
  double blocked_fraction() const {
    return static_cast<double>(blocked_count_) / static_cast<double>(cell_count());
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int rows_;
  int cols_;
  std::vector<std::uint8_t> blocked_;
  std::int64_t blocked_count_;
};

namespace detail {
// Row-major order over the 8 move offsets; fixed for determinism.
inline constexpr int kNeighborOffsets[8][2] = {
    {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1}};
}  // namespace detail

/// Invokes fn(neighbor, step_cost) for every legal move out of c, in
/// row-major offset order. c itself is not checked.
template <typename Fn>
void for_each_neighbor(const Grid& grid, CellIndex c, CornerRule rule, Fn&& fn) {
  for (const auto& off : detail::kNeighborOffsets) {
    const CellIndex n{c.i + off[0], c.j + off[1]};
    if (!grid.traversable(n)) continue;
    const bool diagonal = off[0] != 0 && off[1] != 0;
    if (diagonal && rule == CornerRule::kNeverCut &&
        (!grid.traversable({c.i + off[0], c.j}) ||
         !grid.traversable({c.i, c.j + off[1]}))) {
      continue;
    }
    fn(n, diagonal ? kDiagonalCost : kCardinalCost);
  }
}

/// All legal moves out of c. Throws std::invalid_argument if c is out of
/// bounds or blocked.
std::vector<CellIndex> neighbors8(const Grid& grid, CellIndex c,
                                  CornerRule rule = CornerRule::kNeverCut);

/// Ordered sequence of cells; consecutive cells must be 8-adjacent.
struct Path {
  std::vector<CellIndex> cells;

  bool empty() const { return cells.empty(); }
  std::size_t size() const { return cells.size(); }
  CellIndex front() const { return cells.front(); }
  CellIndex back() const { return cells.back(); }

  friend bool operator==(const Path&, const Path&) = default;
};

/// Sum of per-step costs; 0 for empty or single-cell paths. Throws
/// std::invalid_argument naming the first step whose endpoints are not
/// 8-adjacent.
Cost path_length(const Path& p);

/// Full validity check: adjacency, traversability of every cell, and the
/// corner rule for diagonal steps. On failure returns false and, when why
/// is non-null, stores a diagnostic.
bool is_valid_path(const Grid& grid, const Path& p,
                   CornerRule rule = CornerRule::kNeverCut,
                   std::string* why = nullptr);

/// Raised by load_map on malformed input; line() is 1-based.
class MapParseError : public std::runtime_error {
 public:
  MapParseError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses the grid map text format:
///   type octile
///   height <M>
///   width <N>
///   map
///   <M rows of N glyphs, '.' = traversable, '@' = blocked>
/// Trailing whitespace on lines and trailing blank lines are tolerated.
Grid load_map(const std::string& text);

/// Emits the exact format accepted by load_map.
std::string save_map(const Grid& grid);

Grid load_map_file(const std::string& path);
void save_map_file(const Grid& grid, const std::string& path);

}  // namespace gridplan

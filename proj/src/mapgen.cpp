#include "gridplan/mapgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "gridplan/search.hpp"

namespace gridplan {

std::string family_name(ObstacleFamily f) {
  return f == ObstacleFamily::kRects ? "rects" : "tetris";
}

std::optional<ObstacleFamily> parse_family(const std::string& name) {
  if (name == "rects") return ObstacleFamily::kRects;
  if (name == "tetris") return ObstacleFamily::kTetris;
  return std::nullopt;
}

GenConfig GenConfig::scaled(ObstacleFamily family, int rows, int cols,
                            double threshold, std::uint64_t seed) {
  GenConfig cfg;
  cfg.rows = rows;
  cfg.cols = cols;
  cfg.blocked_threshold = threshold;
  cfg.family = family;
  cfg.seed = seed;
  const double factor = static_cast<double>(std::min(rows, cols)) / 501.0;
  const int rect_max = std::max(1, static_cast<int>(std::lround(30.0 * factor)));
  cfg.rect = {1, rect_max, 1, rect_max};
  cfg.tetromino = {1, std::max(1, static_cast<int>(std::lround(15.0 * factor)))};
  return cfg;
}

namespace {

// The 7 one-sided tetromino base shapes as (row, col) cells.
using Shape = std::array<CellIndex, 4>;
constexpr std::array<Shape, 7> kTetrominoes = {{
    {{{0, 0}, {0, 1}, {0, 2}, {0, 3}}},  // I
    {{{0, 0}, {0, 1}, {1, 0}, {1, 1}}},  // O
    {{{0, 0}, {0, 1}, {0, 2}, {1, 1}}},  // T
    {{{0, 1}, {0, 2}, {1, 0}, {1, 1}}},  // S
    {{{0, 0}, {0, 1}, {1, 1}, {1, 2}}},  // Z
    {{{0, 0}, {1, 0}, {2, 0}, {2, 1}}},  // L
    {{{0, 1}, {1, 1}, {2, 1}, {2, 0}}},  // J
}};

std::vector<CellIndex> rotated_shape(const Shape& base, int quarter_turns) {
  std::vector<CellIndex> cells(base.begin(), base.end());
  for (int t = 0; t < quarter_turns; ++t) {
    for (auto& c : cells) c = {c.j, -c.i};
    int min_i = cells[0].i, min_j = cells[0].j;
    for (const auto& c : cells) {
      min_i = std::min(min_i, c.i);
      min_j = std::min(min_j, c.j);
    }
    for (auto& c : cells) c = {c.i - min_i, c.j - min_j};
  }
  return cells;
}

struct StampShape {
  std::vector<CellIndex> cells;  // relative to the stamp origin
  int height = 0;
  int width = 0;
};

StampShape pick_rect(const RectSpec& spec, Rng& rng) {
  int w = rng.next_int(spec.w_min, spec.w_max);
  int h = rng.next_int(spec.h_min, spec.h_max);
  if (rng.next_below(2) == 1) std::swap(w, h);  // uniform axis orientation
  StampShape shape;
  shape.height = h;
  shape.width = w;
  shape.cells.reserve(std::size_t(w) * h);
  for (int r = 0; r < h; ++r)
    for (int c = 0; c < w; ++c) shape.cells.push_back({r, c});
  return shape;
}

StampShape pick_tetromino(const TetrominoSpec& spec, Rng& rng) {
  const auto& base = kTetrominoes[rng.next_below(kTetrominoes.size())];
  const int turns = static_cast<int>(rng.next_below(4));
  const int scale = rng.next_int(spec.scale_min, spec.scale_max);
  StampShape shape;
  for (CellIndex c : rotated_shape(base, turns)) {
    for (int dr = 0; dr < scale; ++dr)
      for (int dc = 0; dc < scale; ++dc)
        shape.cells.push_back({c.i * scale + dr, c.j * scale + dc});
  }
  for (const auto& c : shape.cells) {
    shape.height = std::max(shape.height, c.i + 1);
    shape.width = std::max(shape.width, c.j + 1);
  }
  return shape;
}

}  // namespace

Grid generate(const GenConfig& config, Rng& rng, std::vector<ObstacleStamp>* log) {
  if (config.rows <= 0 || config.cols <= 0)
    throw std::invalid_argument("generate: dimensions must be positive");
  if (config.blocked_threshold < 0.0 || config.blocked_threshold >= 1.0)
    throw std::invalid_argument("generate: threshold must be in [0, 1)");
  if (config.family == ObstacleFamily::kRects) {
    const auto& r = config.rect;
    if (r.w_min < 1 || r.w_min > r.w_max || r.h_min < 1 || r.h_min > r.h_max)
      throw std::invalid_argument("generate: bad rectangle size range");
  } else {
    const auto& t = config.tetromino;
    if (t.scale_min < 1 || t.scale_min > t.scale_max)
      throw std::invalid_argument("generate: bad tetromino scale range");
  }

  const std::int64_t total = std::int64_t{config.rows} * config.cols;
  std::vector<std::uint8_t> blocked(static_cast<std::size_t>(total), 0);
  std::int64_t blocked_count = 0;

  const std::int64_t max_placements = 64 * total;
  int consecutive_failures = 0;
  std::int64_t placements = 0;

  while (static_cast<double>(blocked_count) <
         config.blocked_threshold * static_cast<double>(total)) {
    if (placements++ > max_placements)
      throw GenerationError("generate: threshold not reached after placement cap");
    const StampShape shape = config.family == ObstacleFamily::kRects
                                 ? pick_rect(config.rect, rng)
                                 : pick_tetromino(config.tetromino, rng);
    if (shape.height > config.rows || shape.width > config.cols) {
      if (++consecutive_failures >= 1000)
        throw GenerationError("generate: obstacles do not fit the grid");
      continue;
    }
    consecutive_failures = 0;
    const int oi = static_cast<int>(rng.next_below(config.rows - shape.height + 1));
    const int oj = static_cast<int>(rng.next_below(config.cols - shape.width + 1));
    ObstacleStamp stamp;
    for (CellIndex c : shape.cells) {
      const CellIndex abs{oi + c.i, oj + c.j};
      auto& cell = blocked[std::size_t(abs.i) * config.cols + abs.j];
      if (!cell) {
        cell = 1;
        ++blocked_count;
      }
      if (log) stamp.cells.push_back(abs);
    }
    if (log) log->push_back(std::move(stamp));
  }
  return Grid(config.rows, config.cols, std::move(blocked));
}

std::optional<TaskSpec> place_task(const Grid& grid, Cost target_dist, Rng& rng,
                                   CornerRule rule) {
  const bool horizontal = target_dist == kCardinalCost * (grid.cols() - 1);
  const bool vertical = target_dist == kCardinalCost * (grid.rows() - 1);
  if (!horizontal && !vertical)
    throw std::invalid_argument(
        "place_task: target_dist must span opposite grid edges");

  const int lanes = horizontal ? grid.rows() : grid.cols();
  std::vector<int> order(static_cast<std::size_t>(lanes));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);

  for (int lane : order) {
    const CellIndex s = horizontal ? CellIndex{lane, 0} : CellIndex{0, lane};
    const CellIndex g = horizontal ? CellIndex{lane, grid.cols() - 1}
                                   : CellIndex{grid.rows() - 1, lane};
    if (!grid.traversable(s) || !grid.traversable(g)) continue;
    if (!reachable(grid, s, g, rule)) continue;
    return TaskSpec{s, g, target_dist};
  }
  return std::nullopt;
}

std::string format_manifest(const std::vector<CorpusEntry>& entries) {
  std::ostringstream out;
  for (const auto& e : entries) {
    out << e.map_id << ' ' << e.family << ' ' << e.seed << ' ' << e.rows << ' '
        << e.cols << ' ';
    char frac[32];
    std::snprintf(frac, sizeof frac, "%.6f", e.blocked_fraction);
    out << frac << ' ' << e.s.i << ' ' << e.s.j << ' ' << e.g.i << ' ' << e.g.j
        << ' ' << e.file << '\n';
  }
  return out.str();
}

std::vector<CorpusEntry> parse_manifest(const std::string& text) {
  std::vector<CorpusEntry> entries;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    std::istringstream fields(line);
    CorpusEntry e;
    if (!(fields >> e.map_id >> e.family >> e.seed >> e.rows >> e.cols >>
          e.blocked_fraction >> e.s.i >> e.s.j >> e.g.i >> e.g.j >> e.file)) {
      throw std::runtime_error("manifest line " + std::to_string(lineno) +
                               " is malformed");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<CorpusEntry> load_manifest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open manifest: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_manifest(buf.str());
}

}  // namespace gridplan

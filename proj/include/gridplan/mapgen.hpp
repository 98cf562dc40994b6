#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gridplan/grid.hpp"
#include "gridplan/rng.hpp"

namespace gridplan {

enum class ObstacleFamily { kRects, kTetris };

std::string family_name(ObstacleFamily f);
std::optional<ObstacleFamily> parse_family(const std::string& name);

struct RectSpec {
  int w_min = 1, w_max = 30;
  int h_min = 1, h_max = 30;
};

struct TetrominoSpec {
  int scale_min = 1, scale_max = 15;
};

struct GenConfig {
  int rows = 501;
  int cols = 501;
  double blocked_threshold = 0.30;
  ObstacleFamily family = ObstacleFamily::kRects;
  RectSpec rect;            // used when family == kRects
  TetrominoSpec tetromino;  // used when family == kTetris
  std::uint64_t seed = 0;

  /// Obstacle size ranges proportional to the grid (the stock ranges are
  /// tuned for 501x501).
  static GenConfig scaled(ObstacleFamily family, int rows, int cols,
                          double threshold, std::uint64_t seed);
};

/// One placed obstacle: the absolute cells it blocks.
struct ObstacleStamp {
  std::vector<CellIndex> cells;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Places random obstacles one at a time until the blocked fraction
/// reaches the threshold. Overlaps are allowed; each obstacle lies fully
/// inside the grid. Deterministic for a fixed rng state. When log is
/// non-null every stamp is appended to it. Throws GenerationError when
/// the threshold cannot be reached.
Grid generate(const GenConfig& config, Rng& rng,
              std::vector<ObstacleStamp>* log = nullptr);

struct TaskSpec {
  CellIndex s;
  CellIndex g;
  Cost target_dist = 0;
};

/// Picks a uniformly random row (or column) whose opposite-edge endpoints
/// are traversable and mutually reachable. target_dist must equal
/// c_hv*(cols-1) for a left/right task or c_hv*(rows-1) for a top/bottom
/// task. Returns nullopt when no placement exists, so the caller can
/// regenerate the map.
std::optional<TaskSpec> place_task(const Grid& grid, Cost target_dist, Rng& rng,
                                   CornerRule rule = CornerRule::kNeverCut);

/// One corpus-manifest record:
///   <map_id> <family> <seed> <rows> <cols> <blocked_fraction>
///   <s_i> <s_j> <g_i> <g_j> <file>
/// with file relative to the manifest's directory.
struct CorpusEntry {
  std::string map_id;
  std::string family;
  std::uint64_t seed = 0;
  int rows = 0;
  int cols = 0;
  double blocked_fraction = 0.0;
  CellIndex s;
  CellIndex g;
  std::string file;
};

std::string format_manifest(const std::vector<CorpusEntry>& entries);
std::vector<CorpusEntry> parse_manifest(const std::string& text);
std::vector<CorpusEntry> load_manifest_file(const std::string& path);

}  // namespace gridplan

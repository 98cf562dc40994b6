#include "gridplan/grid.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

namespace gridplan {

Cost octile_dist(CellIndex a, CellIndex b) {
  const Cost di = std::abs(a.i - b.i);
  const Cost dj = std::abs(a.j - b.j);
  const Cost m = std::min(di, dj);
  return kDiagonalCost * m + kCardinalCost * (di + dj - 2 * m);
}

Grid::Grid(int rows, int cols, std::vector<std::uint8_t> blocked)
    : rows_(rows), cols_(cols), blocked_(std::move(blocked)) {
  if (rows_ <= 0 || cols_ <= 0)
    throw std::invalid_argument("grid dimensions must be positive");
  if (static_cast<std::int64_t>(blocked_.size()) != cell_count())
    throw std::invalid_argument("blocked vector size does not match dimensions");
  blocked_count_ = std::count_if(blocked_.begin(), blocked_.end(),
                                 [](std::uint8_t b) { return b != 0; });
}

Grid Grid::open(int rows, int cols) {
  return Grid(rows, cols,
              std::vector<std::uint8_t>(std::size_t(rows) * std::size_t(cols), 0));
}

std::vector<CellIndex> neighbors8(const Grid& grid, CellIndex c, CornerRule rule) {
  if (!grid.traversable(c))
    throw std::invalid_argument("neighbors8: cell out of bounds or blocked");
  std::vector<CellIndex> out;
  out.reserve(8);
  for_each_neighbor(grid, c, rule, [&](CellIndex n, Cost) { out.push_back(n); });
  return out;
}

namespace {

bool adjacent8(CellIndex a, CellIndex b) {
  const int di = std::abs(a.i - b.i);
  const int dj = std::abs(a.j - b.j);
  return di <= 1 && dj <= 1 && (di + dj) > 0;
}

Cost step_cost(CellIndex a, CellIndex b) {
  return (a.i != b.i && a.j != b.j) ? kDiagonalCost : kCardinalCost;
}

}  // namespace

Cost path_length(const Path& p) {
  Cost total = 0;
  for (std::size_t k = 1; k < p.cells.size(); ++k) {
    if (!adjacent8(p.cells[k - 1], p.cells[k])) {
      throw std::invalid_argument("path step " + std::to_string(k - 1) +
                                  " is not between 8-adjacent cells");
    }
    total += step_cost(p.cells[k - 1], p.cells[k]);
  }
  return total;
}

bool is_valid_path(const Grid& grid, const Path& p, CornerRule rule,
                   std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  for (std::size_t k = 0; k < p.cells.size(); ++k) {
    if (!grid.traversable(p.cells[k]))
      return fail("cell " + std::to_string(k) + " is blocked or out of bounds");
    if (k == 0) continue;
    const CellIndex a = p.cells[k - 1];
    const CellIndex b = p.cells[k];
    if (!adjacent8(a, b)) return fail("step " + std::to_string(k - 1) + " is not 8-adjacent");
    if (a.i != b.i && a.j != b.j && rule == CornerRule::kNeverCut &&
        (!grid.traversable({a.i, b.j}) || !grid.traversable({b.i, a.j}))) {
      return fail("step " + std::to_string(k - 1) + " cuts a blocked corner");
    }
  }
  return true;
}

MapParseError::MapParseError(int line, const std::string& what)
    : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
      line_(line) {}

namespace {

std::string rstrip(std::string s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.pop_back();
  return s;
}

// Parses "<key> <positive int>", e.g. "height 501".
int parse_dim_line(const std::string& line, const char* key, int lineno) {
  std::istringstream in(line);
  std::string word;
  long long value = -1;
  if (!(in >> word) || word != key || !(in >> value) || value <= 0 ||
      value > 1'000'000 || (in >> word)) {
    throw MapParseError(lineno, std::string("expected '") + key + " <N>'");
  }
  return static_cast<int>(value);
}

}  // namespace

Grid load_map(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(rstrip(std::move(line)));
  }
  auto line_at = [&](std::size_t idx) -> const std::string& {
    static const std::string empty;
    return idx < lines.size() ? lines[idx] : empty;
  };

  if (line_at(0) != "type octile") throw MapParseError(1, "expected 'type octile'");
  const int rows = parse_dim_line(line_at(1), "height", 2);
  const int cols = parse_dim_line(line_at(2), "width", 3);
  if (line_at(3) != "map") throw MapParseError(4, "expected 'map'");

  std::vector<std::uint8_t> blocked(std::size_t(rows) * std::size_t(cols), 0);
  for (int r = 0; r < rows; ++r) {
    const int lineno = 5 + r;
    const std::string& row = line_at(std::size_t(4) + r);
    if (static_cast<int>(row.size()) != cols) {
      throw MapParseError(lineno, "row has " + std::to_string(row.size()) +
                                      " glyphs, expected " + std::to_string(cols));
    }
    for (int c = 0; c < cols; ++c) {
      if (row[c] == '@') {
        blocked[std::size_t(r) * cols + c] = 1;
      } else if (row[c] != '.') {
        throw MapParseError(lineno, std::string("unknown glyph '") + row[c] + "'");
      }
    }
  }
  for (std::size_t k = std::size_t(4) + rows; k < lines.size(); ++k) {
    if (!lines[k].empty())
      throw MapParseError(static_cast<int>(k + 1), "unexpected content after map rows");
  }
  return Grid(rows, cols, std::move(blocked));
}

std::string save_map(const Grid& grid) {
  std::string out;
  out.reserve(std::size_t(grid.rows() + 4) * std::size_t(grid.cols() + 1));
  out += "type octile\n";
  out += "height " + std::to_string(grid.rows()) + "\n";
  out += "width " + std::to_string(grid.cols()) + "\n";
  out += "map\n";
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c)
      out += grid.blocked({r, c}) ? '@' : '.';
    out += '\n';
  }
  return out;
}

Grid load_map_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open map file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_map(buf.str());
}

void save_map_file(const Grid& grid, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write map file: " + path);
  out << save_map(grid);
}

}  // namespace gridplan

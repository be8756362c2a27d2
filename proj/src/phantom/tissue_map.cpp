#include "nrics/phantom/tissue_map.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "nrics/core/error.hpp"

namespace nrics {

namespace {

std::string where(const Grid2D& g, std::size_t n) {
  const auto c = g.cell(n);
  return "cell " + std::to_string(n) + " (i=" + std::to_string(c.i) + ", j=" +
         std::to_string(c.j) + ")";
}

}  // namespace

TissueMap::TissueMap(Grid2D grid, std::vector<Tissue> labels, std::vector<double> fat_percent)
    : grid_(grid), labels_(std::move(labels)), fat_(std::move(fat_percent)) {
  if (labels_.size() != grid_.size() || fat_.size() != grid_.size()) {
    throw ConfigurationError("tissue map arrays do not match grid size");
  }
  for (std::size_t n = 0; n < labels_.size(); ++n) {
    const auto lab = static_cast<std::uint8_t>(labels_[n]);
    if (lab > 3) throw InvariantError("unknown tissue label at " + where(grid_, n));
    const double p = fat_[n];
    if (labels_[n] == Tissue::breast) {
      if (!std::isfinite(p) || p < 0.0 || p > 100.0) {
        throw InvariantError("fat percentage outside [0, 100] at " + where(grid_, n));
      }
      const auto c = grid_.cell(n);
      if (c.i == 0 || c.j == 0 || c.i == grid_.nx() - 1 || c.j == grid_.ny() - 1) {
        throw InvariantError("breast tissue touches the grid edge at " + where(grid_, n));
      }
      const CellIndex nb[4] = {{c.i - 1, c.j}, {c.i + 1, c.j}, {c.i, c.j - 1}, {c.i, c.j + 1}};
      for (const auto& q : nb) {
        if (labels_[grid_.linear(q)] == Tissue::bolus) {
          throw InvariantError("breast tissue borders bolus (open skin contour) at " +
                               where(grid_, n));
        }
      }
    } else if (p != -1.0) {
      throw InvariantError("fat percentage given on non-breast " + where(grid_, n));
    }
  }
}

CellMask TissueMap::mask_of(Tissue t) const {
  CellMask m(labels_.size());
  for (std::size_t n = 0; n < labels_.size(); ++n) {
    if (labels_[n] == t) m.set(n);
  }
  return m;
}

CellMask TissueMap::breast_mask() const { return mask_of(Tissue::breast); }

TissueMap TissueMap::with_fat(std::vector<double> fat_percent) const {
  return {grid_, labels_, std::move(fat_percent)};
}

TissueMap load_tissue_map(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open phantom file " + path.string());

  std::string line;
  std::size_t lineno = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError(path.string() + ":" + std::to_string(lineno) + ": " + msg);
  };

  if (!next_line()) throw fail("missing header");
  int nx = 0, ny = 0;
  double dx = 0, dy = 0, ox = 0, oy = 0;
  {
    std::istringstream hs(line);
    if (!(hs >> nx >> ny >> dx >> dy >> ox >> oy)) {
      throw fail("header must be: nx ny dx dy origin_x origin_y");
    }
  }
  Grid2D grid(nx, ny, dx, dy, {ox, oy});

  std::vector<Tissue> labels(grid.size());
  std::vector<double> fat(grid.size());
  for (std::size_t n = 0; n < grid.size(); ++n) {
    if (!next_line()) throw fail("expected " + std::to_string(grid.size()) + " cell records");
    std::istringstream rs(line);
    int lab = -1;
    double p = 0.0;
    if (!(rs >> lab >> p)) throw fail("malformed cell record");
    if (lab < 0 || lab > 3) throw fail("label code must be 0..3");
    labels[n] = static_cast<Tissue>(lab);
    fat[n] = p;
  }
  if (next_line()) throw fail("trailing data after cell records");
  return TissueMap(grid, std::move(labels), std::move(fat));
}

void save_tissue_map(const TissueMap& t, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write phantom file " + path.string());
  const auto& g = t.grid();
  out << "# nrics phantom: nx ny dx dy origin_x origin_y, then `label fat%` per cell (x fastest)\n"
      << "# labels: 0=bolus 1=skin 2=muscle 3=breast; fat% is -1 off breast\n";
  out << std::setprecision(17) << g.nx() << ' ' << g.ny() << ' ' << g.dx() << ' ' << g.dy() << ' '
      << g.origin().x << ' ' << g.origin().y << '\n';
  out << std::setprecision(6);
  for (std::size_t n = 0; n < g.size(); ++n) {
    out << static_cast<int>(t.label(n)) << ' ';
    if (t.label(n) == Tissue::breast) {
      out << t.fat_percent(n);
    } else {
      out << -1;
    }
    out << '\n';
  }
  if (!out) throw Error("failed writing phantom file " + path.string());
}

}  // namespace nrics

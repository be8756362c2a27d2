#include "nrics/harness/render.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "nrics/core/error.hpp"

namespace nrics {

namespace {

void diverging(double t, std::uint8_t* px) {
  // t in [-1, 1]: blue through white to red
  t = std::clamp(t, -1.0, 1.0);
  const double a = std::abs(t);
  const auto fade = static_cast<std::uint8_t>(std::lround(255.0 * (1.0 - a)));
  if (t >= 0) {
    px[0] = 255;
    px[1] = fade;
    px[2] = fade;
  } else {
    px[0] = fade;
    px[1] = fade;
    px[2] = 255;
  }
}

bool on_edge(const Grid2D& g, const CellMask& m, CellIndex c) {
  if (!m[g.linear(c)]) return false;
  const CellIndex nb[4] = {{c.i - 1, c.j}, {c.i + 1, c.j}, {c.i, c.j - 1}, {c.i, c.j + 1}};
  for (const auto& d : nb) {
    if (!g.in_bounds(d) || !m[g.linear(d)]) return true;
  }
  return false;
}

}  // namespace

Raster rasterize(const ContrastImage& x, const RenderOverlay& overlay) {
  const Grid2D& g = x.grid();
  const int pw = g.nx() * kPixelsPerCell;
  const int ph = g.ny() * kPixelsPerCell;
  Raster r{2 * pw + kPanelGap, ph, {}};
  r.rgb.assign(static_cast<std::size_t>(r.width) * r.height * 3, 255);

  const auto dense = x.to_grid();
  double scale[2] = {0.0, 0.0};
  for (const auto& v : dense) {
    scale[0] = std::max(scale[0], std::abs(v.real()));
    scale[1] = std::max(scale[1], std::abs(v.imag()));
  }

  auto paint = [&](int panel, CellIndex c, const std::uint8_t* col, bool border_only) {
    const int x0 = panel * (pw + kPanelGap) + c.i * kPixelsPerCell;
    const int y0 = (g.ny() - 1 - c.j) * kPixelsPerCell;
    for (int dy = 0; dy < kPixelsPerCell; ++dy) {
      for (int dx = 0; dx < kPixelsPerCell; ++dx) {
        if (border_only && dy > 0 && dy < kPixelsPerCell - 1 && dx > 0 && dx < kPixelsPerCell - 1) {
          continue;
        }
        std::uint8_t* px = &r.rgb[3 * (static_cast<std::size_t>(y0 + dy) * r.width + x0 + dx)];
        px[0] = col[0];
        px[1] = col[1];
        px[2] = col[2];
      }
    }
  };

  for (int panel = 0; panel < 2; ++panel) {
    for (std::size_t n = 0; n < dense.size(); ++n) {
      const double v = panel == 0 ? dense[n].real() : dense[n].imag();
      if (v == 0.0 || scale[panel] == 0.0) continue;
      std::uint8_t col[3];
      diverging(v / scale[panel], col);
      paint(panel, g.cell(n), col, false);
    }
  }
  for (int y = 0; y < r.height; ++y) {
    for (int k = 0; k < kPanelGap; ++k) {
      std::uint8_t* px = &r.rgb[3 * (static_cast<std::size_t>(y) * r.width + pw + k)];
      px[0] = px[1] = px[2] = 160;
    }
  }

  const std::uint8_t green[3] = {0, 150, 0};
  const std::uint8_t black[3] = {0, 0, 0};
  const std::uint8_t ant[3] = {255, 170, 0};
  for (int panel = 0; panel < 2; ++panel) {
    for (std::size_t n = 0; n < g.size(); ++n) {
      const CellIndex c = g.cell(n);
      if (overlay.breast.size() == g.size() && on_edge(g, overlay.breast, c)) {
        paint(panel, c, green, true);
      }
      if (overlay.lesion.size() == g.size() && on_edge(g, overlay.lesion, c)) {
        paint(panel, c, black, true);
      }
    }
    for (const auto& a : overlay.antennas) {
      if (g.in_bounds(a)) paint(panel, a, ant, false);
    }
  }
  return r;
}

void write_png(const Raster& r, const std::filesystem::path& path) {
  FILE* fp = std::fopen(path.string().c_str(), "wb");
  if (!fp) throw Error("cannot write " + path.string());
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
    throw Error("PNG encoding failed for " + path.string());
  }
  png_init_io(png, fp);
  png_set_IHDR(png, info, static_cast<png_uint_32>(r.width), static_cast<png_uint_32>(r.height), 8,
               PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (int y = 0; y < r.height; ++y) {
    png_write_row(png, const_cast<png_bytep>(r.pixel(0, y)));
  }
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  if (std::fclose(fp) != 0) throw Error("cannot write " + path.string());
}

void write_contrast_csv(const ContrastImage& x, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "cell,real,imag\n" << std::setprecision(17);
  const auto cells = x.cells();
  const auto v = x.values();
  for (std::size_t k = 0; k < cells.size(); ++k) {
    out << cells[k] << ',' << v[k].real() << ',' << v[k].imag() << '\n';
  }
  if (!out) throw Error("cannot write " + path.string());
}

ContrastImage load_contrast_csv(const std::filesystem::path& path, const Grid2D& grid) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  if (line != "cell,real,imag") throw ParseError(path.string() + ":1: unexpected header");
  CellMask support(grid.size());
  std::vector<std::pair<std::size_t, cplx>> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::size_t n = 0;
    double re = 0, im = 0;
    char c1 = 0, c2 = 0;
    if (!(ss >> n >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',' || n >= grid.size() ||
        support[n]) {
      throw ParseError(path.string() + ":" + std::to_string(lineno) + ": bad record");
    }
    support.set(n);
    rows.emplace_back(n, cplx(re, im));
  }
  std::sort(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.first < b.first; });
  std::vector<cplx> x;
  for (const auto& r : rows) x.push_back(r.second);
  return ContrastImage(grid, std::move(support), std::move(x));
}

void render_image(const ContrastImage& x, const std::filesystem::path& path,
                  const RenderOverlay& overlay) {
  write_png(rasterize(x, overlay), path);
  auto csv = path;
  csv.replace_extension(".csv");
  write_contrast_csv(x, csv);
}

}  // namespace nrics

#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "nrics/core/permittivity.hpp"

namespace nrics {

struct RenderOverlay {
  std::vector<CellIndex> antennas;
  /// Drawn as contours when non-empty.
  CellMask breast;
  CellMask lesion;
};

struct Raster {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> rgb;
  const std::uint8_t* pixel(int x, int y) const { return &rgb[3 * (static_cast<std::size_t>(y) * width + x)]; }
};

inline constexpr int kPixelsPerCell = 4;
inline constexpr int kPanelGap = 8;

/// Real part on the left, imaginary on the right, each on a symmetric
/// blue-white-red scale; +y points up.
Raster rasterize(const ContrastImage& x, const RenderOverlay& overlay = {});

/// Writes `path` as PNG plus the raw values next to it with a .csv extension.
void render_image(const ContrastImage& x, const std::filesystem::path& path,
                  const RenderOverlay& overlay = {});

void write_png(const Raster& r, const std::filesystem::path& path);

/// CSV `cell,real,imag` with linear cell indices.
void write_contrast_csv(const ContrastImage& x, const std::filesystem::path& path);
/// The support is the set of listed cells.
ContrastImage load_contrast_csv(const std::filesystem::path& path, const Grid2D& grid);

}  // namespace nrics

#include "nrics/phantom/generator.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace nrics {

namespace {

// Separable Gaussian blur with mirrored borders.
std::vector<double> blur(const std::vector<double>& in, int nx, int ny, double sigma) {
  const int radius = static_cast<int>(std::ceil(4.0 * sigma));
  std::vector<double> w(2 * radius + 1);
  double sum = 0.0;
  for (int k = -radius; k <= radius; ++k) sum += w[k + radius] = std::exp(-0.5 * k * k / (sigma * sigma));
  for (auto& v : w) v /= sum;

  auto mirror = [](int k, int n) {
    while (k < 0 || k >= n) k = k < 0 ? -k - 1 : 2 * n - k - 1;
    return k;
  };
  std::vector<double> tmp(in.size()), out(in.size());
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) acc += w[k + radius] * in[j * nx + mirror(i + k, nx)];
      tmp[j * nx + i] = acc;
    }
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) acc += w[k + radius] * tmp[mirror(j + k, ny) * nx + i];
      out[j * nx + i] = acc;
    }
  return out;
}

}  // namespace

std::vector<Point2> reference_antennas() {
  return {{0.039, 0.088}, {0.069, 0.082}, {0.039, 0.012},
          {0.069, 0.018}, {0.109, 0.050}, {0.094, 0.070}};
}

TissueMap make_reference_phantom(const PhantomGeometry& g, std::uint64_t seed) {
  const int nx = g.physical_nx + 2 * g.pml_cells;
  const int ny = g.physical_ny + 2 * g.pml_cells;
  const Grid2D grid(nx, ny, g.cell, g.cell,
                    {g.cell / 2 - g.pml_cells * g.cell, g.cell / 2 - g.pml_cells * g.cell});

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<double> texture(grid.size());
  for (auto& v : texture) v = normal(rng);
  texture = blur(texture, nx, ny, g.texture_correlation_cells);
  double mean = 0.0, var = 0.0;
  for (double v : texture) mean += v;
  mean /= texture.size();
  for (double v : texture) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / texture.size());

  std::vector<Tissue> labels(grid.size(), Tissue::bolus);
  std::vector<double> fat(grid.size(), -1.0);
  const double a = g.semi_axis_x, b = g.semi_axis_y;
  const double ai = a - g.skin_thickness, bi = b - g.skin_thickness;
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const auto p = grid.center(n);
    const double u = p.x - g.chest_wall_x;
    const double v = p.y - g.breast_center_y;
    if (u < 0.0) {
      labels[n] = Tissue::muscle;
      continue;
    }
    if ((u / a) * (u / a) + (v / b) * (v / b) >= 1.0) continue;
    if ((u / ai) * (u / ai) + (v / bi) * (v / bi) < 1.0) {
      labels[n] = Tissue::breast;
      const double gx = p.x - g.gland_center.x, gy = p.y - g.gland_center.y;
      const double gland = std::exp(-(gx * gx + gy * gy) / (2.0 * g.gland_sigma * g.gland_sigma));
      const double pct = g.fat_baseline - g.gland_depth * gland +
                         g.texture_amplitude * (texture[n] - mean) / sd;
      fat[n] = std::clamp(pct, 0.0, 100.0);
    } else {
      labels[n] = Tissue::skin;
    }
  }
  return TissueMap(grid, std::move(labels), std::move(fat));
}

}  // namespace nrics

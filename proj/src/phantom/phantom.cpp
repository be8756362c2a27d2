#include "nrics/phantom/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nrics/core/error.hpp"

namespace nrics {

cplx composite_permittivity(double fat_percent, double omega, const DebyeTissue& fat,
                            const DebyeTissue& fibro) {
  if (!std::isfinite(fat_percent) || fat_percent < 0.0 || fat_percent > 100.0) {
    throw DomainError("fat percentage must lie in [0, 100]");
  }
  if (!(omega > 0.0)) throw DomainError("composite permittivity needs omega > 0");
  const double q = fat_percent / 100.0;
  return q * fat.evaluate(omega) + (1.0 - q) * fibro.evaluate(omega);
}

TissueMap corrupt_fat_map(const TissueMap& t, double amplitude, std::uint64_t seed) {
  if (!(amplitude >= 0.0)) throw DomainError("corruption amplitude must be >= 0");
  std::vector<double> fat(t.fat_percent().begin(), t.fat_percent().end());
  if (amplitude == 0.0) return t.with_fat(std::move(fat));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> noise(-amplitude, amplitude);
  for (std::size_t n = 0; n < fat.size(); ++n) {
    if (t.label(n) != Tissue::breast) continue;
    fat[n] = std::clamp(fat[n] + noise(rng), 0.0, 100.0);
  }
  return t.with_fat(std::move(fat));
}

ComplexPermittivityMap build_background(const TissueMap& t, double omega,
                                        const TissueLibrary& lib) {
  lib.validate();
  const cplx bolus = lib.bolus.evaluate(omega);
  const cplx skin = lib.skin.evaluate(omega);
  const cplx muscle = lib.muscle.evaluate(omega);

  std::vector<cplx> eps(t.grid().size());
  for (std::size_t n = 0; n < eps.size(); ++n) {
    switch (t.label(n)) {
      case Tissue::bolus: eps[n] = bolus; break;
      case Tissue::skin: eps[n] = skin; break;
      case Tissue::muscle: eps[n] = muscle; break;
      case Tissue::breast:
        eps[n] = composite_permittivity(t.fat_percent(n), omega, lib.fat, lib.fibroglandular);
        break;
    }
  }
  return {t.grid(), omega, std::move(eps)};
}

ComplexPermittivityMap build_bolus_only(const Grid2D& grid, double omega,
                                        const TissueLibrary& lib) {
  return ComplexPermittivityMap::uniform(grid, omega, lib.bolus.evaluate(omega));
}

std::vector<std::size_t> rasterize_disk(const Grid2D& grid, Point2 center, double radius) {
  std::vector<std::size_t> cells;
  const double r2 = radius * radius;
  for (std::size_t n = 0; n < grid.size(); ++n) {
    const auto p = grid.center(n);
    const double ddx = p.x - center.x;
    const double ddy = p.y - center.y;
    if (ddx * ddx + ddy * ddy <= r2) cells.push_back(n);
  }
  return cells;
}

LesionInsertion insert_lesion(const TissueMap& t, const ComplexPermittivityMap& eps_map,
                              const LesionSpec& lesion, double omega) {
  if (!(t.grid() == eps_map.grid())) throw ConfigurationError("lesion: grid mismatch");
  if (!(lesion.radius > 0.0)) throw PlacementError("lesion radius must be positive");
  lesion.tissue.validate();

  // The whole disk, not only its rasterized cells, must sit in breast tissue:
  // sample the rim and the centre.
  const auto& g = t.grid();
  auto inside_breast = [&](Point2 p) {
    auto c = g.nearest_cell(p);
    return c && t.label(g.linear(*c)) == Tissue::breast;
  };
  constexpr int kRimSamples = 64;
  bool ok = inside_breast(lesion.center);
  for (int s = 0; ok && s < kRimSamples; ++s) {
    const double a = 2.0 * 3.14159265358979323846 * s / kRimSamples;
    ok = inside_breast({lesion.center.x + lesion.radius * std::cos(a),
                        lesion.center.y + lesion.radius * std::sin(a)});
  }
  auto cells = rasterize_disk(g, lesion.center, lesion.radius);
  for (auto n : cells) ok = ok && t.label(n) == Tissue::breast;
  if (!ok) throw PlacementError("lesion disk extends outside breast tissue");

  LesionInsertion out{eps_map.with_cells(cells, lesion.tissue.evaluate(omega)), cells, {}};
  if (cells.empty()) {
    out.warning = "lesion radius too small: no cell centre inside the disk";
  }
  return out;
}

}  // namespace nrics

#include <cmath>

#include "doctest.h"
#include "nrics/core/antenna.hpp"
#include "nrics/core/error.hpp"
#include "nrics/core/frequency.hpp"
#include "nrics/core/permittivity.hpp"

using namespace nrics;

TEST_CASE("grid indexing round-trips") {
  Grid2D g(12, 9, 1e-3, 2e-3, {0.5, -1.0});
  CHECK(g.size() == 108);
  CHECK(g.cell_area() == doctest::Approx(2e-6));
  for (std::size_t n = 0; n < g.size(); ++n) CHECK(g.linear(g.cell(n)) == n);
  CHECK(g.linear({3, 2}) == 2 * 12 + 3);
  const auto c = g.center(CellIndex{3, 2});
  CHECK(c.x == doctest::Approx(0.503));
  CHECK(c.y == doctest::Approx(-0.996));
  CHECK(g.nearest_cell({0.5031, -0.9961}) == CellIndex{3, 2});
  CHECK_FALSE(g.nearest_cell({-1.0, 0.0}).has_value());
  CHECK_THROWS_AS(Grid2D(4, 12, 1e-3, 1e-3), ConfigurationError);
  CHECK_THROWS_AS(Grid2D(12, 12, 0.0, 1e-3), ConfigurationError);
}

TEST_CASE("cell mask") {
  CellMask m(10);
  m.set(3);
  m.set(7);
  CHECK(m.count() == 2);
  CHECK(m.indices() == std::vector<std::size_t>{3, 7});
}

TEST_CASE("frequency set") {
  const auto f = FrequencySet::default_experiment();
  REQUIRE(f.size() == 3);
  CHECK(f.hz(0) == 500e6);
  CHECK(f.omega(2) == doctest::Approx(2 * M_PI * 700e6));
  CHECK(f.center_omega() == doctest::Approx(2 * M_PI * 600e6));
  CHECK_THROWS_AS(FrequencySet({6e8, 5e8}), ConfigurationError);
  CHECK_THROWS_AS(FrequencySet({-1.0}), ConfigurationError);
  CHECK_THROWS_AS(FrequencySet({}), ConfigurationError);
}

TEST_CASE("antenna cells") {
  Grid2D g(40, 40, 1e-3, 1e-3);
  AntennaArray a({{0.020, 0.020}, {0.030, 0.010}});
  const auto c = a.cells(g, 5);
  CHECK(c[0] == CellIndex{20, 20});
  CHECK_THROWS_AS(AntennaArray({{0.002, 0.02}}).cells(g, 5), ConfigurationError);
  CHECK_THROWS_AS(AntennaArray({{0.02, 0.02}, {0.0201, 0.0201}}).cells(g, 5), ConfigurationError);
}

TEST_CASE("permittivity map enforces passivity") {
  Grid2D g(8, 8, 1e-3, 1e-3);
  CHECK_NOTHROW(ComplexPermittivityMap::uniform(g, 1e9, {1.0, 0.0}));
  CHECK_THROWS_AS(ComplexPermittivityMap::uniform(g, 1e9, {0.5, 0.0}), InvariantError);
  CHECK_THROWS_AS(ComplexPermittivityMap::uniform(g, 1e9, {4.0, -0.1}), InvariantError);
  CHECK_THROWS_AS(ComplexPermittivityMap::uniform(g, -1.0, {4.0, 0.0}), ConfigurationError);
}

TEST_CASE("contrast and permittivity are inverse maps") {
  Grid2D g(8, 8, 1e-3, 1e-3);
  const double w = 1e9;
  std::vector<cplx> eb(g.size()), e(g.size());
  for (std::size_t n = 0; n < g.size(); ++n) {
    eb[n] = {5.0 + 0.1 * n, 0.3 * (n % 5)};
    e[n] = {7.0 + 0.05 * n, 1.0 + 0.2 * (n % 3)};
  }
  ComplexPermittivityMap mb(g, w, eb), me(g, w, e);
  CellMask sup(g.size());
  for (std::size_t n = 10; n < 30; ++n) sup.set(n);
  const auto x = contrast_from_permittivity(me, mb, sup);
  REQUIRE(x.size() == 20);
  CHECK(std::abs(x.values()[0] - (e[10] - eb[10]) / eb[10]) < 1e-15);
  const auto back = permittivity_from_contrast(x, mb);
  for (std::size_t n = 10; n < 30; ++n) CHECK(std::abs(back[n] - e[n]) < 1e-12);
  CHECK(back[0] == eb[0]);

  // equal media give zero contrast
  const auto z = contrast_from_permittivity(mb, mb, sup);
  for (auto v : z.values()) CHECK(v == cplx(0.0));

  ComplexPermittivityMap other(g, 2e9, eb);
  CHECK_THROWS_AS(contrast_from_permittivity(other, mb, sup), ConfigurationError);
  CHECK_THROWS_AS(ContrastImage(g, sup, std::vector<cplx>(3)), ConfigurationError);
}

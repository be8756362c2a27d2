#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "nrics/core/antenna.hpp"
#include "nrics/core/error.hpp"
#include "nrics/phantom/debye.hpp"
#include "nrics/phantom/generator.hpp"
#include "nrics/phantom/phantom.hpp"
#include "nrics/phantom/tissue_map.hpp"

using namespace nrics;

namespace {

const std::filesystem::path kPhantom = std::filesystem::path(NRICS_SOURCE_DIR) / "data/reference_phantom.txt";

std::filesystem::path tmp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("nrics_test_" + name);
}

void write(const std::filesystem::path& p, const std::string& s) { std::ofstream(p) << s; }

// 10 x 10 slice: a 4 x 4 breast block wrapped in skin inside bolus.
TissueMap small_map(double fat = 40.0) {
  Grid2D g(10, 10, 1e-3, 1e-3);
  std::vector<Tissue> lab(g.size(), Tissue::bolus);
  std::vector<double> p(g.size(), -1.0);
  for (int j = 2; j <= 7; ++j) {
    for (int i = 2; i <= 7; ++i) {
      const bool inner = i >= 3 && i <= 6 && j >= 3 && j <= 6;
      lab[g.linear({i, j})] = inner ? Tissue::breast : Tissue::skin;
      if (inner) p[g.linear({i, j})] = fat;
    }
  }
  return TissueMap(g, lab, p);
}

}  // namespace

TEST_CASE("Debye evaluation matches the closed form") {
  const double eps0 = 8.8541878128e-12;
  for (double f : {5e8, 6e8, 7e8}) {
    const double w = 2 * M_PI * f;
    const cplx expect = 3.14 + 1.61 / cplx(1.0, -w * 14e-12) + cplx(0.0, 0.036 / (w * eps0));
    CHECK(std::abs(TissueLibrary{}.fat.evaluate(w) - expect) < 1e-12);
  }
  TissueLibrary lib;
  for (double f = 1e8; f < 1e10; f *= 1.7) {
    for (const auto* t : {&lib.fat, &lib.fibroglandular, &lib.skin, &lib.muscle, &lib.bolus, &lib.lesion}) {
      const cplx e = t->evaluate(2 * M_PI * f);
      CHECK(e.real() >= 1.0);
      CHECK(e.imag() >= 0.0);
    }
  }
  CHECK_THROWS_AS((DebyeTissue{0.5, 1.0, 1e-12, 0.0}.validate()), InvariantError);
  CHECK_THROWS_AS((DebyeTissue{2.0, 1.0, 0.0, 0.0}.validate()), InvariantError);
}

TEST_CASE("lesion contrast against fibroglandular tissue is about ten percent") {
  TissueLibrary lib;
  for (double f : {5e8, 6e8, 7e8}) {
    const double w = 2 * M_PI * f;
    const cplx fg = lib.fibroglandular.evaluate(w);
    const double c = std::abs((lib.lesion.evaluate(w) - fg) / fg);
    CHECK(c == doctest::Approx(0.10).epsilon(0.1));
  }
}

TEST_CASE("composite permittivity is the linear volume mix") {
  TissueLibrary lib;
  const double w = 2 * M_PI * 6e8;
  const cplx ef = lib.fat.evaluate(w), eg = lib.fibroglandular.evaluate(w);
  CHECK(composite_permittivity(100, w, lib.fat, lib.fibroglandular) == ef);
  CHECK(composite_permittivity(0, w, lib.fat, lib.fibroglandular) == eg);
  CHECK(std::abs(composite_permittivity(50, w, lib.fat, lib.fibroglandular) - 0.5 * (ef + eg)) < 1e-12);
  // affine in p
  const cplx a = composite_permittivity(20, w, lib.fat, lib.fibroglandular);
  const cplx b = composite_permittivity(60, w, lib.fat, lib.fibroglandular);
  const cplx c = composite_permittivity(40, w, lib.fat, lib.fibroglandular);
  CHECK(std::abs(c - 0.5 * (a + b)) < 1e-12);
  CHECK_THROWS_AS(composite_permittivity(101, w, lib.fat, lib.fibroglandular), DomainError);
  CHECK_THROWS_AS(composite_permittivity(-1, w, lib.fat, lib.fibroglandular), DomainError);
  CHECK_THROWS_AS(composite_permittivity(50, 0.0, lib.fat, lib.fibroglandular), DomainError);
}

TEST_CASE("tissue map invariants") {
  CHECK_NOTHROW(small_map());
  CHECK(small_map().breast_mask().count() == 16);
  CHECK_THROWS_AS(small_map(150.0), InvariantError);
  CHECK_THROWS_AS(small_map(-0.5), InvariantError);

  Grid2D g(10, 10, 1e-3, 1e-3);
  std::vector<Tissue> lab(g.size(), Tissue::bolus);
  std::vector<double> p(g.size(), -1.0);
  lab[g.linear({5, 5})] = Tissue::breast;
  p[g.linear({5, 5})] = 30;
  CHECK_THROWS_AS(TissueMap(g, lab, p), InvariantError);  // no skin around it

  std::vector<double> p2(g.size(), -1.0);
  p2[0] = 10;
  CHECK_THROWS_AS(TissueMap(g, std::vector<Tissue>(g.size(), Tissue::bolus), p2), InvariantError);
}

TEST_CASE("phantom file round trip and parse errors") {
  const auto t = small_map(37.25);
  const auto f = tmp_file("map.txt");
  save_tissue_map(t, f);
  const auto u = load_tissue_map(f);
  CHECK(u.grid() == t.grid());
  CHECK(std::equal(u.labels().begin(), u.labels().end(), t.labels().begin()));
  CHECK(std::equal(u.fat_percent().begin(), u.fat_percent().end(), t.fat_percent().begin()));

  std::string all_bolus = "# comment\n8 8 0.001 0.001 0 0\n";
  for (int k = 0; k < 64; ++k) all_bolus += "0 -1\n";
  write(f, all_bolus);
  CHECK(load_tissue_map(f).breast_mask().count() == 0);

  write(f, "8 8 0.001 0.001 0 0\n0 -1\n");
  CHECK_THROWS_AS(load_tissue_map(f), ParseError);
  write(f, all_bolus + "0 -1\n");
  CHECK_THROWS_AS(load_tissue_map(f), ParseError);
  write(f, "8 8 0.001\n");
  CHECK_THROWS_AS(load_tissue_map(f), ParseError);
  std::string bad_label = "8 8 0.001 0.001 0 0\n7 -1\n";
  for (int k = 1; k < 64; ++k) bad_label += "0 -1\n";
  write(f, bad_label);
  CHECK_THROWS_AS(load_tissue_map(f), ParseError);
  CHECK_THROWS_AS(load_tissue_map(tmp_file("missing.txt")), ParseError);

  // out-of-range fat names the cell
  auto p = t.fat_percent();
  std::vector<double> bad(p.begin(), p.end());
  bad[t.grid().linear({4, 4})] = 150;
  save_tissue_map(small_map(), f);
  std::ifstream in(f);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  const auto pos = text.find("3 40");
  text.replace(pos, 4, "3 150");
  write(f, text);
  try {
    load_tissue_map(f);
    FAIL("expected an invariant error");
  } catch (const InvariantError& e) {
    CHECK(std::string(e.what()).find("cell") != std::string::npos);
  }
}

TEST_CASE("bundled reference phantom") {
  const auto t = load_tissue_map(kPhantom);
  // counted independently from the ellipse geometry with cell-centre sampling
  CHECK(t.breast_mask().count() == 2136);
  CHECK(t.mask_of(Tissue::skin).count() == 272);
  CHECK(t.mask_of(Tissue::muscle).count() == 2700);
  CHECK(t.grid().nx() == 140);
  CHECK(t.grid().ny() == 100);
  // the generator reproduces the file
  const auto g = make_reference_phantom(PhantomGeometry{}, kReferencePhantomSeed);
  CHECK(g.grid() == t.grid());
  for (std::size_t n = 0; n < g.grid().size(); ++n) {
    CHECK(g.label(n) == t.label(n));
    // the file keeps six significant digits
    CHECK(std::abs(g.fat_percent(n) - t.fat_percent(n)) <= 5e-5);
  }
  // antennas sit in bolus
  const auto cells = AntennaArray(reference_antennas()).cells(t.grid(), 10);
  for (const auto& c : cells) CHECK(t.label(t.grid().linear(c)) == Tissue::bolus);
}

TEST_CASE("corrupt_fat_map") {
  const auto t = load_tissue_map(kPhantom);
  CHECK(std::ranges::equal(corrupt_fat_map(t, 0.0, 5).fat_percent(), t.fat_percent()));
  const auto a = corrupt_fat_map(t, 10.0, 5);
  const auto b = corrupt_fat_map(t, 10.0, 5);
  CHECK(std::ranges::equal(a.fat_percent(), b.fat_percent()));
  CHECK_FALSE(std::ranges::equal(a.fat_percent(), corrupt_fat_map(t, 10.0, 6).fat_percent()));
  CHECK(std::ranges::equal(a.labels(), t.labels()));
  CHECK_THROWS_AS(corrupt_fat_map(t, -1.0, 5), DomainError);

  // clamping keeps everything in range even for a huge amplitude
  const auto wild = corrupt_fat_map(t, 300.0, 1);
  for (auto n : t.breast_mask().indices()) {
    CHECK(wild.fat_percent(n) >= 0.0);
    CHECK(wild.fat_percent(n) <= 100.0);
  }

  // Kolmogorov-Smirnov against U(-10, 10) on cells that can never clamp
  std::vector<double> d;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    const auto c = corrupt_fat_map(t, 10.0, seed);
    for (auto n : t.breast_mask().indices()) {
      if (t.fat_percent(n) >= 10.0 && t.fat_percent(n) <= 90.0) {
        d.push_back(c.fat_percent(n) - t.fat_percent(n));
      }
    }
  }
  std::sort(d.begin(), d.end());
  const double m = static_cast<double>(d.size());
  double ks = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    const double cdf = std::clamp((d[k] + 10.0) / 20.0, 0.0, 1.0);
    ks = std::max({ks, (k + 1) / m - cdf, cdf - k / m});
  }
  CHECK(m > 1000);
  CHECK(ks < 1.628 / std::sqrt(m));
}

TEST_CASE("background media") {
  const auto t = load_tissue_map(kPhantom);
  TissueLibrary lib;
  const auto e5 = build_background(t, 2 * M_PI * 5e8);
  const auto e7 = build_background(t, 2 * M_PI * 7e8);
  bool differs = false;
  for (std::size_t n = 0; n < t.grid().size(); ++n) {
    CHECK(e5[n].real() >= 1.0);
    CHECK(e5[n].imag() >= 0.0);
    differs = differs || e5[n] != e7[n];
  }
  CHECK(differs);
  // per-cell agreement with the direct Debye formula
  const double w = 2 * M_PI * 5e8;
  for (std::size_t n = 0; n < t.grid().size(); n += 97) {
    cplx expect;
    switch (t.label(n)) {
      case Tissue::bolus: expect = lib.bolus.evaluate(w); break;
      case Tissue::skin: expect = lib.skin.evaluate(w); break;
      case Tissue::muscle: expect = lib.muscle.evaluate(w); break;
      case Tissue::breast: {
        const double p = t.fat_percent(n) / 100.0;
        expect = p * lib.fat.evaluate(w) + (1 - p) * lib.fibroglandular.evaluate(w);
      }
    }
    CHECK(std::abs(e5[n] - expect) < 1e-12);
  }

  Grid2D g(10, 10, 1e-3, 1e-3);
  const auto bol = build_bolus_only(g, w);
  for (std::size_t n = 0; n < g.size(); ++n) CHECK(bol[n] == lib.bolus.evaluate(w));
  const auto all_bolus = TissueMap(g, std::vector<Tissue>(g.size(), Tissue::bolus),
                                   std::vector<double>(g.size(), -1.0));
  const auto e = build_background(all_bolus, w);
  for (std::size_t n = 0; n < g.size(); ++n) CHECK(e[n] == lib.bolus.evaluate(w));
}

TEST_CASE("lesion insertion") {
  const auto t = load_tissue_map(kPhantom);
  const double w = 2 * M_PI * 6e8;
  const auto bg = build_background(t, w);
  LesionSpec les{{0.044, 0.050}, 4.75e-3};
  const auto ins = insert_lesion(t, bg, les, w);
  CHECK_FALSE(ins.warning.has_value());

  // brute force point-in-disk over every cell
  const Grid2D& g = t.grid();
  std::vector<std::size_t> expect;
  for (int j = 0; j < g.ny(); ++j) {
    for (int i = 0; i < g.nx(); ++i) {
      const double x = g.origin().x + i * g.dx() - les.center.x;
      const double y = g.origin().y + j * g.dy() - les.center.y;
      if (x * x + y * y <= les.radius * les.radius) expect.push_back(static_cast<std::size_t>(j) * g.nx() + i);
    }
  }
  CHECK(ins.cells == expect);
  CHECK(ins.cells.size() == 48);
  std::vector<bool> in(g.size(), false);
  for (auto n : ins.cells) in[n] = true;
  for (std::size_t n = 0; n < g.size(); ++n) {
    if (in[n]) {
      CHECK(ins.medium[n] == les.tissue.evaluate(w));
    } else {
      CHECK(ins.medium[n] == bg[n]);
    }
  }

  // sparsity premise: zero contrast off the lesion
  const auto x = contrast_from_permittivity(ins.medium, bg, t.breast_mask());
  const auto cells = x.cells();
  for (std::size_t k = 0; k < cells.size(); ++k) {
    CHECK((x.values()[k] != cplx(0.0)) == static_cast<bool>(in[cells[k]]));
  }

  // in the bolus
  CHECK_THROWS_AS(insert_lesion(t, bg, LesionSpec{{0.130, 0.050}, 4e-3}, w), PlacementError);
  // crossing the skin
  CHECK_THROWS_AS(insert_lesion(t, bg, LesionSpec{{0.044, 0.077}, 4e-3}, w), PlacementError);
  // tiny disk between cell centres
  const auto c = g.center(g.linear({50, 50}));
  const auto tiny = insert_lesion(t, bg, LesionSpec{{c.x + 0.5 * g.dx(), c.y + 0.5 * g.dy()}, 0.3 * g.dx()}, w);
  CHECK(tiny.cells.empty());
  CHECK(tiny.warning.has_value());
}

#include "nrics/sensing/sensing_matrix.hpp"

#include <fstream>
#include <iomanip>
#include <string>

#include "nrics/core/error.hpp"
#include "nrics/simd/kernels.hpp"

namespace nrics {

std::vector<cplx> SensingMatrix::apply(std::span<const cplx> x) const {
  if (x.size() != n()) throw ConfigurationError("SensingMatrix::apply: length mismatch");
  std::vector<cplx> y(m());
  simd::active().gemv(a.data(), m(), n(), x.data(), y.data());
  return y;
}

std::vector<cplx> SensingMatrix::adjoint(std::span<const cplx> r) const {
  if (r.size() != m()) throw ConfigurationError("SensingMatrix::adjoint: length mismatch");
  std::vector<cplx> g(n());
  simd::active().gemv_adjoint(a.data(), m(), n(), r.data(), g.data());
  return g;
}

SensingMatrix build_sensing_matrix(std::span<const BackgroundRow> rows, const CellMask& support,
                                   std::size_t n_antennas, std::size_t n_frequencies) {
  const std::size_t m = n_antennas * n_frequencies;
  const std::size_t nsup = support.count();
  if (m == 0 || nsup == 0) throw ConfigurationError("sensing matrix: empty rows or support");

  std::vector<const BackgroundRow*> slot(m, nullptr);
  for (const auto& r : rows) {
    if (r.key.antenna >= n_antennas || r.key.frequency >= n_frequencies) {
      throw ConfigurationError("sensing matrix: row key out of range");
    }
    const std::size_t k = r.key.frequency * n_antennas + r.key.antenna;
    if (slot[k]) throw ConfigurationError("sensing matrix: duplicate row");
    slot[k] = &r;
  }

  const Grid2D* grid = nullptr;
  for (std::size_t k = 0; k < m; ++k) {
    const BackgroundRow* r = slot[k];
    const std::string id = "antenna " + std::to_string(k % n_antennas) + ", frequency " +
                           std::to_string(k / n_antennas);
    if (!r || !r->field) throw ConfigurationError("sensing matrix: missing field for " + id);
    if (r->green.size() != nsup || r->k_squared.size() != nsup) {
      throw ConfigurationError("sensing matrix: missing Green's function data for " + id);
    }
    if (r->field->grid.size() != support.size()) {
      throw ConfigurationError("sensing matrix: field grid does not match the support");
    }
    if (grid && !(*grid == r->field->grid)) {
      throw ConfigurationError("sensing matrix: rows on different grids");
    }
    grid = &r->field->grid;
  }

  SensingMatrix s{CMatrix(m, nsup), std::vector<RowKey>(m), support, *grid};
  const auto cells = support.indices();
  const double area = grid->cell_area();
  for (std::size_t k = 0; k < m; ++k) {
    const BackgroundRow& r = *slot[k];
    s.rows[k] = r.key;
    auto row = s.a.row(k);
    const cplx amp = r.field->amplitude;
    for (std::size_t c = 0; c < nsup; ++c) {
      const cplx eb = r.field->values[cells[c]] / amp;
      row[c] = r.green[c] * r.k_squared[c] * eb * area;
    }
  }
  return s;
}

SensingMatrix build_sensing_matrix(const std::vector<std::vector<FieldSolution>>& background_fields,
                                   std::span<const ComplexPermittivityMap> background_media,
                                   std::span<const double> hz, const CellMask& support) {
  if (background_fields.size() != background_media.size() || hz.size() != background_media.size()) {
    throw ConfigurationError("sensing matrix: one medium and field set per frequency required");
  }
  std::vector<BackgroundRow> rows;
  const std::size_t nf = background_fields.size();
  const std::size_t na = nf ? background_fields.front().size() : 0;
  for (std::size_t f = 0; f < nf; ++f) {
    if (background_fields[f].size() != na) {
      throw ConfigurationError("sensing matrix: antenna count differs between frequencies");
    }
    const auto& medium = background_media[f];
    std::vector<cplx> k2;
    for (auto n : support.indices()) k2.push_back(wavenumber_squared(medium[n], medium.omega()));
    for (std::size_t a = 0; a < na; ++a) {
      const auto& field = background_fields[f][a];
      if (field.omega != medium.omega()) {
        throw ConfigurationError("sensing matrix: field and medium frequencies differ");
      }
      rows.push_back({{a, f, hz[f]}, &field, green_row(field, support), k2});
    }
  }
  return build_sensing_matrix(rows, support, na, nf);
}

void write_sensing_csv(const SensingMatrix& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "antenna,frequency_hz,cell,real,imag\n" << std::setprecision(17);
  const auto cells = s.support.indices();
  for (std::size_t k = 0; k < s.m(); ++k) {
    for (std::size_t c = 0; c < s.n(); ++c) {
      const cplx v = s.a(k, c);
      out << s.rows[k].antenna << ',' << s.rows[k].hz << ',' << cells[c] << ',' << v.real()
          << ',' << v.imag() << '\n';
    }
  }
}

}  // namespace nrics

#pragma once

#include <span>
#include <vector>

#include "nrics/core/permittivity.hpp"

namespace nrics {

/// Dense row-major complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  cplx& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
  cplx operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  std::span<cplx> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
  std::span<const cplx> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
  const cplx* data() const noexcept { return data_.data(); }
  cplx* data() noexcept { return data_.data(); }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = 1.0;
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

}  // namespace nrics

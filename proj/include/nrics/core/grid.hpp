#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace nrics {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

struct CellIndex {
  int i = 0;
  int j = 0;
  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

/// Uniform cell-centred 2D grid. Cells are stored x-fastest: n = j * nx + i.
class Grid2D {
 public:
  Grid2D(int nx, int ny, double dx, double dy, Point2 origin = {});

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double dx() const noexcept { return dx_; }
  double dy() const noexcept { return dy_; }
  Point2 origin() const noexcept { return origin_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(nx_) * ny_; }
  double cell_area() const noexcept { return dx_ * dy_; }

  bool in_bounds(CellIndex c) const noexcept {
    return c.i >= 0 && c.i < nx_ && c.j >= 0 && c.j < ny_;
  }
  std::size_t linear(CellIndex c) const noexcept {
    return static_cast<std::size_t>(c.j) * nx_ + c.i;
  }
  CellIndex cell(std::size_t n) const noexcept {
    return {static_cast<int>(n % nx_), static_cast<int>(n / nx_)};
  }
  Point2 center(CellIndex c) const noexcept {
    return {origin_.x + c.i * dx_, origin_.y + c.j * dy_};
  }
  Point2 center(std::size_t n) const noexcept { return center(cell(n)); }

  /// Cell whose centre is closest to p, or nullopt when p falls outside the grid.
  std::optional<CellIndex> nearest_cell(Point2 p) const noexcept;

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

 private:
  int nx_;
  int ny_;
  double dx_;
  double dy_;
  Point2 origin_;
};

/// Boolean per-cell mask over a grid.
class CellMask {
 public:
  CellMask() = default;
  explicit CellMask(std::size_t n, bool value = false) : bits_(n, value ? 1 : 0) {}

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t n) const noexcept { return bits_[n] != 0; }
  void set(std::size_t n, bool v = true) noexcept { bits_[n] = v ? 1 : 0; }
  std::size_t count() const noexcept;
  /// Linear indices of set cells in increasing order.
  std::vector<std::size_t> indices() const;

  friend bool operator==(const CellMask&, const CellMask&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

}  // namespace nrics

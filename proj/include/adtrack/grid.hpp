#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace adtrack {

/// Row/column index into a 2-D grid.
struct GridIndex {
  int row = 0;
  int col = 0;

  friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

/// Extent of a 2-D grid.
struct GridSize {
  int rows = 0;
  int cols = 0;

  int area() const { return rows * cols; }
  friend bool operator==(const GridSize&, const GridSize&) = default;
};

/// Dense row-major 2-D array. Both extents are at least 1.
template <class T>
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, T fill = T{}) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) {
      throw std::invalid_argument("grid extents must be >= 1, got " + std::to_string(rows) + "x" +
                                  std::to_string(cols));
    }
    values_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill);
  }
  explicit Grid(GridSize size, T fill = T{}) : Grid(size.rows, size.cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  GridSize size() const { return {rows_, cols_}; }
  std::size_t count() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  T& operator()(int r, int c) { return values_[static_cast<std::size_t>(r) * cols_ + c]; }
  const T& operator()(int r, int c) const { return values_[static_cast<std::size_t>(r) * cols_ + c]; }
  T& operator[](std::size_t i) { return values_[i]; }
  const T& operator[](std::size_t i) const { return values_[i]; }

  T* data() { return values_.data(); }
  const T* data() const { return values_.data(); }
  std::vector<T>& values() { return values_; }
  const std::vector<T>& values() const { return values_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> values_;
};

using Complex = std::complex<double>;
using RealGrid = Grid<double>;
/// Full complex DFT grid with the DC bin at (0,0).
using Spectrum = Grid<Complex>;

}  // namespace adtrack

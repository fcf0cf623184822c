#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "adhyp/euler.hpp"

namespace adhyp {

/// Ghost layers per side and direction. Interface reconstruction reaches two
/// cells past the interface and the smoothness indicator's averaging stencil
/// needs one more.
inline constexpr int kGhost = 3;

/// Uniform Cartesian mesh. In 1-D mode `ny` is 1 and there are no y ghosts.
struct Grid {
  int dims = 1;
  int nx = 0;
  int ny = 1;
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 0.0;
  double dx = 0.0;
  double dy = 0.0;

  /// Throw std::invalid_argument for nx < 4 (or ny < 4) or empty domains.
  static Grid line(int nx, double x_min, double x_max);
  static Grid plane(int nx, int ny, double x_min, double x_max, double y_min, double y_max);

  bool is_2d() const { return dims == 2; }
  double x(int i) const { return x_min + (i + 0.5) * dx; }
  double y(int k) const { return is_2d() ? y_min + (k + 0.5) * dy : 0.0; }
  int ghost_y() const { return is_2d() ? kGhost : 0; }
  int stride() const { return nx + 2 * kGhost; }
  int rows() const { return ny + 2 * ghost_y(); }
  std::size_t storage_size() const {
    return static_cast<std::size_t>(stride()) * static_cast<std::size_t>(rows());
  }
  /// Number of physical cells.
  long cell_count() const { return static_cast<long>(nx) * ny; }
  double cell_volume() const { return is_2d() ? dx * dy : dx; }

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Cell-centred array over a Grid, indexed (i, k) with i in [-kGhost, nx+kGhost)
/// and k in [-ghost_y, ny+ghost_y).
template <class T>
class GridArray {
 public:
  GridArray() = default;
  explicit GridArray(const Grid& grid, const T& fill = T{})
      : grid_(grid), data_(grid.storage_size(), fill) {}

  const Grid& grid() const { return grid_; }

  T& operator()(int i, int k = 0) { return data_[index(i, k)]; }
  const T& operator()(int i, int k = 0) const { return data_[index(i, k)]; }

  std::size_t index(int i, int k = 0) const {
    return static_cast<std::size_t>(k + grid_.ghost_y()) * static_cast<std::size_t>(grid_.stride()) +
           static_cast<std::size_t>(i + kGhost);
  }

  std::span<T> storage() { return data_; }
  std::span<const T> storage() const { return data_; }

 private:
  Grid grid_;
  std::vector<T> data_;
};

using Field = GridArray<ConservedState>;
using ScalarField = GridArray<double>;

/// Calls fn(i, k) for every physical cell, rows outermost.
template <class Fn>
void for_each_cell(const Grid& g, Fn&& fn) {
  for (int k = 0; k < g.ny; ++k)
    for (int i = 0; i < g.nx; ++i) fn(i, k);
}

/// Sum of cell_volume * U over physical cells.
StateVector total_conserved(const Field& U);

}  // namespace adhyp

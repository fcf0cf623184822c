#include "adhyp/grid.hpp"

#include <cmath>
#include <string>

namespace adhyp {

Grid Grid::line(int nx, double x_min, double x_max) {
  if (nx < 4) throw std::invalid_argument("grid: nx must be >= 4, got " + std::to_string(nx));
  if (!(x_max > x_min)) throw std::invalid_argument("grid: empty x-range");
  Grid g;
  g.dims = 1;
  g.nx = nx;
  g.ny = 1;
  g.x_min = x_min;
  g.x_max = x_max;
  g.dx = (x_max - x_min) / nx;
  return g;
}

Grid Grid::plane(int nx, int ny, double x_min, double x_max, double y_min, double y_max) {
  Grid g = line(nx, x_min, x_max);
  if (ny < 4) throw std::invalid_argument("grid: ny must be >= 4, got " + std::to_string(ny));
  if (!(y_max > y_min)) throw std::invalid_argument("grid: empty y-range");
  g.dims = 2;
  g.ny = ny;
  g.y_min = y_min;
  g.y_max = y_max;
  g.dy = (y_max - y_min) / ny;
  return g;
}

StateVector total_conserved(const Field& U) {
  const Grid& g = U.grid();
  StateVector sum;
  for_each_cell(g, [&](int i, int k) { sum += U(i, k); });
  return sum * g.cell_volume();
}

}  // namespace adhyp

#include "adhyp/problems.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace adhyp {

Grid ProblemSpec::grid(int nx_override, int ny_override) const {
  const int mx = nx_override > 0 ? nx_override : nx;
  const int my = ny_override > 0 ? ny_override : ny;
  return dims == 2 ? Grid::plane(mx, my, x_min, x_max, y_min, y_max) : Grid::line(mx, x_min, x_max);
}

namespace {

using std::numbers::pi;

// Quadrant initial data: states listed for (x>xs,y>ys), (x<xs,y>ys),
// (x<xs,y<ys), (x>xs,y<ys).
StateFunction quadrants(double xs, double ys, std::array<PrimitiveState, 4> q) {
  return [=](double x, double y) {
    const bool right = !(x < xs);
    const bool top = !(y < ys);
    if (right && top) return q[0];
    if (!right && top) return q[1];
    if (!right && !top) return q[2];
    return q[3];
  };
}

std::vector<ProblemSpec> build_catalog() {
  std::vector<ProblemSpec> out;
  const auto free_bc = BoundarySet::uniform(BoundaryCondition::free());

  {
    ProblemSpec p;
    p.id = "ex1";
    p.title = "Shock-density wave interaction";
    p.x_min = -5.0;
    p.x_max = 15.0;
    p.nx = 800;
    p.t_end = 5.0;
    p.bc = free_bc;
    p.initial = [](double x, double) -> PrimitiveState {
      if (x < -4.0) return {27.0 / 7.0, 4.0 * std::sqrt(35.0) / 9.0, 0.0, 31.0 / 3.0};
      return {1.0 + 0.2 * std::sin(5.0 * x), 0.0, 0.0, 1.0};
    };
    p.c_old = 0.01;
    p.c_new = 0.005;
    p.reference_factor = 10;
    out.push_back(p);
  }
  {
    ProblemSpec p;
    p.id = "ex2";
    p.title = "Titarev-Toro shock-entropy wave interaction";
    p.x_min = -5.0;
    p.x_max = 5.0;
    p.nx = 800;
    p.t_end = 5.0;
    p.bc = free_bc;
    p.initial = [](double x, double) -> PrimitiveState {
      if (x < -4.5) return {1.51695, 0.523346, 0.0, 1.805};
      return {1.0 + 0.1 * std::sin(20.0 * x), 0.0, 0.0, 1.0};
    };
    p.c_old = 0.01;
    p.c_new = 0.002;
    p.reference_factor = 20;
    out.push_back(p);
  }
  {
    ProblemSpec p;
    p.id = "ex3";
    p.title = "Interacting blast waves";
    p.x_min = 0.0;
    p.x_max = 1.0;
    p.nx = 400;
    p.t_end = 0.038;
    p.bc = BoundarySet::uniform(BoundaryCondition::wall());
    p.initial = [](double x, double) -> PrimitiveState {
      if (x < 0.1) return {1.0, 0.0, 0.0, 1000.0};
      if (x <= 0.9) return {1.0, 0.0, 0.0, 0.01};
      return {1.0, 0.0, 0.0, 100.0};
    };
    p.c_old = 0.01;
    p.c_new = 0.005;
    p.reference_factor = 20;
    out.push_back(p);
  }
  {
    ProblemSpec p;
    p.id = "ex4";
    p.title = "2-D Riemann problem, configuration 3";
    p.dims = 2;
    p.x_min = p.y_min = 0.0;
    p.x_max = p.y_max = 1.2;
    p.nx = p.ny = 1000;
    p.t_end = 1.0;
    p.bc = free_bc;
    p.initial = quadrants(1.0, 1.0, {{{1.5, 0.0, 0.0, 1.5},
                                      {0.5323, 1.206, 0.0, 0.3},
                                      {0.138, 1.206, 1.206, 0.029},
                                      {0.5323, 0.0, 1.206, 0.3}}});
    p.c_old = 0.08;
    p.c_new = 0.06;
    p.reference_factor = 2;
    out.push_back(p);
  }
  {
    ProblemSpec p;
    p.id = "ex5";
    p.title = "2-D Riemann problem, configuration 6";
    p.dims = 2;
    p.x_min = p.y_min = 0.0;
    p.x_max = p.y_max = 1.0;
    p.nx = p.ny = 600;
    p.t_end = 1.0;
    p.bc = free_bc;
    p.initial = quadrants(0.5, 0.5, {{{1.0, 0.75, -0.5, 1.0},
                                      {2.0, 0.75, 0.5, 1.0},
                                      {1.0, -0.75, 0.5, 1.0},
                                      {3.0, -0.75, -0.5, 1.0}}});
    p.c_old = 0.1;
    p.c_new = 0.075;
    p.reference_factor = 2;
    out.push_back(p);
  }
  {
    ProblemSpec p;
    p.id = "ex6";
    p.title = "2-D Riemann problem, configuration 12";
    p.dims = 2;
    p.x_min = p.y_min = 0.0;
    p.x_max = p.y_max = 0.6;
    p.nx = p.ny = 600;
    p.t_end = 0.5;
    p.bc = free_bc;
    p.initial = quadrants(0.5, 0.5, {{{0.5313, 0.0, 0.0, 0.4},
                                      {1.0, 0.7276, 0.0, 1.0},
                                      {0.8, 0.0, 0.0, 1.0},
                                      {1.0, 0.0, 0.7276, 1.0}}});
    p.c_old = 0.03;
    p.c_new = 0.025;
    p.reference_factor = 2;
    out.push_back(p);
  }
  {
    ProblemSpec p;
    p.id = "ex7";
    p.title = "Rayleigh-Taylor instability";
    p.dims = 2;
    p.x_min = 0.0;
    p.x_max = 0.25;
    p.y_min = 0.0;
    p.y_max = 1.0;
    p.nx = 256;
    p.ny = 1024;
    p.gamma = 5.0 / 3.0;
    p.t_end = 2.95;
    p.snapshots = {1.95};
    const GasModel gas(p.gamma);
    p.bc.x_lo = p.bc.x_hi = BoundaryCondition::wall();
    p.bc.y_lo = BoundaryCondition::dirichlet(prim_to_cons({2.0, 0.0, 0.0, 1.0}, gas));
    p.bc.y_hi = BoundaryCondition::dirichlet(prim_to_cons({1.0, 0.0, 0.0, 2.5}, gas));
    p.source = SourceKind::RtGravity;
    const double gamma = p.gamma;
    p.initial = [gamma](double x, double y) -> PrimitiveState {
      const bool lower = y < 0.5;
      const double rho = lower ? 2.0 : 1.0;
      const double pr = lower ? 2.0 * y + 1.0 : y + 1.5;
      const double c = std::sqrt(gamma * pr / rho);
      return {rho, 0.0, -0.025 * c * std::cos(8.0 * pi * x), pr};
    };
    p.c_old = 0.08;
    p.c_new = 0.06;
    p.reference_factor = 2;
    out.push_back(p);
  }
  for (auto& p : out) p.snapshots.push_back(p.t_end);
  return out;
}

ProblemSpec build_smooth() {
  ProblemSpec p;
  p.id = "smooth1d";
  p.title = "Advected periodic density wave";
  p.x_min = 0.0;
  p.x_max = 2.0 * pi;
  p.nx = 128;
  p.t_end = 0.1;
  p.bc = BoundarySet::uniform(BoundaryCondition::periodic());
  p.initial = [](double x, double) -> PrimitiveState {
    return {1.0 + 0.5 * std::sin(x), 1.0, 0.0, 1.0};
  };
  p.exact = [](double x, double, double t) -> PrimitiveState {
    return {1.0 + 0.5 * std::sin(x - t), 1.0, 0.0, 1.0};
  };
  // Large enough that the indicator of the resolved sine stays far below it.
  p.c_old = 0.05;
  p.c_new = 0.05;
  p.snapshots = {p.t_end};
  return p;
}

}  // namespace

const std::vector<ProblemSpec>& catalog() {
  static const std::vector<ProblemSpec> specs = build_catalog();
  return specs;
}

const ProblemSpec& smooth_convergence_problem() {
  static const ProblemSpec spec = build_smooth();
  return spec;
}

const ProblemSpec& find_problem(std::string_view id) {
  for (const auto& p : catalog())
    if (p.id == id) return p;
  if (id == smooth_convergence_problem().id) return smooth_convergence_problem();
  throw CatalogError("unknown problem '" + std::string(id) + "'");
}

std::vector<std::string> problem_ids() {
  std::vector<std::string> ids;
  for (const auto& p : catalog()) ids.push_back(p.id);
  ids.push_back(smooth_convergence_problem().id);
  return ids;
}

Field sample(const StateFunction& f, const Grid& grid, const GasModel& gas, InitMode mode) {
  Field U(grid);
  if (mode == InitMode::Midpoint) {
    for_each_cell(grid, [&](int i, int k) { U(i, k) = prim_to_cons(f(grid.x(i), grid.y(k)), gas); });
    return U;
  }
  // Gauss-Legendre, 4 points on [-1/2, 1/2].
  const double a = std::sqrt(3.0 / 7.0 - 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
  const double b = std::sqrt(3.0 / 7.0 + 2.0 / 7.0 * std::sqrt(6.0 / 5.0));
  const double wa = (18.0 + std::sqrt(30.0)) / 36.0;
  const double wb = (18.0 - std::sqrt(30.0)) / 36.0;
  const std::array<double, 4> nodes{-0.5 * b, -0.5 * a, 0.5 * a, 0.5 * b};
  const std::array<double, 4> weights{0.5 * wb, 0.5 * wa, 0.5 * wa, 0.5 * wb};
  const int ny_nodes = grid.is_2d() ? 4 : 1;
  for_each_cell(grid, [&](int i, int k) {
    ConservedState sum;
    for (int qy = 0; qy < ny_nodes; ++qy)
      for (int qx = 0; qx < 4; ++qx) {
        const double x = grid.x(i) + nodes[qx] * grid.dx;
        const double y = grid.is_2d() ? grid.y(k) + nodes[qy] * grid.dy : 0.0;
        const double w = weights[qx] * (grid.is_2d() ? weights[qy] : 1.0);
        sum += w * prim_to_cons(f(x, y), gas);
      }
    U(i, k) = sum;
  });
  return U;
}

Field initialize(const ProblemSpec& spec, const Grid& grid, InitMode mode) {
  return sample(spec.initial, grid, GasModel(spec.gamma), mode);
}

}  // namespace adhyp

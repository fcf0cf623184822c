#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adhyp/boundary.hpp"
#include "adhyp/euler.hpp"
#include "adhyp/grid.hpp"
#include "adhyp/integrate.hpp"

namespace adhyp {

/// Initial data or exact solution as a function of (x, y); y is 0 in 1-D.
using StateFunction = std::function<PrimitiveState(double x, double y)>;

struct ProblemSpec {
  std::string id;
  std::string title;
  int dims = 1;
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 0.0;
  int nx = 0;  // default mesh
  int ny = 1;
  double gamma = 1.4;
  double t_end = 1.0;
  BoundarySet bc;
  StateFunction initial;
  SourceKind source = SourceKind::None;
  double c_old = 0.01;  // default adaption constants per strategy
  double c_new = 0.01;
  std::vector<double> snapshots;  // always ends with t_end
  int reference_factor = 10;      // mesh refinement used for reference runs
  /// Exact solution at time t where one is known.
  std::function<PrimitiveState(double x, double y, double t)> exact;

  Grid grid(int nx_override = 0, int ny_override = 0) const;
};

class CatalogError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// ex1..ex7 in order.
const std::vector<ProblemSpec>& catalog();

/// Periodic smooth density wave used for order verification ("smooth1d").
const ProblemSpec& smooth_convergence_problem();

/// Looks up ex1..ex7 or smooth1d. Throws CatalogError for unknown ids.
const ProblemSpec& find_problem(std::string_view id);

std::vector<std::string> problem_ids();

enum class InitMode {
  Midpoint,  // value at the cell centre
  Gauss4,    // 4-point Gauss average (tensor product in 2-D)
};

/// Cell averages of the initial data on `grid`. Physical cells only; ghosts
/// are left for fill_ghosts.
Field initialize(const ProblemSpec& spec, const Grid& grid, InitMode mode = InitMode::Midpoint);

/// Cell averages of an arbitrary state function (Gauss4 or midpoint).
Field sample(const StateFunction& f, const Grid& grid, const GasModel& gas, InitMode mode);

}  // namespace adhyp

#pragma once

#include <string>

#include "adhyp/grid.hpp"

namespace adhyp {

enum class TauStrategy {
  New,    // continuous tanh map of the averaged indicator
  Old,    // two-valued switch at the adaption constant
  Fixed,  // one tau everywhere, indicator bypassed
};

struct IndicatorConfig {
  TauStrategy strategy = TauStrategy::New;
  double C = 0.01;         // adaption constant
  double epsilon = 0.2;    // noise filter
  double fixed_tau = 0.5;  // used by Fixed only

  /// Throws std::invalid_argument for C <= 0, epsilon <= 0 or fixed_tau
  /// outside the limiter range.
  void validate() const;
};

/// Per-cell smoothness indicator values and the resulting limiter parameter.
/// E is valid on cells [-2, n+2), E_bar and tau on [-1, n+1) in each
/// direction of the grid; everything else is zero.
struct IndicatorField {
  ScalarField E;
  ScalarField E_bar;
  ScalarField tau;
};

/// Scalar 1-D indicator on a three-cell density stencil. Returns 0 when the
/// denominator vanishes.
double si_raw_point(double rho_m, double rho_0, double rho_p, double epsilon);

/// 2-D indicator at a cell from its x-neighbours (xm, xp) and y-neighbours.
double si_raw_point_2d(double rho_0, double xm, double xp, double ym, double yp, double epsilon);

/// Raw indicator of the density of U (ghosts must be filled).
ScalarField si_raw_1d(const Field& U, double epsilon);
ScalarField si_raw_2d(const Field& U, double epsilon);

/// 1-4-1 (1-D) and (1,4,1)x(1,4,1)/36 (2-D) averages of a raw indicator field.
ScalarField si_smooth_1d(const ScalarField& E);
ScalarField si_smooth_2d(const ScalarField& E);

double tau_new(double E_bar, double C);
double tau_old(double E_bar, double C);

/// Full pipeline: raw indicator, averaging, tau map. Expects U with filled
/// ghosts. With TauStrategy::Fixed the indicator is skipped (E, E_bar zero).
IndicatorField compute_tau_field(const Field& U, const IndicatorConfig& config);

/// Raw and averaged indicator regardless of strategy, for output.
IndicatorField compute_indicator(const Field& U, const IndicatorConfig& config);

const char* to_string(TauStrategy s);

}  // namespace adhyp

#include "adhyp/indicator.hpp"

#include <cmath>
#include <stdexcept>

#include "adhyp/limiter.hpp"

namespace adhyp {

void IndicatorConfig::validate() const {
  if (!(C > 0.0)) throw std::invalid_argument("indicator: adaption constant C must be > 0");
  if (!(epsilon > 0.0)) throw std::invalid_argument("indicator: epsilon must be > 0");
  if (strategy == TauStrategy::Fixed && !(fixed_tau >= kMinTau && fixed_tau <= kMaxTau))
    throw std::invalid_argument("indicator: fixed tau must lie in [-0.25, 0.5]");
}

const char* to_string(TauStrategy s) {
  switch (s) {
    case TauStrategy::New: return "new";
    case TauStrategy::Old: return "old";
    case TauStrategy::Fixed: return "fixed";
  }
  return "?";
}

double si_raw_point(double rho_m, double rho_0, double rho_p, double epsilon) {
  const double num = std::abs(rho_p - 2.0 * rho_0 + rho_m);
  const double den = std::abs(rho_p - rho_0) + std::abs(rho_0 - rho_m) +
                     epsilon * (std::abs(rho_p) + 2.0 * std::abs(rho_0) + std::abs(rho_m));
  return den > 0.0 ? num / den : 0.0;
}

double si_raw_point_2d(double rho_0, double xm, double xp, double ym, double yp, double epsilon) {
  const double d2x = xp - 2.0 * rho_0 + xm;
  const double d2y = yp - 2.0 * rho_0 + ym;
  const double fx = std::abs(xp - rho_0) + std::abs(rho_0 - xm) +
                    epsilon * (std::abs(xp) + 2.0 * std::abs(rho_0) + std::abs(xm));
  const double fy = std::abs(yp - rho_0) + std::abs(rho_0 - ym) +
                    epsilon * (std::abs(yp) + 2.0 * std::abs(rho_0) + std::abs(ym));
  const double e1 = d2x * d2x + d2y * d2y;
  const double e2 = fx * fx + fy * fy;
  return e2 > 0.0 ? std::sqrt(e1 / e2) : 0.0;
}

ScalarField si_raw_1d(const Field& U, double epsilon) {
  const Grid& g = U.grid();
  ScalarField E(g);
  for (int i = -2; i < g.nx + 2; ++i)
    E(i) = si_raw_point(U(i - 1).rho(), U(i).rho(), U(i + 1).rho(), epsilon);
  return E;
}

ScalarField si_raw_2d(const Field& U, double epsilon) {
  const Grid& g = U.grid();
  ScalarField E(g);
#pragma omp parallel for schedule(static)
  for (int k = -2; k < g.ny + 2; ++k)
    for (int i = -2; i < g.nx + 2; ++i)
      E(i, k) = si_raw_point_2d(U(i, k).rho(), U(i - 1, k).rho(), U(i + 1, k).rho(),
                                U(i, k - 1).rho(), U(i, k + 1).rho(), epsilon);
  return E;
}

ScalarField si_smooth_1d(const ScalarField& E) {
  const Grid& g = E.grid();
  ScalarField Eb(g);
  for (int i = -1; i < g.nx + 1; ++i) Eb(i) = (E(i + 1) + 4.0 * E(i) + E(i - 1)) / 6.0;
  return Eb;
}

ScalarField si_smooth_2d(const ScalarField& E) {
  const Grid& g = E.grid();
  ScalarField Eb(g);
#pragma omp parallel for schedule(static)
  for (int k = -1; k < g.ny + 1; ++k)
    for (int i = -1; i < g.nx + 1; ++i) {
      const double corners = E(i - 1, k - 1) + E(i - 1, k + 1) + E(i + 1, k - 1) + E(i + 1, k + 1);
      const double edges = E(i - 1, k) + E(i, k - 1) + E(i, k + 1) + E(i + 1, k);
      Eb(i, k) = (corners + 4.0 * edges + 16.0 * E(i, k)) / 36.0;
    }
  return Eb;
}

double tau_new(double E_bar, double C) {
  const double steepness = E_bar < C ? 2000.0 : 300.0;
  return 0.125 * (1.0 + 3.0 * std::tanh(steepness * (C - E_bar)));
}

double tau_old(double E_bar, double C) { return E_bar > C ? -0.25 : 0.5; }

IndicatorField compute_indicator(const Field& U, const IndicatorConfig& config) {
  const Grid& g = U.grid();
  IndicatorField out;
  if (g.is_2d()) {
    out.E = si_raw_2d(U, config.epsilon);
    out.E_bar = si_smooth_2d(out.E);
  } else {
    out.E = si_raw_1d(U, config.epsilon);
    out.E_bar = si_smooth_1d(out.E);
  }
  out.tau = ScalarField(g);
  return out;
}

IndicatorField compute_tau_field(const Field& U, const IndicatorConfig& config) {
  const Grid& g = U.grid();
  const int lo_k = g.is_2d() ? -1 : 0;
  const int hi_k = g.is_2d() ? g.ny + 1 : 1;

  if (config.strategy == TauStrategy::Fixed) {
    IndicatorField out{ScalarField(g), ScalarField(g), ScalarField(g)};
    for (int k = lo_k; k < hi_k; ++k)
      for (int i = -1; i < g.nx + 1; ++i) out.tau(i, k) = config.fixed_tau;
    return out;
  }

  IndicatorField out = compute_indicator(U, config);
  const bool use_new = config.strategy == TauStrategy::New;
  for (int k = lo_k; k < hi_k; ++k)
    for (int i = -1; i < g.nx + 1; ++i) {
      const double eb = out.E_bar(i, k);
      out.tau(i, k) = use_new ? tau_new(eb, config.C) : tau_old(eb, config.C);
    }
  return out;
}

}  // namespace adhyp

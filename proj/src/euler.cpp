#include "adhyp/euler.hpp"

#include <cstdio>
#include <utility>

namespace adhyp {

GasModel::GasModel(double gamma) : gamma_(gamma) {
  if (!(gamma > 1.0) || !std::isfinite(gamma))
    throw std::invalid_argument("gas model: gamma must be > 1, got " + std::to_string(gamma));
}

StateVector operator*(const Matrix& m, const StateVector& x) {
  StateVector y;
  for (int i = 0; i < kNumVars; ++i) {
    double s = 0.0;
    for (int j = 0; j < kNumVars; ++j) s += m[i][j] * x[j];
    y[i] = s;
  }
  return y;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  Matrix c{};
  for (int i = 0; i < kNumVars; ++i)
    for (int j = 0; j < kNumVars; ++j) {
      double s = 0.0;
      for (int k = 0; k < kNumVars; ++k) s += a[i][k] * b[k][j];
      c[i][j] = s;
    }
  return c;
}

double pressure(const ConservedState& U, const GasModel& gas) {
  const double u = U.mom_x() / U.rho();
  const double v = U.mom_y() / U.rho();
  return (gas.gamma() - 1.0) * (U.energy() - 0.5 * U.rho() * (u * u + v * v));
}

double sound_speed(const PrimitiveState& W, const GasModel& gas) {
  return std::sqrt(gas.gamma() * W.p / W.rho);
}

PrimitiveState cons_to_prim(const ConservedState& U, const GasModel& gas) {
  PrimitiveState W;
  if (!try_cons_to_prim(U, gas, W))
    throw StateError("invalid conserved state " + describe(U));
  return W;
}

ConservedState prim_to_cons(const PrimitiveState& W, const GasModel& gas) {
  if (!(W.rho > 0.0) || !(W.p > 0.0) || !std::isfinite(W.rho) || !std::isfinite(W.p) ||
      !std::isfinite(W.u) || !std::isfinite(W.v)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "invalid primitive state (rho=%g, u=%g, v=%g, p=%g)", W.rho,
                  W.u, W.v, W.p);
    throw StateError(buf);
  }
  const double energy = W.p / (gas.gamma() - 1.0) + 0.5 * W.rho * (W.u * W.u + W.v * W.v);
  return make_conserved(W.rho, W.rho * W.u, W.rho * W.v, energy);
}

bool is_valid(const ConservedState& U, const GasModel& gas) {
  PrimitiveState W;
  return try_cons_to_prim(U, gas, W) && std::isfinite(U.energy());
}

FluxVector physical_flux_x(const ConservedState& U, const PrimitiveState& W) {
  return make_conserved(U.mom_x(), U.mom_x() * W.u + W.p, U.mom_y() * W.u,
                        W.u * (U.energy() + W.p));
}

FluxVector physical_flux_x(const ConservedState& U, const GasModel& gas) {
  return physical_flux_x(U, cons_to_prim(U, gas));
}

FluxVector physical_flux_y(const ConservedState& U, const GasModel& gas) {
  return swap_xy(physical_flux_x(swap_xy(U), gas));
}

PrimitiveState interface_average(const PrimitiveState& a, const PrimitiveState& b) {
  return {0.5 * (a.rho + b.rho), 0.5 * (a.u + b.u), 0.5 * (a.v + b.v), 0.5 * (a.p + b.p)};
}

EigenSystem eigensystem_x(const PrimitiveState& W, const GasModel& gas) {
  if (!(W.rho > 0.0) || !(W.p > 0.0))
    throw StateError("eigensystem: non-positive averaged density or pressure");

  const double g1 = gas.gamma() - 1.0;
  const double u = W.u;
  const double v = W.v;
  const double c2 = gas.gamma() * W.p / W.rho;
  const double c = std::sqrt(c2);
  const double ic = 1.0 / c;
  const double ke = 0.5 * (u * u + v * v);
  const double h = c2 / g1 + ke;

  EigenSystem es;
  auto& R = es.right;
  // Columns: u-c, u (entropy), u (shear), u+c.
  R[0] = {{1.0, 1.0, 0.0, 1.0}};
  R[1] = {{u - c, u, 0.0, u + c}};
  R[2] = {{v, v, 1.0, v}};
  R[3] = {{h - u * c, ke, v, h + u * c}};

  const double b1 = g1 * ic * ic;
  const double b2 = b1 * ke;
  const double uc = u * ic;
  auto& L = es.left;
  L[0] = {{0.5 * (b2 + uc), -0.5 * (b1 * u + ic), -0.5 * b1 * v, 0.5 * b1}};
  L[1] = {{1.0 - b2, b1 * u, b1 * v, -b1}};
  L[2] = {{-v, 0.0, 1.0, 0.0}};
  L[3] = {{0.5 * (b2 - uc), -0.5 * (b1 * u - ic), -0.5 * b1 * v, 0.5 * b1}};

  es.eigenvalues = {{u - c, u, u, u + c}};
  return es;
}

EigenSystem eigensystem_y(const PrimitiveState& W, const GasModel& gas) {
  const EigenSystem sx = eigensystem_x({W.rho, W.v, W.u, W.p}, gas);
  // Conjugate by the permutation exchanging the two momentum slots.
  auto perm = [](int i) { return i == kMomX ? kMomY : (i == kMomY ? kMomX : i); };
  EigenSystem sy;
  for (int i = 0; i < kNumVars; ++i)
    for (int j = 0; j < kNumVars; ++j) {
      sy.right[i][j] = sx.right[perm(i)][j];
      sy.left[i][j] = sx.left[i][perm(j)];
    }
  sy.eigenvalues = sx.eigenvalues;
  return sy;
}

std::string describe(const ConservedState& U) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "(rho=%.10g, mom_x=%.10g, mom_y=%.10g, E=%.10g)", U.rho(),
                U.mom_x(), U.mom_y(), U.energy());
  return buf;
}

}  // namespace adhyp

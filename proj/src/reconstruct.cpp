#include "adhyp/reconstruct.hpp"

#include <cmath>
#include <utility>

#include "adhyp/limiter.hpp"

namespace adhyp {

namespace {

// Characteristic fields of the ideal-gas x-Jacobian at an averaged state, in
// the order (u-c, u, u, u+c). Applies the left/right eigenvector matrices in
// factored form instead of as dense 4x4 products.
struct CharFrame {
  double u, v, c, ic, ke, h, b1;

  CharFrame(const PrimitiveState& w, const GasModel& gas) {
    if (!(w.rho > 0.0) || !(w.p > 0.0))
      throw StateError("reconstruction: non-positive averaged density or pressure");
    const double g1 = gas.gamma() - 1.0;
    u = w.u;
    v = w.v;
    const double c2 = gas.gamma() * w.p / w.rho;
    c = std::sqrt(c2);
    ic = 1.0 / c;
    ke = 0.5 * (u * u + v * v);
    h = c2 / g1 + ke;
    b1 = g1 * ic * ic;
  }

  StateVector project(const StateVector& d) const {
    const double P = b1 * (ke * d[0] - u * d[1] - v * d[2] + d[3]);
    const double Q = (u * d[0] - d[1]) * ic;
    return StateVector{{0.5 * (P + Q), d[0] - P, d[2] - v * d[0], 0.5 * (P - Q)}};
  }

  StateVector expand(const StateVector& s) const {
    const double sum = s[0] + s[1] + s[3];
    const double jump = s[3] - s[0];
    return StateVector{{sum, u * sum + c * jump, v * sum + s[2],
                        h * (s[0] + s[3]) + u * c * jump + ke * s[1] + v * s[2]}};
  }
};

// Half of the limited characteristic increment for each field.
inline StateVector half_increment(const StateVector& gm, const StateVector& g0, const StateVector& gp,
                           double theta, double tau) {
  const LimiterParams params{theta, tau};
  StateVector d;
  for (int m = 0; m < kNumVars; ++m) d[m] = 0.5 * limited_difference(gm[m], g0[m], gp[m], params);
  return d;
}

}  // namespace

InterfaceValues reconstruct_interface(const ConservedState& um1, const ConservedState& u0,
                                      const ConservedState& u1, const ConservedState& u2,
                                      double tau0, double tau1, const GasModel& gas,
                                      const ReconstructionOptions& opt) {
  PrimitiveState w0, w1;
  if (!try_cons_to_prim(u0, gas, w0)) throw StateError("reconstruction: invalid cell state " + describe(u0));
  if (!try_cons_to_prim(u1, gas, w1)) throw StateError("reconstruction: invalid cell state " + describe(u1));
  return reconstruct_interface(um1, u0, u1, u2, w0, w1, tau0, tau1, gas, opt);
}

InterfaceValues reconstruct_interface(const ConservedState& um1, const ConservedState& u0,
                                      const ConservedState& u1, const ConservedState& u2,
                                      const PrimitiveState& w0, const PrimitiveState& w1,
                                      double tau0, double tau1, const GasModel& gas,
                                      const ReconstructionOptions& opt) {
  InterfaceValues out{u0, u1, 0, 0, w0, w1};
  if (opt.first_order) return out;

  const CharFrame frame(interface_average(w0, w1), gas);
  const StateVector gm1 = frame.project(um1);
  const StateVector g0 = frame.project(u0);
  const StateVector g1 = frame.project(u1);
  const StateVector g2 = frame.project(u2);

  // Cell j: slope from (g_{-1}, g_0, g_1), extrapolated to the right face.
  // Cell j+1: slope from (g_0, g_1, g_2), extrapolated to the left face.
  auto left_side = [&](double tau) { return u0 + frame.expand(half_increment(gm1, g0, g1, opt.theta, tau)); };
  auto right_side = [&](double tau) { return u1 - frame.expand(half_increment(g0, g1, g2, opt.theta, tau)); };

  out.left = left_side(tau0);
  if (!try_cons_to_prim(out.left, gas, out.w_left)) {
    ++out.fallbacks;
    out.sides |= 1;
    out.left = left_side(0.5);
    if (!try_cons_to_prim(out.left, gas, out.w_left)) {
      out.left = u0;
      out.w_left = w0;
    }
  }
  out.right = right_side(tau1);
  if (!try_cons_to_prim(out.right, gas, out.w_right)) {
    ++out.fallbacks;
    out.sides |= 2;
    out.right = right_side(0.5);
    if (!try_cons_to_prim(out.right, gas, out.w_right)) {
      out.right = u1;
      out.w_right = w1;
    }
  }
  return out;
}

InterfaceValues reconstruct_interface_1d(const Field& U, const ScalarField& tau, int j,
                                         const GasModel& gas, const ReconstructionOptions& opt) {
  return reconstruct_interface(U(j - 1), U(j), U(j + 1), U(j + 2), tau(j), tau(j + 1), gas, opt);
}

InterfaceValues reconstruct_interface_2d_x(const Field& U, const ScalarField& tau, int j, int k,
                                           const GasModel& gas, const ReconstructionOptions& opt) {
  return reconstruct_interface(U(j - 1, k), U(j, k), U(j + 1, k), U(j + 2, k), tau(j, k),
                               tau(j + 1, k), gas, opt);
}

InterfaceValues reconstruct_interface_2d_y(const Field& U, const ScalarField& tau, int j, int k,
                                           const GasModel& gas, const ReconstructionOptions& opt) {
  InterfaceValues r = reconstruct_interface(swap_xy(U(j, k - 1)), swap_xy(U(j, k)), swap_xy(U(j, k + 1)),
                                            swap_xy(U(j, k + 2)), tau(j, k), tau(j, k + 1), gas, opt);
  r.left = swap_xy(r.left);
  r.right = swap_xy(r.right);
  std::swap(r.w_left.u, r.w_left.v);
  std::swap(r.w_right.u, r.w_right.v);
  return r;
}

}  // namespace adhyp

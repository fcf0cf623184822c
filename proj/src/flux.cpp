#include "adhyp/flux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adhyp {

namespace {

struct Sides {
  PrimitiveState wl, wr;
  LocalSpeeds speeds;
};

void to_primitive(const ConservedState& left, const ConservedState& right, const GasModel& gas,
                  PrimitiveState& wl, PrimitiveState& wr) {
  if (!try_cons_to_prim(left, gas, wl)) throw StateError("flux: invalid left state " + describe(left));
  if (!try_cons_to_prim(right, gas, wr)) throw StateError("flux: invalid right state " + describe(right));
}

Sides analyse(const PrimitiveState& wl, const PrimitiveState& wr, const GasModel& gas) {
  Sides s{wl, wr, {}};
  const double cl = sound_speed(s.wl, gas);
  const double cr = sound_speed(s.wr, gas);
  s.speeds.a_plus = std::max({s.wl.u + cl, s.wr.u + cr, 0.0});
  s.speeds.a_minus = std::min({s.wl.u - cl, s.wr.u - cr, 0.0});
  return s;
}

template <class Correction>
FluxVector central_upwind(const ConservedState& left, const PrimitiveState& wl,
                          const ConservedState& right, const PrimitiveState& wr,
                          const GasModel& gas, Correction&& correction) {
  const Sides s = analyse(wl, wr, gas);
  const double ap = s.speeds.a_plus;
  const double am = s.speeds.a_minus;
  const FluxVector fl = physical_flux_x(left, s.wl);
  const FluxVector fr = physical_flux_x(right, s.wr);

  const double width = ap - am;
  const double eta = 1e-10 * std::max({std::abs(ap), std::abs(am), 1.0});
  if (!(width > eta)) return 0.5 * (fl + fr);

  const double inv = 1.0 / width;
  const double diss = ap * am * inv;
  StateVector jump = right - left;
  correction(AntiDiffusionInput{left, right, fl, fr, s.speeds}, jump);

  FluxVector h;
  for (int m = 0; m < kNumVars; ++m) h[m] = (ap * fl[m] - am * fr[m]) * inv + diss * jump[m];
  return h;
}

double minmod(double a, double b) {
  if (a > 0.0 && b > 0.0) return std::min(a, b);
  if (a < 0.0 && b < 0.0) return std::max(a, b);
  return 0.0;
}

}  // namespace

LocalSpeeds local_speeds(const ConservedState& left, const ConservedState& right, const GasModel& gas) {
  PrimitiveState wl, wr;
  to_primitive(left, right, gas, wl, wr);
  return analyse(wl, wr, gas).speeds;
}

FluxVector cu_flux(const ConservedState& left, const PrimitiveState& wl, const ConservedState& right,
                   const PrimitiveState& wr, const GasModel& gas) {
  return central_upwind(left, wl, right, wr, gas, [](const AntiDiffusionInput&, StateVector&) {});
}

FluxVector cu_flux(const ConservedState& left, const ConservedState& right, const GasModel& gas) {
  PrimitiveState wl, wr;
  to_primitive(left, right, gas, wl, wr);
  return cu_flux(left, wl, right, wr, gas);
}

FluxVector NumericalFlux::evaluate(const ConservedState& left, const ConservedState& right,
                                   const GasModel& gas) const {
  PrimitiveState wl, wr;
  to_primitive(left, right, gas, wl, wr);
  return evaluate_primitive(left, wl, right, wr, gas);
}

FluxVector CentralUpwindFlux::evaluate_primitive(const ConservedState& left, const PrimitiveState& wl,
                                                 const ConservedState& right, const PrimitiveState& wr,
                                                 const GasModel& gas) const {
  return cu_flux(left, wl, right, wr, gas);
}

LdcuFlux::LdcuFlux() : anti_diffusion_(&LdcuFlux::minmod_anti_diffusion) {}

LdcuFlux::LdcuFlux(AntiDiffusion anti_diffusion) : anti_diffusion_(std::move(anti_diffusion)) {}

StateVector LdcuFlux::minmod_anti_diffusion(const AntiDiffusionInput& in) {
  const double ap = in.speeds.a_plus;
  const double am = in.speeds.a_minus;
  const double inv = 1.0 / (ap - am);
  StateVector q;
  for (int m = 0; m < kNumVars; ++m) {
    const double star =
        (ap * in.right[m] - am * in.left[m] - (in.flux_right[m] - in.flux_left[m])) * inv;
    q[m] = minmod(in.right[m] - star, star - in.left[m]);
  }
  return q;
}

FluxVector LdcuFlux::evaluate_primitive(const ConservedState& left, const PrimitiveState& wl,
                                        const ConservedState& right, const PrimitiveState& wr,
                                        const GasModel& gas) const {
  if (!anti_diffusion_) return cu_flux(left, wl, right, wr, gas);
  return central_upwind(left, wl, right, wr, gas, [this](const AntiDiffusionInput& in, StateVector& jump) {
    jump -= anti_diffusion_(in);
  });
}

std::unique_ptr<NumericalFlux> make_flux(std::string_view name) {
  if (name == "cu") return std::make_unique<CentralUpwindFlux>();
  if (name == "ldcu") return std::make_unique<LdcuFlux>();
  throw std::invalid_argument("unknown flux '" + std::string(name) + "' (expected cu or ldcu)");
}

std::vector<std::string> flux_names() { return {"cu", "ldcu"}; }

}  // namespace adhyp

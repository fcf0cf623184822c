#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "adhyp/euler.hpp"

namespace adhyp {

/// One-sided local speeds of a central-upwind flux, a_minus <= 0 <= a_plus.
struct LocalSpeeds {
  double a_plus = 0.0;
  double a_minus = 0.0;
};

/// a+ = max(u- + c-, u+ + c+, 0), a- = min(u- - c-, u+ - c+, 0), with u the
/// x-velocity. Throws StateError for invalid states.
LocalSpeeds local_speeds(const ConservedState& left, const ConservedState& right, const GasModel& gas);

/// Classical central-upwind flux in x. Falls back to the arithmetic mean of
/// the physical fluxes when a+ - a- is below 1e-10 * max(|a+|, |a-|, 1).
FluxVector cu_flux(const ConservedState& left, const ConservedState& right, const GasModel& gas);

/// As above with the primitive states of both sides already known.
FluxVector cu_flux(const ConservedState& left, const PrimitiveState& w_left,
                   const ConservedState& right, const PrimitiveState& w_right, const GasModel& gas);

/// Interface flux contract. Implementations evaluate the x-direction flux;
/// y-fluxes are obtained by exchanging the momentum slots.
class NumericalFlux {
 public:
  virtual ~NumericalFlux() = default;

  /// Throws StateError when either side is not a valid state.
  FluxVector evaluate(const ConservedState& left, const ConservedState& right,
                      const GasModel& gas) const;

  /// Hot-path variant taking the (valid) primitive states of both sides.
  virtual FluxVector evaluate_primitive(const ConservedState& left, const PrimitiveState& w_left,
                                        const ConservedState& right, const PrimitiveState& w_right,
                                        const GasModel& gas) const = 0;
  virtual std::string_view name() const = 0;
};

class CentralUpwindFlux final : public NumericalFlux {
 public:
  FluxVector evaluate_primitive(const ConservedState& left, const PrimitiveState& w_left,
                                const ConservedState& right, const PrimitiveState& w_right,
                                const GasModel& gas) const override;
  std::string_view name() const override { return "cu"; }
};

/// Inputs available to an anti-diffusion correction.
struct AntiDiffusionInput {
  const ConservedState& left;
  const ConservedState& right;
  const FluxVector& flux_left;
  const FluxVector& flux_right;
  LocalSpeeds speeds;
};

/// Low-dissipation central-upwind seam. The flux is
///   [a+ F(U-) - a- F(U+)]/(a+ - a-) + a+ a-/(a+ - a-) * (U+ - U- - q)
/// where q is supplied by the anti-diffusion hook. With the hook disabled it
/// is bitwise identical to cu_flux.
///
/// The shipped hook is the minmod-limited built-in anti-diffusion of the
/// central-upwind family, q = minmod(U+ - U*, U* - U-) with U* the
/// intermediate state of the local Riemann fan. A contact-preserving
/// correction can be registered in its place.
class LdcuFlux final : public NumericalFlux {
 public:
  using AntiDiffusion = std::function<StateVector(const AntiDiffusionInput&)>;

  LdcuFlux();  // shipped anti-diffusion
  explicit LdcuFlux(AntiDiffusion anti_diffusion);  // empty function disables it

  FluxVector evaluate_primitive(const ConservedState& left, const PrimitiveState& w_left,
                                const ConservedState& right, const PrimitiveState& w_right,
                                const GasModel& gas) const override;
  std::string_view name() const override { return "ldcu"; }

  static StateVector minmod_anti_diffusion(const AntiDiffusionInput& in);

 private:
  AntiDiffusion anti_diffusion_;
};

/// Flux by configuration name ("cu" or "ldcu"). Throws std::invalid_argument
/// for unknown names.
std::unique_ptr<NumericalFlux> make_flux(std::string_view name);
std::vector<std::string> flux_names();

}  // namespace adhyp

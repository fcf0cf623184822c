#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace adhyp {

/// Number of conserved variables. 1-D runs use the same layout with the
/// y-momentum slot held at zero.
inline constexpr int kNumVars = 4;

enum Var : int { kRho = 0, kMomX = 1, kMomY = 2, kEnergy = 3 };

/// Fixed-size vector of conserved quantities (or of their fluxes).
struct StateVector {
  std::array<double, kNumVars> v{};

  constexpr double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
  constexpr double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }

  constexpr double rho() const { return v[kRho]; }
  constexpr double mom_x() const { return v[kMomX]; }
  constexpr double mom_y() const { return v[kMomY]; }
  constexpr double energy() const { return v[kEnergy]; }

  constexpr StateVector& operator+=(const StateVector& o) {
    for (int i = 0; i < kNumVars; ++i) (*this)[i] += o[i];
    return *this;
  }
  constexpr StateVector& operator-=(const StateVector& o) {
    for (int i = 0; i < kNumVars; ++i) (*this)[i] -= o[i];
    return *this;
  }
  constexpr StateVector& operator*=(double s) {
    for (int i = 0; i < kNumVars; ++i) (*this)[i] *= s;
    return *this;
  }

  friend constexpr StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
  friend constexpr StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
  friend constexpr StateVector operator*(StateVector a, double s) { return a *= s; }
  friend constexpr StateVector operator*(double s, StateVector a) { return a *= s; }
  friend constexpr bool operator==(const StateVector&, const StateVector&) = default;
};

using ConservedState = StateVector;
using FluxVector = StateVector;

constexpr ConservedState make_conserved(double rho, double mom_x, double mom_y, double energy) {
  return ConservedState{{rho, mom_x, mom_y, energy}};
}

struct PrimitiveState {
  double rho = 1.0;
  double u = 0.0;
  double v = 0.0;
  double p = 1.0;

  friend constexpr bool operator==(const PrimitiveState&, const PrimitiveState&) = default;
};

class GasModel {
 public:
  /// Throws std::invalid_argument unless gamma > 1.
  explicit GasModel(double gamma = 1.4);
  double gamma() const { return gamma_; }

 private:
  double gamma_;
};

/// Raised when a state has non-positive density or pressure (or is not
/// finite). `cell` is the flat cell index when known, -1 otherwise.
class StateError : public std::runtime_error {
 public:
  StateError(const std::string& what, long cell = -1)
      : std::runtime_error(what), cell_(cell) {}
  long cell() const { return cell_; }

 private:
  long cell_;
};

/// Row-major d x d matrix.
using Matrix = std::array<StateVector, kNumVars>;

StateVector operator*(const Matrix& m, const StateVector& x);
Matrix operator*(const Matrix& a, const Matrix& b);

/// Right eigenvectors (as columns of `right`), their inverse, and the
/// eigenvalues of the flux Jacobian in ascending order.
struct EigenSystem {
  Matrix right{};
  Matrix left{};
  StateVector eigenvalues{};
};

double pressure(const ConservedState& U, const GasModel& gas);
double sound_speed(const PrimitiveState& W, const GasModel& gas);

/// Non-throwing conversion used on hot paths. Returns false for states with
/// rho <= 0, p <= 0 or non-finite components.
inline bool try_cons_to_prim(const ConservedState& U, const GasModel& gas, PrimitiveState& W) {
  const double rho = U.rho();
  if (!(rho > 0.0) || !std::isfinite(rho)) return false;
  const double inv = 1.0 / rho;
  W.rho = rho;
  W.u = U.mom_x() * inv;
  W.v = U.mom_y() * inv;
  W.p = (gas.gamma() - 1.0) * (U.energy() - 0.5 * rho * (W.u * W.u + W.v * W.v));
  return W.p > 0.0 && std::isfinite(W.p) && std::isfinite(W.u) && std::isfinite(W.v);
}

PrimitiveState cons_to_prim(const ConservedState& U, const GasModel& gas);
ConservedState prim_to_cons(const PrimitiveState& W, const GasModel& gas);

bool is_valid(const ConservedState& U, const GasModel& gas);

FluxVector physical_flux_x(const ConservedState& U, const GasModel& gas);
FluxVector physical_flux_y(const ConservedState& U, const GasModel& gas);

/// Flux from an already converted primitive state; skips revalidation.
FluxVector physical_flux_x(const ConservedState& U, const PrimitiveState& W);

PrimitiveState interface_average(const PrimitiveState& left, const PrimitiveState& right);

EigenSystem eigensystem_x(const PrimitiveState& W_hat, const GasModel& gas);
EigenSystem eigensystem_y(const PrimitiveState& W_hat, const GasModel& gas);

/// Exchanges the x and y momentum slots. Maps a y-sweep onto the x-sweep code.
constexpr ConservedState swap_xy(ConservedState U) {
  const double t = U[kMomX];
  U[kMomX] = U[kMomY];
  U[kMomY] = t;
  return U;
}

std::string describe(const ConservedState& U);

}  // namespace adhyp

#pragma once

#include "adhyp/euler.hpp"
#include "adhyp/grid.hpp"

namespace adhyp {

/// One-sided values at an interface x_{j+1/2}: `left` extrapolated from cell
/// j, `right` from cell j+1. `fallbacks` counts sides whose slopes had to be
/// recomputed because the reconstructed state was not physical.
struct InterfaceValues {
  ConservedState left;
  ConservedState right;
  int fallbacks = 0;
  unsigned char sides = 0;  // bit 0: left side fell back, bit 1: right side
  PrimitiveState w_left;  // primitive forms of left and right
  PrimitiveState w_right;
};

struct ReconstructionOptions {
  double theta = 2.0;
  /// Debug switch: zero slopes everywhere (first-order scheme).
  bool first_order = false;
};

/// Characteristic piecewise-linear reconstruction at the interface between
/// u0 and u1 along the x-direction, using the four-cell stencil
/// (um1, u0, u1, u2). tau0 and tau1 are the limiter parameters of the cells
/// owning u0 and u1.
///
/// The averaged state of u0 and u1 (arithmetic mean of primitives) defines
/// the eigensystem. Cell averages are projected onto its left eigenvectors,
/// the SBM-limited slopes of cells j and j+1 are formed there, and the half-
/// cell increments are mapped back with the right eigenvectors and added to
/// the cell averages.
///
/// If an extrapolated state has rho <= 0 or p <= 0 the side is recomputed
/// with tau = 0.5 and, failing that, with a zero slope.
///
/// Throws StateError when u0 or u1 is not a valid state.
InterfaceValues reconstruct_interface(const ConservedState& um1, const ConservedState& u0,
                                      const ConservedState& u1, const ConservedState& u2,
                                      double tau0, double tau1, const GasModel& gas,
                                      const ReconstructionOptions& opt = {});

/// As above with the primitive states w0, w1 of u0, u1 already known (and
/// valid). Used by the flux loops, which convert every cell once.
InterfaceValues reconstruct_interface(const ConservedState& um1, const ConservedState& u0,
                                      const ConservedState& u1, const ConservedState& u2,
                                      const PrimitiveState& w0, const PrimitiveState& w1,
                                      double tau0, double tau1, const GasModel& gas,
                                      const ReconstructionOptions& opt = {});

/// Interface j+1/2 of a 1-D field (cells j-1..j+2 must exist).
InterfaceValues reconstruct_interface_1d(const Field& U, const ScalarField& tau, int j,
                                         const GasModel& gas, const ReconstructionOptions& opt = {});

/// Interface (j+1/2, k) of a 2-D field, x-sweep.
InterfaceValues reconstruct_interface_2d_x(const Field& U, const ScalarField& tau, int j, int k,
                                           const GasModel& gas,
                                           const ReconstructionOptions& opt = {});

/// Interface (j, k+1/2) of a 2-D field, y-sweep. Returned states are in the
/// usual (rho, mom_x, mom_y, E) ordering.
InterfaceValues reconstruct_interface_2d_y(const Field& U, const ScalarField& tau, int j, int k,
                                           const GasModel& gas,
                                           const ReconstructionOptions& opt = {});

}  // namespace adhyp

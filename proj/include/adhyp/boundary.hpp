#pragma once

#include "adhyp/grid.hpp"

namespace adhyp {

enum class BoundaryKind { Free, Wall, Dirichlet, Periodic };

struct BoundaryCondition {
  BoundaryKind kind = BoundaryKind::Free;
  ConservedState state{};  // only used by Dirichlet

  static BoundaryCondition free() { return {BoundaryKind::Free, {}}; }
  static BoundaryCondition wall() { return {BoundaryKind::Wall, {}}; }
  static BoundaryCondition periodic() { return {BoundaryKind::Periodic, {}}; }
  static BoundaryCondition dirichlet(const ConservedState& s) { return {BoundaryKind::Dirichlet, s}; }
};

struct BoundarySet {
  BoundaryCondition x_lo;
  BoundaryCondition x_hi;
  BoundaryCondition y_lo;
  BoundaryCondition y_hi;

  static BoundarySet uniform(const BoundaryCondition& bc) { return {bc, bc, bc, bc}; }

  /// Periodic must be set on both opposing sides or on neither.
  void validate() const;
};

const char* to_string(BoundaryKind kind);

/// Fills every ghost cell of U from its physical cells:
///   Free      zeroth-order extrapolation of the nearest physical cell
///   Wall      mirror image with the wall-normal momentum negated
///   Dirichlet the prescribed state
///   Periodic  wrap-around
/// x-ghosts are filled on physical rows first; the y pass then covers full rows
/// so corner ghosts are defined as well.
void fill_ghosts(Field& U, const BoundarySet& bc);

}  // namespace adhyp

#include "adhyp/boundary.hpp"

#include <stdexcept>

namespace adhyp {

void BoundarySet::validate() const {
  auto periodic = [](const BoundaryCondition& b) { return b.kind == BoundaryKind::Periodic; };
  if (periodic(x_lo) != periodic(x_hi))
    throw std::invalid_argument("boundary: periodic must be set on both x sides or neither");
  if (periodic(y_lo) != periodic(y_hi))
    throw std::invalid_argument("boundary: periodic must be set on both y sides or neither");
}

const char* to_string(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::Free: return "free";
    case BoundaryKind::Wall: return "wall";
    case BoundaryKind::Dirichlet: return "dirichlet";
    case BoundaryKind::Periodic: return "periodic";
  }
  return "?";
}

namespace {

// Ghost value for the g-th ghost (g = 1..kGhost) past one end of a line of n
// physical cells. `at(m)` reads physical cell m, `lo` selects the side.
template <class At>
ConservedState ghost_value(const BoundaryCondition& bc, int g, int n, bool lo, int normal, At&& at) {
  switch (bc.kind) {
    case BoundaryKind::Free:
      return at(lo ? 0 : n - 1);
    case BoundaryKind::Wall: {
      ConservedState s = at(lo ? g - 1 : n - g);
      s[normal] = -s[normal];
      return s;
    }
    case BoundaryKind::Dirichlet:
      return bc.state;
    case BoundaryKind::Periodic:
      return at(lo ? n - g : g - 1);
  }
  return at(0);
}

}  // namespace

void fill_ghosts(Field& U, const BoundarySet& bc) {
  const Grid& g = U.grid();
  for (int k = 0; k < g.ny; ++k) {
    auto at = [&](int m) { return U(m, k); };
    for (int gh = 1; gh <= kGhost; ++gh) {
      U(-gh, k) = ghost_value(bc.x_lo, gh, g.nx, true, kMomX, at);
      U(g.nx - 1 + gh, k) = ghost_value(bc.x_hi, gh, g.nx, false, kMomX, at);
    }
  }
  if (!g.is_2d()) return;
  for (int i = -kGhost; i < g.nx + kGhost; ++i) {
    auto at = [&](int m) { return U(i, m); };
    for (int gh = 1; gh <= kGhost; ++gh) {
      U(i, -gh) = ghost_value(bc.y_lo, gh, g.ny, true, kMomY, at);
      U(i, g.ny - 1 + gh) = ghost_value(bc.y_hi, gh, g.ny, false, kMomY, at);
    }
  }
}

}  // namespace adhyp

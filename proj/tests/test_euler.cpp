#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "adhyp/euler.hpp"
#include "test_support.hpp"

using namespace adhyp;
using adhyp::testing::random_primitive;
using adhyp::testing::rel_diff;

namespace {

// Central-difference Jacobian of the x-flux with respect to the conserved state.
Matrix fd_jacobian(const ConservedState& U, const GasModel& gas, double h) {
  Matrix A{};
  for (int j = 0; j < kNumVars; ++j) {
    ConservedState up = U, um = U;
    const double step = h * std::max(1.0, std::abs(U[j]));
    up[j] += step;
    um[j] -= step;
    const FluxVector fp = physical_flux_x(up, gas);
    const FluxVector fm = physical_flux_x(um, gas);
    for (int i = 0; i < kNumVars; ++i) A[i][j] = (fp[i] - fm[i]) / (2.0 * step);
  }
  return A;
}

Matrix identity() {
  Matrix I{};
  for (int i = 0; i < kNumVars; ++i) I[i][i] = 1.0;
  return I;
}

}  // namespace

TEST_CASE("EOS conversions on hand-evaluated states") {
  const GasModel gas(1.4);
  const PrimitiveState a = cons_to_prim(make_conserved(1.0, 0.0, 0.0, 2.5), gas);
  CHECK(a.rho == 1.0);
  CHECK(a.u == 0.0);
  CHECK(a.p == doctest::Approx(1.0).epsilon(1e-15));

  const PrimitiveState b = cons_to_prim(make_conserved(1.0, 1.0, 0.0, 3.0), gas);
  CHECK(b.u == 1.0);
  CHECK(b.p == doctest::Approx(0.4 * (3.0 - 0.5)).epsilon(1e-15));

  CHECK(prim_to_cons({1.0, 0.0, 0.0, 1.0}, gas).energy() == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(prim_to_cons({1.0, 0.0, 0.0, 1.0}, GasModel(5.0 / 3.0)).energy() ==
        doctest::Approx(1.5).epsilon(1e-15));
  CHECK(prim_to_cons({1.0, 0.7, 0.0, 1.0}, gas).energy() == prim_to_cons({1.0, -0.7, 0.0, 1.0}, gas).energy());
}

TEST_CASE("primitive round trip") {
  const GasModel gas(1.4);
  const PrimitiveState w{2.0, 0.75, 0.5, 1.0};
  const PrimitiveState r = cons_to_prim(prim_to_cons(w, gas), gas);
  CHECK(rel_diff(r.rho, w.rho) <= 1e-13);
  CHECK(rel_diff(r.u, w.u) <= 1e-13);
  CHECK(rel_diff(r.v, w.v) <= 1e-13);
  CHECK(rel_diff(r.p, w.p) <= 1e-13);

  std::mt19937_64 rng(7);
  for (int n = 0; n < 1000; ++n) {
    const PrimitiveState s = random_primitive(rng, 1e-2, 1e2, 2.0);
    const PrimitiveState t = cons_to_prim(prim_to_cons(s, gas), gas);
    REQUIRE(rel_diff(t.rho, s.rho) <= 1e-13);
    REQUIRE(rel_diff(t.u, s.u) <= 1e-13);
    REQUIRE(rel_diff(t.p, s.p) <= 1e-11);  // kinetic energy cancellation at low Mach
  }
}

TEST_CASE("invalid states are rejected") {
  const GasModel gas(1.4);
  CHECK_THROWS_AS(cons_to_prim(make_conserved(0.0, 0.0, 0.0, 1.0), gas), StateError);
  CHECK_THROWS_AS(cons_to_prim(make_conserved(-1.0, 0.0, 0.0, 1.0), gas), StateError);
  CHECK_THROWS_AS(cons_to_prim(make_conserved(1.0, 3.0, 0.0, 1.0), gas), StateError);
  CHECK_THROWS_AS(prim_to_cons({1.0, 0.0, 0.0, -1.0}, gas), StateError);
  CHECK_THROWS_AS(prim_to_cons({1.0, NAN, 0.0, 1.0}, gas), StateError);
  CHECK_THROWS_AS(GasModel(1.0), std::invalid_argument);
  CHECK_FALSE(is_valid(make_conserved(1.0, 0.0, 0.0, INFINITY), gas));
  CHECK(is_valid(make_conserved(1.0, 0.0, 0.0, 2.5), gas));
}

TEST_CASE("physical fluxes") {
  const GasModel gas(1.4);
  const FluxVector f0 = physical_flux_x(make_conserved(1.0, 0.0, 0.0, 2.5), gas);
  CHECK(f0[kRho] == 0.0);
  CHECK(f0[kMomX] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f0[kMomY] == 0.0);
  CHECK(f0[kEnergy] == 0.0);

  const FluxVector f1 = physical_flux_x(make_conserved(1.0, 1.0, 0.0, 3.0), gas);
  CHECK(f1[kRho] == 1.0);
  CHECK(f1[kMomX] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(f1[kEnergy] == doctest::Approx(4.0).epsilon(1e-15));

  // G(rho, rho u, rho v, E) = (rho v, rho u v, rho v^2 + p, v (E + p)).
  const PrimitiveState w{2.0, 0.3, -0.6, 1.5};
  const ConservedState U = prim_to_cons(w, gas);
  const FluxVector g = physical_flux_y(U, gas);
  CHECK(g[kRho] == doctest::Approx(w.rho * w.v));
  CHECK(g[kMomX] == doctest::Approx(w.rho * w.u * w.v));
  CHECK(g[kMomY] == doctest::Approx(w.rho * w.v * w.v + w.p));
  CHECK(g[kEnergy] == doctest::Approx(w.v * (U.energy() + w.p)));
}

TEST_CASE("interface average") {
  const PrimitiveState m = interface_average({1.0, 0.0, 0.0, 1.0}, {3.0, 2.0, 0.0, 3.0});
  CHECK(m == PrimitiveState{2.0, 1.0, 0.0, 2.0});
  const PrimitiveState s{1.3, -0.2, 0.4, 0.9};
  CHECK(interface_average(s, s) == s);
}

TEST_CASE("eigensystem at rest") {
  const GasModel gas(1.4);
  const EigenSystem es = eigensystem_x({1.0, 0.0, 0.0, 1.0}, gas);
  const double c = std::sqrt(1.4);
  CHECK(es.eigenvalues[0] == doctest::Approx(-c).epsilon(1e-15));
  CHECK(es.eigenvalues[1] == 0.0);
  CHECK(es.eigenvalues[2] == 0.0);
  CHECK(es.eigenvalues[3] == doctest::Approx(c).epsilon(1e-15));

  const Matrix P = es.right * es.left;
  const Matrix I = identity();
  for (int i = 0; i < kNumVars; ++i)
    for (int j = 0; j < kNumVars; ++j) CHECK(std::abs(P[i][j] - I[i][j]) <= 1e-13);
}

TEST_CASE("R * Rinv is the identity on random states") {
  // rho, p uniform in [1e-3, 1e3], |u|, |v| <= 10.
  const GasModel gas(1.4);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> pos(1e-3, 1e3), vel(-10.0, 10.0);
  double worst = 0.0;
  for (int n = 0; n < 1000; ++n) {
    const PrimitiveState w{pos(rng), vel(rng), vel(rng), pos(rng)};
    for (const EigenSystem& es : {eigensystem_x(w, gas), eigensystem_y(w, gas)}) {
      const Matrix P = es.right * es.left;
      const Matrix Q = es.left * es.right;
      for (int i = 0; i < kNumVars; ++i)
        for (int j = 0; j < kNumVars; ++j) {
          worst = std::max(worst, std::abs(P[i][j] - (i == j)));
          worst = std::max(worst, std::abs(Q[i][j] - (i == j)));
        }
    }
  }
  CHECK(worst < 1e-11);
}

TEST_CASE("R * Rinv agrees with the identity to the round-off of the product") {
  // Entries of Rinv grow like M^2 and entries of R like c^2, and both must
  // cancel in the product. The attainable accuracy per entry is a few ulps of
  // sum_k |R_ik| |Rinv_kj|, over wide state ranges.
  const GasModel gas(1.4);
  std::mt19937_64 rng(12);
  constexpr double kEps = 2.220446049250313e-16;
  for (int n = 0; n < 10000; ++n) {
    const PrimitiveState w = random_primitive(rng, 1e-8, 1e8);
    for (const EigenSystem& es : {eigensystem_x(w, gas), eigensystem_y(w, gas)}) {
      const Matrix P = es.right * es.left;
      for (int i = 0; i < kNumVars; ++i)
        for (int j = 0; j < kNumVars; ++j) {
          double scale = 0.0;
          for (int k = 0; k < kNumVars; ++k) scale += std::abs(es.right[i][k] * es.left[k][j]);
          REQUIRE(std::abs(P[i][j] - (i == j)) <= 8.0 * kEps * scale);
        }
    }
  }
}

TEST_CASE("eigenvalues are sorted and the middle ones equal the normal velocity") {
  const GasModel gas(1.4);
  std::mt19937_64 rng(3);
  for (int n = 0; n < 200; ++n) {
    const PrimitiveState w = random_primitive(rng);
    const EigenSystem ex = eigensystem_x(w, gas);
    CHECK(ex.eigenvalues[0] < ex.eigenvalues[1]);
    CHECK(ex.eigenvalues[1] == w.u);
    CHECK(ex.eigenvalues[2] == w.u);
    CHECK(ex.eigenvalues[2] < ex.eigenvalues[3]);
    const EigenSystem ey = eigensystem_y(w, gas);
    CHECK(ey.eigenvalues[1] == w.v);
  }
}

TEST_CASE("Rinv A R is diagonal for a finite-difference Jacobian") {
  const GasModel gas(1.4);
  auto check_state = [&](const PrimitiveState& w) {
    const ConservedState U = prim_to_cons(w, gas);
    const Matrix A = fd_jacobian(U, gas, 1e-6);
    const EigenSystem es = eigensystem_x(w, gas);
    const Matrix D = es.left * (A * es.right);
    const double scale = std::max(1.0, std::abs(es.eigenvalues[3]));
    for (int i = 0; i < kNumVars; ++i)
      for (int j = 0; j < kNumVars; ++j) {
        const double expect = i == j ? es.eigenvalues[i] : 0.0;
        CHECK(std::abs(D[i][j] - expect) <= 1e-6 * scale);
      }
  };
  check_state({2.0, 0.75, 0.0, 1.0});
  check_state({1.0, 0.0, 0.0, 1.0});
  check_state({0.5, -1.2, 0.8, 3.0});
}

TEST_CASE("flux Jacobian consistency: central differences converge at second order") {
  const GasModel gas(1.4);
  const ConservedState U = prim_to_cons({1.2, 0.4, -0.3, 2.0}, gas);
  const EigenSystem es = eigensystem_x(cons_to_prim(U, gas), gas);
  // A = R diag(lambda) Rinv is the exact Jacobian at U.
  Matrix L{};
  for (int i = 0; i < kNumVars; ++i)
    for (int j = 0; j < kNumVars; ++j) L[i][j] = es.eigenvalues[i] * es.left[i][j];
  const Matrix A = es.right * L;
  const StateVector delta{{0.3, -0.2, 0.5, 0.7}};
  auto err = [&](double h) {
    const FluxVector d = (physical_flux_x(U + h * delta, gas) - physical_flux_x(U - h * delta, gas)) * (0.5 / h);
    return adhyp::testing::max_abs(d - A * delta);
  };
  CHECK(err(1e-5) < 1e-8);
  // Halving h reduces the truncation error about four-fold.
  const double ratio = err(1e-2) / err(5e-3);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("swap_xy exchanges the momentum slots") {
  const ConservedState U = make_conserved(1.0, 2.0, 3.0, 4.0);
  CHECK(swap_xy(U) == make_conserved(1.0, 3.0, 2.0, 4.0));
  CHECK(swap_xy(swap_xy(U)) == U);
}

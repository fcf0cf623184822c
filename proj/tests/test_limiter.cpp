#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "adhyp/limiter.hpp"

using namespace adhyp;

namespace {

// Independent Minmod2 oracle: max(0, min(2r, (1+r)/2, 2)).
double minmod2(double r) {
  const double m = std::min(std::min(2.0 * r, (1.0 + r) / 2.0), 2.0);
  return m > 0.0 ? m : 0.0;
}

std::vector<LimiterParams> param_grid() {
  std::vector<LimiterParams> out;
  for (double theta : {1.0, 1.3, 1.5, 2.0})
    for (double tau : {-0.25, -0.1, 0.0, 0.125, 0.3, 0.5}) out.push_back({theta, tau});
  return out;
}

}  // namespace

TEST_CASE("phi examples") {
  const LimiterParams mm2{2.0, 0.5};
  CHECK(phi_sbm(-1.0, mm2) == 0.0);
  CHECK(phi_sbm(0.0, mm2) == 0.0);
  CHECK(phi_sbm(1.0, mm2) == 1.0);
  CHECK(phi_sbm(0.5, mm2) == 0.75);
  CHECK(phi_sbm(2.0, mm2) == 1.5);
  CHECK(phi_sbm(0.5, {2.0, -0.25}) == 1.0);
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(LimiterParams::checked(2.0, -0.25));
  CHECK_NOTHROW(LimiterParams::checked(1.0, 0.5));
  CHECK_THROWS_AS(LimiterParams::checked(0.9, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(LimiterParams::checked(2.1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(LimiterParams::checked(2.0, -0.3), std::invalid_argument);
  CHECK_THROWS_AS(LimiterParams::checked(2.0, 0.6), std::invalid_argument);
}

TEST_CASE("symmetry phi(r) = r phi(1/r) on log-spaced ratios") {
  for (const LimiterParams& p : param_grid()) {
    double worst = 0.0;
    for (int n = 0; n < 10000; ++n) {
      const double r = std::pow(10.0, -6.0 + 12.0 * n / 9999.0);
      const double a = phi_sbm(r, p);
      const double b = r * phi_sbm(1.0 / r, p);
      worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), 1e-300));
    }
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("bounds and fixed points") {
  for (const LimiterParams& p : param_grid()) {
    CHECK(phi_sbm(1.0, p) == 1.0);
    for (int n = 0; n <= 4000; ++n) {
      const double r = -20.0 + 60.0 * n / 4000.0;
      const double v = phi_sbm(r, p);
      REQUIRE(v >= 0.0);
      REQUIRE(v <= p.theta);
      if (r <= 0.0) REQUIRE(v == 0.0);
    }
  }
}

TEST_CASE("theta = 2, tau = 0.5 is Minmod2 exactly") {
  const LimiterParams mm2{2.0, 0.5};
  for (int n = 0; n <= 12000; ++n) {
    const double r = -2.0 + 12.0 * n / 12000.0;
    REQUIRE(phi_sbm(r, mm2) == minmod2(r));
  }
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-2.0, 10.0);
  for (int n = 0; n < 100000; ++n) {
    const double r = U(rng);
    REQUIRE(phi_sbm(r, mm2) == minmod2(r));
  }
}

TEST_CASE("monotone non-increasing in tau on (0, 1)") {
  for (double theta : {1.0, 1.5, 2.0})
    for (int n = 1; n < 200; ++n) {
      const double r = n / 200.0;
      double prev = INFINITY;
      for (int m = 0; m <= 75; ++m) {
        const double tau = -0.25 + 0.01 * m;
        const double v = phi_sbm(r, {theta, tau});
        REQUIRE(v <= prev);
        prev = v;
      }
    }
}

TEST_CASE("slope examples") {
  const LimiterParams mm2{2.0, 0.5};
  CHECK(slope_limited(3.0, 3.0, 3.0, 0.1, mm2) == 0.0);
  CHECK(slope_limited(0.0, 1.0, 2.0, 1.0, mm2) == 1.0);
  CHECK(slope_limited(0.0, 1.0, 1.5, 1.0, mm2) == 0.75);
  CHECK(slope_limited(0.0, 1.0, 0.5, 1.0, mm2) == 0.0);  // extremum
  CHECK(slope_limited(2.0, 1.0, 0.0, 0.5, mm2) == -2.0);
}

TEST_CASE("linear data give the exact slope for every parameter pair") {
  for (const LimiterParams& p : param_grid())
    for (double a : {-3.0, 0.0, 1.5})
      for (double s : {-2.0, -0.125, 0.5, 4.0}) {
        const double dx = 0.25;
        CHECK(slope_limited(a, a + s * dx, a + 2 * s * dx, dx, p) == doctest::Approx(s).epsilon(1e-14));
      }
}

TEST_CASE("limited difference matches phi(r) times the backward difference") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> U(-5.0, 5.0);
  for (const LimiterParams& p : param_grid())
    for (int n = 0; n < 5000; ++n) {
      const double a = U(rng), b = U(rng), c = U(rng);
      const double back = b - a;
      if (std::abs(back) < 1e-6) continue;
      const double expect = phi_sbm((c - b) / back, p) * back;
      REQUIRE(limited_difference(a, b, c, p) == doctest::Approx(expect).epsilon(1e-14).scale(1e-300));
    }
}

TEST_CASE("flat-data threshold") {
  const LimiterParams mm2{2.0, 0.5};
  // |back| below 1e-14 relative to the data magnitude: zero slope.
  CHECK(limited_difference(1e6, 1e6 + 1e-9, 1e6 + 2e-9, mm2) == 0.0);
  CHECK(limited_difference(0.0, 1e-15, 2e-15, mm2) == 0.0);
  // Above the threshold the slope is kept.
  CHECK(limited_difference(0.0, 1e-13, 2e-13, mm2) == doctest::Approx(1e-13));
}

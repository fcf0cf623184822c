#pragma once

#include <algorithm>
#include <cmath>

namespace adhyp {

/// Two-parameter SBM limiter family. theta in [1, 2] sets the steepest
/// admissible slope; tau selects dissipative (>= 0.5), compressive
/// ([0, 0.5)) or overcompressive (< 0) behaviour.
struct LimiterParams {
  double theta = 2.0;
  double tau = 0.5;

  /// Throws std::invalid_argument outside [1,2] x [-0.25, 0.5].
  static LimiterParams checked(double theta, double tau);
};

inline constexpr double kMinTau = -0.25;
inline constexpr double kMaxTau = 0.5;

/// phi(r) = 0 for r <= 0, min(r*theta, 1 + tau*(r-1)) on (0, 1] and
/// r*phi(1/r) above 1 (evaluated in the equivalent closed form).
double phi_sbm(double r, const LimiterParams& params);

/// Limited increment phi(r) * (mid - prev) with r = (next - mid)/(mid - prev).
/// Returns 0 when |mid - prev| is at round-off level relative to the data.
/// Evaluated without the division: with a = |back|, b = |fwd| of equal sign,
/// phi(r) * back = sign(back) * min(theta*b, (1-tau)*a + tau*b) for b <= a
/// and the mirrored expression otherwise.
inline double limited_difference(double prev, double mid, double next, const LimiterParams& p) {
  constexpr double kFlatEta = 1e-14;
  const double back = mid - prev;
  const double fwd = next - mid;
  if (!(back * fwd > 0.0)) return 0.0;
  const double a = std::abs(back);
  const double b = std::abs(fwd);
  // The sum bounds the max from above, so the exact test only runs near flat data.
  if (a < kFlatEta * (std::abs(prev) + std::abs(mid) + std::abs(next) + 1.0)) {
    const double scale = std::max(std::max(std::abs(prev), std::abs(mid)), std::max(std::abs(next), 1.0));
    if (a < kFlatEta * scale) return 0.0;
  }
  const double m = b <= a ? std::min(p.theta * b, (1.0 - p.tau) * a + p.tau * b)
                          : std::min(p.theta * a, (1.0 - p.tau) * b + p.tau * a);
  return back > 0.0 ? m : -m;
}

/// Limited slope: limited_difference(...) / dx.
double slope_limited(double prev, double mid, double next, double dx, const LimiterParams& params);

}  // namespace adhyp

#include "adhyp/limiter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace adhyp {

LimiterParams LimiterParams::checked(double theta, double tau) {
  if (!(theta >= 1.0 && theta <= 2.0))
    throw std::invalid_argument("limiter: theta must lie in [1, 2], got " + std::to_string(theta));
  if (!(tau >= kMinTau && tau <= kMaxTau))
    throw std::invalid_argument("limiter: tau must lie in [-0.25, 0.5], got " + std::to_string(tau));
  return {theta, tau};
}

double phi_sbm(double r, const LimiterParams& p) {
  if (!(r > 0.0)) return 0.0;
  // 1 + tau*(r-1) is written as (1-tau) + tau*r so that theta=2, tau=0.5
  // rounds identically to the textbook (1+r)/2 form of Minmod2.
  if (r <= 1.0) return std::min(r * p.theta, (1.0 - p.tau) + p.tau * r);
  return std::min(p.theta, (1.0 - p.tau) * r + p.tau);
}

double slope_limited(double prev, double mid, double next, double dx, const LimiterParams& p) {
  return limited_difference(prev, mid, next, p) / dx;
}

}  // namespace adhyp

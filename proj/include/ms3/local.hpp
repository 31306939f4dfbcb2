#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ms3 {

// Point of the boundary torus of a standard closed-orbit neighbourhood,
// in the cylindrical chart {rho in [1,3], alpha unnormalized, z in [-1,1]}.
struct TorusPoint {
  double rho = 1.0;
  double alpha = 0.0;
  double z = 0.0;

  friend bool operator==(const TorusPoint&, const TorusPoint&) = default;
};

// Incoming points sit on the rho = 1 or rho = 3 annuli away from the stable
// manifold z = 0; outgoing points sit on the z = +-1 annuli.
inline bool is_incoming(const TorusPoint& p) {
  return (p.rho == 1.0 || p.rho == 3.0) && p.z > -1.0 && p.z < 1.0 &&
         p.z != 0.0;
}

inline bool is_outgoing(const TorusPoint& p) {
  return (p.z == 1.0 || p.z == -1.0) && p.rho > 1.0 && p.rho < 3.0;
}

struct NoReturnError : std::domain_error {
  using std::domain_error::domain_error;
};

// First-return map of the standard neighbourhood.  A trajectory entering at
// rho = 2 -+ 1 leaves at rho = 2 -+ |z| on the z = sign(z) annulus, turned by
// ln|z|; as z -> 0 the image winds onto the unstable circles.  `twisted`
// composes the central-symmetry identification (alpha + pi, -z) of a twisted
// neighbourhood with the trivial map.
inline TorusPoint first_return(const TorusPoint& p, bool twisted = false) {
  if (p.rho != 1.0 && p.rho != 3.0)
    throw std::invalid_argument("first_return: incoming points need rho = 1 or rho = 3");
  if (p.z == 0.0)
    throw NoReturnError("first_return: z = 0 lies on the stable manifold and never returns");
  if (!(p.z > -1.0 && p.z < 1.0))
    throw std::invalid_argument("first_return: incoming points need z in (-1, 1)");
  const double az = std::fabs(p.z);
  TorusPoint out;
  out.rho = p.rho == 1.0 ? 2.0 - az : 2.0 + az;
  out.alpha = p.alpha + std::log(az);
  out.z = p.z > 0.0 ? 1.0 : -1.0;
  if (twisted) {
    out.alpha += std::numbers::pi;
    out.z = -out.z;
  }
  return out;
}

inline double alpha_mod_2pi(double alpha) {
  const double two_pi = 2.0 * std::numbers::pi;
  double r = std::fmod(alpha, two_pi);
  if (r < 0.0) r += two_pi;
  return r;
}

}  // namespace ms3

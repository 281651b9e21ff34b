#pragma once

// Test-only oracles, kept independent of the library's integration engine:
// Beta-function closed forms for radial power integrals, the spherical-cap
// reduction for off-center half-space integrals, and a Halton sequence for
// deterministic quasi-random sample points.

#include <cmath>
#include <functional>
#include <stdexcept>

#include "nlbvp/quadrature.hpp"

namespace oracle {

// \int_0^inf r^a (c + r^2)^{-b} dr = (1/2) c^{(a+1)/2 - b} B((a+1)/2, b-(a+1)/2)
inline double radial_beta(double a, double b, double c) {
  const double p = 0.5 * (a + 1.0);
  const double q = b - p;
  if (!(p > 0.0 && q > 0.0)) throw std::invalid_argument("radial_beta: divergent");
  const double lnB = std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q);
  return 0.5 * std::pow(c, p - b) * std::exp(lnB);
}

// \int_0^alpha sin^m(t) dt for integer m >= 0.
inline double sine_power_integral(int m, double alpha) {
  if (m == 0) return alpha;
  if (m == 1) return 1.0 - std::cos(alpha);
  const double s = std::sin(alpha), c = std::cos(alpha);
  return (m - 1.0) / m * sine_power_integral(m - 2, alpha) -
         std::pow(s, m - 1) * c / m;
}

// \int_{{y in R^N : y_N > h}} G(|y|) dy for h >= 0, via polar coordinates
// about the origin: the cap angle at radius r is arccos(h/r).
inline double cap_integral(int dim, double h,
                           const std::function<double(double)>& G,
                           double scale = 1.0) {
  const double omega = nlbvp::quadrature::unit_sphere_area(dim - 1);
  auto f = [&](double r) {
    if (r <= h) return 0.0;
    const double alpha = std::acos(std::min(1.0, h / r));
    return G(r) * std::pow(r, dim - 1) * sine_power_integral(dim - 2, alpha);
  };
  return omega * nlbvp::quadrature::integrate_semi_infinite(
                     f, h, scale, {.rel_tol = 1e-11});
}

inline double halton(int index, int base) {
  double f = 1.0, r = 0.0;
  for (int i = index; i > 0; i /= base) {
    f /= base;
    r += f * (i % base);
  }
  return r;
}

}  // namespace oracle

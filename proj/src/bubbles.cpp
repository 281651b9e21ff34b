#include "nlbvp/bubbles.hpp"

#include <cmath>
#include <stdexcept>

#include "nlbvp/quadrature.hpp"

namespace nlbvp::bubbles {

namespace quad = nlbvp::quadrature;

namespace {

// Every family is A * (s + |x - x0|^2)^{-(N-2)/2} with the center x0 on the
// x_N axis; everything below works off this parametrisation.
struct Closed {
  double amplitude;  // A
  double shift;      // s
  double center_z;   // x0_N (<= 0)
};

Closed closed_form(const BubbleSpec& spec) {
  const double n = spec.dim;
  const double e = spec.eps;
  switch (spec.kind) {
    case BubbleKind::Interior:
      return {std::pow(n * (n - 2.0) * e * e, 0.25 * (n - 2.0)), e * e, 0.0};
    case BubbleKind::Trace:
      return {std::pow((n - 2.0) * e, 0.5 * (n - 2.0)), 0.0, -e};
    case BubbleKind::Corner:
      return {std::pow(n * (n - 2.0), 0.25 * (n - 2.0)) *
                  std::pow(e, 0.5 * (n - 2.0)),
              e * e, -e * spec.corner_offset()};
  }
  throw std::logic_error("closed_form: unreachable");
}

void check_point(const BubbleSpec& spec, const Eigen::VectorXd& x) {
  if (x.size() != spec.dim)
    throw std::invalid_argument("bubble: point dimension mismatch");
  if (!x.allFinite()) throw std::invalid_argument("bubble: point must be finite");
  if (x[spec.dim - 1] < 0.0)
    throw std::invalid_argument("bubble: point must satisfy x_N >= 0");
}

double dist_sq(const Closed& c, const Eigen::VectorXd& x, int dim) {
  double d = 0.0;
  for (int i = 0; i + 1 < dim; ++i) d += x[i] * x[i];
  const double dz = x[dim - 1] - c.center_z;
  return d + dz * dz;
}

}  // namespace

BubbleSpec::BubbleSpec(BubbleKind k, int N, double e) : kind(k), dim(N), eps(e) {
  if (N < 3) throw std::invalid_argument("BubbleSpec: dim must be >= 3");
  if (!(e > 0.0)) throw std::invalid_argument("BubbleSpec: eps must be > 0");
}

double BubbleSpec::critical_volume_exponent() const {
  return 2.0 * dim / (dim - 2.0);
}

double BubbleSpec::critical_trace_exponent() const {
  return 2.0 * (dim - 1.0) / (dim - 2.0);
}

double BubbleSpec::corner_offset() const {
  if (kind != BubbleKind::Corner)
    throw std::logic_error("corner_offset: defined for the Corner family only");
  return std::sqrt(dim / (dim - 2.0));
}

double eval_bubble(const BubbleSpec& spec, const Eigen::VectorXd& x) {
  check_point(spec, x);
  const Closed c = closed_form(spec);
  const double d = c.shift + dist_sq(c, x, spec.dim);
  return c.amplitude * std::pow(d, -0.5 * (spec.dim - 2.0));
}

Eigen::VectorXd bubble_gradient(const BubbleSpec& spec, const Eigen::VectorXd& x) {
  check_point(spec, x);
  const Closed c = closed_form(spec);
  const double p = 0.5 * (spec.dim - 2.0);
  const double d = c.shift + dist_sq(c, x, spec.dim);
  Eigen::VectorXd rel = x;
  rel[spec.dim - 1] -= c.center_z;
  return (-2.0 * p * c.amplitude * std::pow(d, -p - 1.0)) * rel;
}

double bubble_laplacian(const BubbleSpec& spec, const Eigen::VectorXd& x) {
  check_point(spec, x);
  const Closed c = closed_form(spec);
  const int n = spec.dim;
  const double p = 0.5 * (n - 2.0);
  const double rsq = dist_sq(c, x, n);
  const double d = c.shift + rsq;
  return -2.0 * p * c.amplitude *
         (n * std::pow(d, -p - 1.0) - 2.0 * (p + 1.0) * rsq * std::pow(d, -p - 2.0));
}

double axisym_value(const BubbleSpec& spec, double rho, double z) {
  const Closed c = closed_form(spec);
  const double dz = z - c.center_z;
  const double d = c.shift + rho * rho + dz * dz;
  return c.amplitude * std::pow(d, -0.5 * (spec.dim - 2.0));
}

double axisym_grad_sq(const BubbleSpec& spec, double rho, double z) {
  const Closed c = closed_form(spec);
  const int n = spec.dim;
  const double dz = z - c.center_z;
  const double rsq = rho * rho + dz * dz;
  const double d = c.shift + rsq;
  const double g = (n - 2.0) * c.amplitude;
  return g * g * rsq * std::pow(d, -static_cast<double>(n));
}

ResidualReport pde_residual(const BubbleSpec& spec, const Eigen::MatrixXd& points) {
  if (points.rows() == 0)
    throw std::invalid_argument("pde_residual: empty sample set");
  if (points.cols() != spec.dim)
    throw std::invalid_argument("pde_residual: point dimension mismatch");

  ResidualReport rep{0.0, 0.0};
  const double vol_exp = spec.critical_volume_exponent() - 1.0;
  const double trace_exp = spec.critical_trace_exponent() - 1.0;
  for (Eigen::Index i = 0; i < points.rows(); ++i) {
    const Eigen::VectorXd x = points.row(i);
    const double u = eval_bubble(spec, x);
    if (x[spec.dim - 1] > 0.0) {
      const double lap = bubble_laplacian(spec, x);
      double res;
      if (spec.kind == BubbleKind::Trace)
        res = lap;  // harmonic
      else
        res = -lap - std::pow(u, vol_exp);
      rep.interior_max = std::max(rep.interior_max, std::abs(res));
    } else {
      const double dudz = bubble_gradient(spec, x)[spec.dim - 1];
      const double flux = spec.kind == BubbleKind::Interior
                              ? 0.0
                              : std::pow(u, trace_exp);
      rep.boundary_max = std::max(rep.boundary_max, std::abs(-dudz - flux));
    }
  }
  return rep;
}

double EnergyBreakdown::total() const {
  return 0.5 * dirichlet + 0.5 * mass.value_or(0.0) - volume_nl / r_exp -
         boundary_nl / q_exp;
}

EnergyBreakdown bubble_energy_halfspace(const BubbleSpec& spec, double rel_tol) {
  const int n = spec.dim;
  const double scale = 2.0 * spec.eps *
                       (spec.kind == BubbleKind::Corner
                            ? 1.0 + spec.corner_offset()
                            : 1.0);
  quad::QuadratureOptions opts;
  opts.rel_tol = rel_tol;

  EnergyBreakdown e;
  e.r_exp = spec.critical_volume_exponent();
  e.q_exp = spec.critical_trace_exponent();

  e.dirichlet = quad::halfspace_axisym_integral(
      n, [&](double rho, double z) { return axisym_grad_sq(spec, rho, z); }, scale,
      opts);
  e.volume_nl = quad::halfspace_axisym_integral(
      n,
      [&](double rho, double z) {
        return std::pow(axisym_value(spec, rho, z), e.r_exp);
      },
      scale, opts);
  e.boundary_nl =
      quad::unit_sphere_area(n - 1) *
      quad::integrate_semi_infinite(
          [&](double rho) {
            return std::pow(rho, n - 2) *
                   std::pow(axisym_value(spec, rho, 0.0), e.q_exp);
          },
          0.0, scale, opts);
  if (n >= 5) {
    e.mass = quad::halfspace_axisym_integral(
        n,
        [&](double rho, double z) {
          const double u = axisym_value(spec, rho, z);
          return u * u;
        },
        scale, opts);
  }
  return e;
}

SobolevConstants sobolev_constants(int dim) {
  if (dim < 3) throw std::invalid_argument("sobolev_constants: dim must be >= 3");
  const double n = dim;

  // Interior family at eps = 1 over the whole of R^N (radial reduction).
  const BubbleSpec interior(BubbleKind::Interior, dim, 1.0);
  const Closed ci = closed_form(interior);
  const double omega_full = quad::unit_sphere_area(dim);
  const double grad_full = omega_full * (n - 2.0) * (n - 2.0) * ci.amplitude *
                           ci.amplitude * quad::radial_integral({n + 1.0, n, 1.0});
  const double crit_full = omega_full *
                           std::pow(ci.amplitude, 2.0 * n / (n - 2.0)) *
                           quad::radial_integral({n - 1.0, n, 1.0});
  const double S = grad_full / std::pow(crit_full, (n - 2.0) / n);

  // Trace family at eps = 1 over the half-space plus its boundary trace.
  const BubbleSpec trace(BubbleKind::Trace, dim, 1.0);
  const EnergyBreakdown te = bubble_energy_halfspace(trace, 1e-10);
  const double S_T =
      te.dirichlet / std::pow(te.boundary_nl, (n - 2.0) / (n - 1.0));

  return {S, S_T};
}

double ground_state_level(int dim) {
  const BubbleSpec corner(BubbleKind::Corner, dim, 1.0);
  return bubble_energy_halfspace(corner, 1e-10).total();
}

}  // namespace nlbvp::bubbles

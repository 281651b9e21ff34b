#pragma once

// Adaptive 1-D Gauss-Kronrod quadrature plus the specialised integral
// kernels used throughout the library: radial power integrals with an
// analytic tail, axisymmetric integrals over half-space regions bounded
// by a curved graph, and the curvature-weighted boundary functionals.

#include <Eigen/Core>

#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>

namespace nlbvp::quadrature {

class QuadratureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;       // absolute floor; 0 means "relative only"
  int max_intervals = 40000;  // refinement budget before giving up
};

// Surface area of the unit sphere S^{d-1} in R^d; d >= 1.
double unit_sphere_area(int ambient_dim);

// Adaptive Gauss7/Kronrod15 on a finite interval.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts = {});

// \int_a^inf f, mapped to a finite interval via r = a + scale*t/(1-t).
// `scale` should be the characteristic decay radius of f.
double integrate_semi_infinite(const std::function<double(double)>& f, double a,
                               double scale, const QuadratureOptions& opts = {});

// Nodes/weights of the n-point Gauss-Legendre rule on [-1,1].
std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n);

// ---------------------------------------------------------------------------
// Radial power integrals  \int_0^inf r^a (c + r^2)^{-b} dr
// ---------------------------------------------------------------------------

struct RadialIntegralSpec {
  double num_power;  // a >= 0
  double den_power;  // b > 0
  double shift;      // c > 0
  // Throws std::invalid_argument when parameters are out of range or the
  // integral diverges (2b - a <= 1).
  RadialIntegralSpec(double a, double b, double c);
};

// Adaptive rule on [0,T] plus an analytic binomial tail on [T,inf); T is
// grown until the crude tail bound drops below 1e-12 of the finite part.
double radial_integral(const RadialIntegralSpec& spec, double rel_tol = 1e-12);

struct IdentityCheck {
  double lhs;
  double rhs;
  double rel_err;
};

// \int r^N/(1+r^2)^{N-1} vs (2(N-1)/(N-3)) \int r^N/(1+r^2)^N, N >= 4.
IdentityCheck identity_419_check(int dim);

// With c = 2(N-1)/(N-2):
// \int r^{N+2}/(c+r^2)^N vs (2(N-1)(N+1)/((N-2)(N-3))) \int r^N/(c+r^2)^N.
IdentityCheck ratio_lemma53_check(int dim);

// ---------------------------------------------------------------------------
// Boundary geometry near a flattened boundary point
// ---------------------------------------------------------------------------

// Local model of the domain boundary as a graph x_N = h(x') over the tangent
// plane at a boundary point, with
//   h(x') = sum_i alpha_i x_i^2 + kappa |x'|^p        (p > 2)
// on the patch |x'| < delta.  The alpha_i are half the principal curvatures,
// so the mean curvature at the origin is H(0) = (2/(N-1)) sum_i alpha_i.
struct BoundaryModel {
  int dim = 0;                   // ambient dimension N
  Eigen::VectorXd curvatures;    // alpha_1..alpha_{N-1}
  std::optional<std::pair<double, double>> curvature_bounds;  // (a, A)
  double patch_radius = 1.5;     // delta
  double perturbation_coeff = 0.0;       // kappa
  double perturbation_exponent = 2.5;    // p

  static BoundaryModel uniform(int dim, double alpha, double delta = 1.5);

  double mean_curvature() const;  // H(0)
  bool axisymmetric() const;      // all alpha_i equal
  // Validates dimensions, alpha_i > 0, H(0) > 0, delta > 0, p > 2, and the
  // two-sided bounds a|x'|^2 <= h <= A|x'|^2 when curvature_bounds is set.
  void validate() const;

  double height(const Eigen::VectorXd& xp) const;       // h(x')
  double height_axisym(double rho) const;               // requires axisymmetric()
  double slope_axisym(double rho) const;                // h'(rho)
  Eigen::VectorXd height_gradient(const Eigen::VectorXd& xp) const;
};

// ---------------------------------------------------------------------------
// Region integrals attached to a BoundaryModel
// ---------------------------------------------------------------------------
// All integrands are axisymmetric profiles f(rho, z) with rho = |x'|; the
// (N-2)-sphere factor omega_{N-2} rho^{N-2} is supplied by the integrator.
// The *_general variants integrate a genuinely (N-1)-dimensional integrand
// over the anisotropic region and exist to cross-check the exact symmetry
// reduction used by the axisymmetric path (supported for N <= 5).

using AxisymIntegrand = std::function<double(double rho, double z)>;
using PointIntegrand = std::function<double(const Eigen::VectorXd& xp, double z)>;

// Boundary-layer slab {0 < z < h(x'), |x'| < delta}.
double slab_integral_axisym(const BoundaryModel& model, const AxisymIntegrand& f,
                            const QuadratureOptions& opts = {});
double slab_integral_general(const BoundaryModel& model, const PointIntegrand& f,
                             int points_per_axis = 32);

// Surface integral over the model boundary: the graph patch
// {(x', h(x')) : |x'| < delta} with its area element, plus the flat remainder
// {(x', 0) : |x'| >= delta}.  `tail_scale` sets the decay radius used for the
// improper flat part.
double boundary_graph_integral_axisym(const BoundaryModel& model,
                                      const AxisymIntegrand& f, double tail_scale,
                                      const QuadratureOptions& opts = {});
double boundary_graph_integral_general(const BoundaryModel& model,
                                       const PointIntegrand& f, double tail_scale,
                                       int points_per_axis = 32);

// Half-space {z > 0}: omega_{N-2} int_0^inf int_0^inf f(rho,z) rho^{N-2} dz drho.
double halfspace_axisym_integral(int dim, const AxisymIntegrand& f, double scale,
                                 const QuadratureOptions& opts = {});

// Super-graph region clipped to a ball: {h~(x') < z, |x| < ball_radius} where
// h~ equals h on the patch and 0 outside.  Used for integrals that only
// converge on bounded sets.
double supergraph_ball_integral_axisym(const BoundaryModel& model,
                                       const AxisymIntegrand& f, double ball_radius,
                                       const QuadratureOptions& opts = {});

// ---------------------------------------------------------------------------
// Curvature-weighted functionals and the paper-independent sign checks
// ---------------------------------------------------------------------------

// \int_{R^{N-1}} g(x') |x'|^{2m} (c + |x'|^2)^{-b} dx'  with g = sum alpha_i x_i^2,
// reduced exactly by symmetry to (1/2) H(0) omega_{N-2} \int_0^inf r^{N+2m} (c+r^2)^{-b} dr
// and evaluated with the adaptive engine.  Accepts curvatures of any sign
// (the functional is linear in g).
double g_moment_integral(int dim, const Eigen::VectorXd& curvatures, int m,
                         double c, double b, double rel_tol = 1e-12);

enum class SignCondition {
  TraceCriticalCurvature,   // the N>=4 curvature condition of the trace-critical regime
  DoublyCriticalCurvature,  // the N>=4 curvature condition of the doubly critical regime
};

// Left-hand side of the named condition, assembled from its separate
// curvature-weighted integrals (each evaluated by quadrature).  Requires
// N >= 4 and H(0) > 0; the caller asserts negativity.
double sign_condition(SignCondition which, int dim, const BoundaryModel& model);

// The same quantity collapsed to a single radial integral by the
// integration-by-parts ratio identities; used as a cross-check.
double sign_condition_closed_form(SignCondition which, int dim,
                                  const BoundaryModel& model);

}  // namespace nlbvp::quadrature

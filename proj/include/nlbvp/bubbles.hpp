#pragma once

// The three explicit solution families of the half-space limit problems:
//
//   Interior:  -Δu = u^{(N+2)/(N-2)} in R^N_+,  ∂u/∂ν = 0            on x_N = 0
//   Trace:      Δu = 0              in R^N_+,  ∂u/∂ν = u^{N/(N-2)}   on x_N = 0
//   Corner:    -Δu = u^{(N+2)/(N-2)} in R^N_+,  ∂u/∂ν = u^{N/(N-2)}  on x_N = 0
//
// together with their energies over the half-space and the optimal Sobolev /
// trace-Sobolev constants they realise.

#include <Eigen/Core>

#include <optional>

namespace nlbvp::bubbles {

enum class BubbleKind { Interior, Trace, Corner };

struct BubbleSpec {
  BubbleKind kind;
  int dim;      // N >= 3
  double eps;   // concentration parameter, > 0

  BubbleSpec(BubbleKind k, int N, double e);

  double critical_volume_exponent() const;  // 2N/(N-2)
  double critical_trace_exponent() const;   // 2(N-1)/(N-2)
  // Corner family only: the center sits at depth eps * sqrt(N/(N-2)).
  double corner_offset() const;
};

// Pointwise evaluation on the closed half-space {x_N >= 0}.
double eval_bubble(const BubbleSpec& spec, const Eigen::VectorXd& x);
Eigen::VectorXd bubble_gradient(const BubbleSpec& spec, const Eigen::VectorXd& x);
double bubble_laplacian(const BubbleSpec& spec, const Eigen::VectorXd& x);

// Axisymmetric profiles in (rho, z) = (|x'|, x_N); used by the region
// integrators, which supply the omega_{N-2} rho^{N-2} factor.
double axisym_value(const BubbleSpec& spec, double rho, double z);
double axisym_grad_sq(const BubbleSpec& spec, double rho, double z);

struct ResidualReport {
  double interior_max;  // max |  -Δu + f_v(u) offset | over interior samples
  double boundary_max;  // max | -∂u/∂x_N - f_b(u) |   over boundary samples
};

// Strong-form residuals of the limit problem satisfied by `spec`, evaluated
// from the analytic derivatives.  Rows of `points` are sample locations in
// the closed half-space; rows with x_N = 0 feed the boundary residual.
ResidualReport pde_residual(const BubbleSpec& spec, const Eigen::MatrixXd& points);

struct EnergyBreakdown {
  double dirichlet = 0.0;             // \int |∇u|^2
  std::optional<double> mass;         // \int u^2   (empty when divergent)
  double volume_nl = 0.0;             // \int |u|^r
  double boundary_nl = 0.0;           // \oint |u|^q
  double r_exp = 0.0;
  double q_exp = 0.0;
  // dirichlet/2 + mass/2 - volume_nl/r - boundary_nl/q, with absent mass = 0.
  double total() const;
};

// Energy pieces of the family over R^N_+ at the critical exponents
// r = 2N/(N-2), q = 2(N-1)/(N-2).  The half-space mass integral diverges for
// N <= 4 and is reported as absent.
EnergyBreakdown bubble_energy_halfspace(const BubbleSpec& spec,
                                        double rel_tol = 1e-10);

struct SobolevConstants {
  double S;    // optimal constant of H^1(R^N) -> L^{2N/(N-2)}
  double S_T;  // optimal constant of H^1(R^N_+) -> L^{2(N-1)/(N-2)}(boundary)
};

SobolevConstants sobolev_constants(int dim);

// Least-energy level of the doubly critical half-space problem: the corner
// family's value of  dirichlet/2 - volume/2* - boundary/2_*.
double ground_state_level(int dim);

}  // namespace nlbvp::bubbles

#include "nlbvp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

namespace nlbvp::quadrature {

namespace {

// 15-point Kronrod extension of 7-point Gauss, positive half of the nodes.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct PanelResult {
  double value;
  double error;
  double resabs;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double hlgth = 0.5 * (b - a);
  const double centr = 0.5 * (a + b);

  double fv[15];
  fv[7] = f(centr);
  for (int j = 0; j < 7; ++j) {
    const double dx = hlgth * kXgk[j];
    fv[j] = f(centr - dx);
    fv[14 - j] = f(centr + dx);
  }

  double resg = kWg[3] * fv[7];
  double resk = kWgk[7] * fv[7];
  double resabs = kWgk[7] * std::abs(fv[7]);
  for (int j = 0; j < 7; ++j) {
    const double sum = fv[j] + fv[14 - j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }

  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fv[7] - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv[j] - reskh) + std::abs(fv[14 - j] - reskh));

  const double value = resk * hlgth;
  resabs *= std::abs(hlgth);
  resasc *= std::abs(hlgth);
  double err = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && err != 0.0)
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double round = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
  err = std::max(err, round);
  return {value, err, resabs};
}

struct Panel {
  double error;
  double a;
  double b;
  double value;
  double resabs;
};

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a < y.a;  // deterministic tie-break
  }
};

}  // namespace

double unit_sphere_area(int ambient_dim) {
  if (ambient_dim < 1)
    throw std::invalid_argument("unit_sphere_area: dimension must be >= 1");
  const double d = static_cast<double>(ambient_dim);
  return 2.0 * std::exp(0.5 * d * std::log(M_PI) - std::lgamma(0.5 * d));
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opts) {
  if (!(std::isfinite(a) && std::isfinite(b)))
    throw std::invalid_argument("integrate: endpoints must be finite");
  if (a == b) return 0.0;

  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
  double total_resabs = 0.0;
  auto push = [&](double lo, double hi) {
    const PanelResult r = gk15(f, lo, hi);
    if (!std::isfinite(r.value))
      throw QuadratureError("integrate: non-finite integrand value");
    heap.push({r.error, lo, hi, r.value, r.resabs});
    total_resabs += r.resabs;
    return r;
  };

  PanelResult whole = push(a, b);
  double total = whole.value;
  double total_err = whole.error;
  int panels = 1;

  const double safety = 0.05;  // |K-G|-based estimates can flatter themselves
  const double eps = std::numeric_limits<double>::epsilon();
  while (true) {
    // past the roundoff floor further bisection cannot help
    const double goal =
        std::max({opts.rel_tol * std::abs(total) * safety, opts.abs_tol * safety,
                  100.0 * eps * total_resabs, 1e-305});
    if (total_err <= goal) break;
    if (panels >= opts.max_intervals) {
      std::ostringstream msg;
      msg << "integrate: interval budget exhausted (err=" << total_err
          << ", value=" << total << ")";
      throw QuadratureError(msg.str());
    }
    Panel worst = heap.top();
    heap.pop();
    total -= worst.value;
    total_err -= worst.error;
    total_resabs -= worst.resabs;
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval at rounding resolution; keep its estimate and move on
      total += worst.value;
      total_resabs += worst.resabs;
      heap.push({0.0, worst.a, worst.b, worst.value, worst.resabs});
      continue;
    }
    PanelResult left = push(worst.a, mid);
    PanelResult right = push(mid, worst.b);
    total += left.value + right.value;
    total_err += left.error + right.error;
    ++panels;
  }
  return total;
}

double integrate_semi_infinite(const std::function<double(double)>& f, double a,
                               double scale, const QuadratureOptions& opts) {
  if (!(scale > 0.0))
    throw std::invalid_argument("integrate_semi_infinite: scale must be > 0");
  auto mapped = [&](double t) {
    const double om = 1.0 - t;
    const double r = a + scale * t / om;
    if (!std::isfinite(r)) return 0.0;
    const double v = f(r) * scale / (om * om);
    return std::isfinite(v) ? v : 0.0;
  };
  return integrate(mapped, 0.0, 1.0, opts);
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  Eigen::VectorXd x(n), w(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
  return {x, w};
}

// ---------------------------------------------------------------------------
// Radial power integrals
// ---------------------------------------------------------------------------

RadialIntegralSpec::RadialIntegralSpec(double a, double b, double c)
    : num_power(a), den_power(b), shift(c) {
  if (!(a >= 0.0)) throw std::invalid_argument("RadialIntegralSpec: a must be >= 0");
  if (!(b > 0.0)) throw std::invalid_argument("RadialIntegralSpec: b must be > 0");
  if (!(c > 0.0)) throw std::invalid_argument("RadialIntegralSpec: c must be > 0");
  if (!(2.0 * b - a > 1.0))
    throw std::invalid_argument("RadialIntegralSpec: divergent (2b - a <= 1)");
}

double radial_integral(const RadialIntegralSpec& spec, double rel_tol) {
  const double a = spec.num_power, b = spec.den_power, c = spec.shift;
  const double s = 2.0 * b - a - 1.0;  // tail decays like r^{-s-1}
  auto f = [&](double r) { return std::pow(r, a) * std::pow(c + r * r, -b); };

  QuadratureOptions opts;
  opts.rel_tol = rel_tol * 0.1;

  double T = std::max(10.0 * std::sqrt(c), 10.0);
  double finite = 0.0;
  for (int attempt = 0;; ++attempt) {
    finite = integrate(f, 0.0, T, opts);
    const double tail_bound = std::pow(T, -s) / s;
    if (tail_bound <= 1e-12 * std::abs(finite) || attempt > 40) break;
    T *= 3.0;
  }

  // Binomial expansion of (1 + c/r^2)^{-b} integrated term by term on [T,inf).
  double tail = 0.0;
  double coef = 1.0;  // binom(-b, k) * c^k
  for (int k = 0; k < 200; ++k) {
    const double term = coef * std::pow(T, -(s + 2.0 * k)) / (s + 2.0 * k);
    tail += term;
    if (std::abs(term) <= 1e-17 * std::abs(finite)) break;
    coef *= -(b + k) * c / (k + 1.0);
  }
  return finite + tail;
}

IdentityCheck identity_419_check(int dim) {
  if (dim < 4)
    throw std::invalid_argument(
        "identity_419_check: requires N >= 4 (the (N-3) divisor vanishes)");
  const double n = static_cast<double>(dim);
  const double lhs = radial_integral({n, n - 1.0, 1.0});
  const double rhs = 2.0 * (n - 1.0) / (n - 3.0) * radial_integral({n, n, 1.0});
  return {lhs, rhs, std::abs(lhs - rhs) / std::abs(rhs)};
}

IdentityCheck ratio_lemma53_check(int dim) {
  if (dim < 4)
    throw std::invalid_argument(
        "ratio_lemma53_check: requires N >= 4 (the (N-3) divisor vanishes)");
  const double n = static_cast<double>(dim);
  const double c = 2.0 * (n - 1.0) / (n - 2.0);
  const double lhs = radial_integral({n + 2.0, n, c});
  const double rhs = 2.0 * (n - 1.0) * (n + 1.0) / ((n - 2.0) * (n - 3.0)) *
                     radial_integral({n, n, c});
  return {lhs, rhs, std::abs(lhs - rhs) / std::abs(rhs)};
}

// ---------------------------------------------------------------------------
// BoundaryModel
// ---------------------------------------------------------------------------

BoundaryModel BoundaryModel::uniform(int dim, double alpha, double delta) {
  BoundaryModel m;
  m.dim = dim;
  m.curvatures = Eigen::VectorXd::Constant(dim - 1, alpha);
  m.patch_radius = delta;
  return m;
}

double BoundaryModel::mean_curvature() const {
  return 2.0 / (dim - 1.0) * curvatures.sum();
}

bool BoundaryModel::axisymmetric() const {
  if (curvatures.size() == 0) return true;
  const double a0 = curvatures[0];
  return ((curvatures.array() - a0).abs() < 1e-14 * (1.0 + std::abs(a0))).all();
}

void BoundaryModel::validate() const {
  if (dim < 3) throw std::invalid_argument("BoundaryModel: dim must be >= 3");
  if (curvatures.size() != dim - 1)
    throw std::invalid_argument("BoundaryModel: need N-1 curvatures");
  if (!(curvatures.array() > 0.0).all())
    throw std::invalid_argument("BoundaryModel: curvatures must be positive");
  if (!(mean_curvature() > 0.0))
    throw std::invalid_argument("BoundaryModel: mean curvature must be positive");
  if (!(patch_radius > 0.0))
    throw std::invalid_argument("BoundaryModel: patch radius must be positive");
  if (!(perturbation_exponent > 2.0))
    throw std::invalid_argument("BoundaryModel: perturbation exponent must exceed 2");
  if (curvature_bounds) {
    const auto [lo, hi] = *curvature_bounds;
    const double kd = perturbation_coeff *
                      std::pow(patch_radius, perturbation_exponent - 2.0);
    const double env_lo = curvatures.minCoeff() + std::min(0.0, kd);
    const double env_hi = curvatures.maxCoeff() + std::max(0.0, kd);
    if (!(lo <= env_lo) || !(env_hi <= hi))
      throw std::invalid_argument(
          "BoundaryModel: height function violates the stated two-sided bounds");
  }
}

double BoundaryModel::height(const Eigen::VectorXd& xp) const {
  double h = curvatures.dot(xp.cwiseProduct(xp));
  if (perturbation_coeff != 0.0)
    h += perturbation_coeff * std::pow(xp.norm(), perturbation_exponent);
  return h;
}

double BoundaryModel::height_axisym(double rho) const {
  if (!axisymmetric())
    throw std::logic_error("BoundaryModel: axisymmetric path needs equal curvatures");
  double h = curvatures[0] * rho * rho;
  if (perturbation_coeff != 0.0)
    h += perturbation_coeff * std::pow(rho, perturbation_exponent);
  return h;
}

double BoundaryModel::slope_axisym(double rho) const {
  if (!axisymmetric())
    throw std::logic_error("BoundaryModel: axisymmetric path needs equal curvatures");
  double dh = 2.0 * curvatures[0] * rho;
  if (perturbation_coeff != 0.0)
    dh += perturbation_coeff * perturbation_exponent *
          std::pow(rho, perturbation_exponent - 1.0);
  return dh;
}

Eigen::VectorXd BoundaryModel::height_gradient(const Eigen::VectorXd& xp) const {
  Eigen::VectorXd g = 2.0 * curvatures.cwiseProduct(xp);
  if (perturbation_coeff != 0.0) {
    const double r = xp.norm();
    if (r > 0.0)
      g += perturbation_coeff * perturbation_exponent *
           std::pow(r, perturbation_exponent - 2.0) * xp;
  }
  return g;
}

// ---------------------------------------------------------------------------
// Region integrals
// ---------------------------------------------------------------------------

namespace {

QuadratureOptions inner_options(const QuadratureOptions& outer) {
  QuadratureOptions o;
  o.rel_tol = outer.rel_tol * 0.05;
  o.max_intervals = outer.max_intervals;
  return o;
}

// Tensor rule for the unit sphere S^{d-1} in R^d, d in {2,3,4}: list of
// (direction, weight) pairs whose weighted sum reproduces \int_{S^{d-1}}.
std::vector<std::pair<Eigen::VectorXd, double>> angular_rule(int d, int n) {
  std::vector<std::pair<Eigen::VectorXd, double>> rule;
  if (d == 2) {
    // periodic trapezoid rule: spectrally accurate on the circle
    for (int i = 0; i < n; ++i) {
      const double phi = 2.0 * M_PI * i / n;
      Eigen::VectorXd v(2);
      v << std::cos(phi), std::sin(phi);
      rule.emplace_back(v, 2.0 * M_PI / n);
    }
  } else if (d == 3) {
    const auto [xu, wu] = gauss_legendre(n);  // u = cos(psi)
    for (int i = 0; i < n; ++i) {
      const double su = std::sqrt(std::max(0.0, 1.0 - xu[i] * xu[i]));
      for (int j = 0; j < n; ++j) {
        const double phi = 2.0 * M_PI * j / n;
        Eigen::VectorXd v(3);
        v << su * std::cos(phi), su * std::sin(phi), xu[i];
        rule.emplace_back(v, wu[i] * 2.0 * M_PI / n);
      }
    }
  } else if (d == 4) {
    const auto [xc, wc] = gauss_legendre(n);  // chi mapped from [-1,1] to [0,pi]
    const auto inner3 = angular_rule(3, n);
    for (int i = 0; i < n; ++i) {
      const double chi = 0.5 * M_PI * (xc[i] + 1.0);
      const double s = std::sin(chi);
      const double wchi = wc[i] * 0.5 * M_PI * s * s;
      for (const auto& [v3, w3] : inner3) {
        Eigen::VectorXd v(4);
        v << s * v3[0], s * v3[1], s * v3[2], std::cos(chi);
        rule.emplace_back(v, wchi * w3);
      }
    }
  } else {
    throw std::invalid_argument(
        "angular_rule: general path supports ambient dimension N <= 5");
  }
  return rule;
}

}  // namespace

double slab_integral_axisym(const BoundaryModel& model, const AxisymIntegrand& f,
                            const QuadratureOptions& opts) {
  const int N = model.dim;
  const double w = unit_sphere_area(N - 1);
  const QuadratureOptions in = inner_options(opts);
  auto outer = [&](double rho) {
    const double h = model.height_axisym(rho);
    if (!(h > 0.0)) return 0.0;
    const double inner = integrate([&](double z) { return f(rho, z); }, 0.0, h, in);
    return std::pow(rho, N - 2) * inner;
  };
  return w * integrate(outer, 0.0, model.patch_radius, opts);
}

double slab_integral_general(const BoundaryModel& model, const PointIntegrand& f,
                             int points_per_axis) {
  const int N = model.dim;
  const auto dirs = angular_rule(N - 1, points_per_axis);
  QuadratureOptions in;
  in.rel_tol = 1e-11;
  QuadratureOptions out;
  out.rel_tol = 1e-9;
  auto outer = [&](double r) {
    double sum = 0.0;
    Eigen::VectorXd xp(N - 1);
    for (const auto& [dir, wd] : dirs) {
      xp = r * dir;
      const double h = model.height(xp);
      if (!(h > 0.0)) continue;
      sum += wd * integrate([&](double z) { return f(xp, z); }, 0.0, h, in);
    }
    return std::pow(r, N - 2) * sum;
  };
  return integrate(outer, 0.0, model.patch_radius, out);
}

double boundary_graph_integral_axisym(const BoundaryModel& model,
                                      const AxisymIntegrand& f, double tail_scale,
                                      const QuadratureOptions& opts) {
  const int N = model.dim;
  const double w = unit_sphere_area(N - 1);
  auto patch = [&](double rho) {
    const double h = model.height_axisym(rho);
    const double dh = model.slope_axisym(rho);
    return std::pow(rho, N - 2) * f(rho, h) * std::sqrt(1.0 + dh * dh);
  };
  auto flat = [&](double rho) { return std::pow(rho, N - 2) * f(rho, 0.0); };
  const double graph_part = integrate(patch, 0.0, model.patch_radius, opts);
  const double flat_part =
      integrate_semi_infinite(flat, model.patch_radius, tail_scale, opts);
  return w * (graph_part + flat_part);
}

double boundary_graph_integral_general(const BoundaryModel& model,
                                       const PointIntegrand& f, double tail_scale,
                                       int points_per_axis) {
  const int N = model.dim;
  const auto dirs = angular_rule(N - 1, points_per_axis);
  QuadratureOptions out;
  out.rel_tol = 1e-9;
  auto patch = [&](double r) {
    double sum = 0.0;
    Eigen::VectorXd xp(N - 1);
    for (const auto& [dir, wd] : dirs) {
      xp = r * dir;
      const double h = model.height(xp);
      const double gn = model.height_gradient(xp).norm();
      sum += wd * f(xp, h) * std::sqrt(1.0 + gn * gn);
    }
    return std::pow(r, N - 2) * sum;
  };
  // outside the patch the boundary is flat and the integrand axisymmetric
  auto flat = [&](double r) {
    Eigen::VectorXd xp = Eigen::VectorXd::Zero(N - 1);
    xp[0] = r;
    return std::pow(r, N - 2) * f(xp, 0.0);
  };
  const double graph_part = integrate(patch, 0.0, model.patch_radius, out);
  const double flat_part = unit_sphere_area(N - 1) *
      integrate_semi_infinite(flat, model.patch_radius, tail_scale, out);
  return graph_part + flat_part;
}

double halfspace_axisym_integral(int dim, const AxisymIntegrand& f, double scale,
                                 const QuadratureOptions& opts) {
  const double w = unit_sphere_area(dim - 1);
  const QuadratureOptions in = inner_options(opts);
  auto outer = [&](double rho) {
    const double inner =
        integrate_semi_infinite([&](double z) { return f(rho, z); }, 0.0, scale, in);
    return std::pow(rho, dim - 2) * inner;
  };
  return w * integrate_semi_infinite(outer, 0.0, scale, opts);
}

double supergraph_ball_integral_axisym(const BoundaryModel& model,
                                       const AxisymIntegrand& f, double ball_radius,
                                       const QuadratureOptions& opts) {
  const int N = model.dim;
  const double w = unit_sphere_area(N - 1);
  const double delta = std::min(model.patch_radius, ball_radius);
  const QuadratureOptions in = inner_options(opts);
  auto column = [&](double rho) {
    const double zmax =
        std::sqrt(std::max(0.0, ball_radius * ball_radius - rho * rho));
    const double zmin = rho < delta ? std::max(0.0, model.height_axisym(rho)) : 0.0;
    if (zmin >= zmax) return 0.0;
    const double inner = integrate([&](double z) { return f(rho, z); }, zmin, zmax, in);
    return std::pow(rho, N - 2) * inner;
  };
  return w * integrate(column, 0.0, ball_radius, opts);
}

// ---------------------------------------------------------------------------
// Curvature-weighted functionals
// ---------------------------------------------------------------------------

double g_moment_integral(int dim, const Eigen::VectorXd& curvatures, int m,
                         double c, double b, double rel_tol) {
  if (dim < 3) throw std::invalid_argument("g_moment_integral: dim must be >= 3");
  if (curvatures.size() != dim - 1)
    throw std::invalid_argument("g_moment_integral: need N-1 curvatures");
  // sum_i alpha_i \int x_i^2 |x'|^{2m} w(|x'|) dx'
  //   = (sum alpha / (N-1)) \int |x'|^{2m+2} w(|x'|) dx'
  const double h0 = 2.0 / (dim - 1.0) * curvatures.sum();
  const double radial =
      radial_integral({static_cast<double>(dim + 2 * m), b, c}, rel_tol);
  return 0.5 * h0 * unit_sphere_area(dim - 1) * radial;
}

namespace {

void check_sign_condition_args(int dim, const BoundaryModel& model) {
  if (dim < 4)
    throw std::invalid_argument("sign_condition: requires N >= 4");
  if (model.dim != dim)
    throw std::invalid_argument("sign_condition: model dimension mismatch");
  if (!(model.mean_curvature() > 0.0))
    throw std::invalid_argument("sign_condition: requires positive mean curvature");
}

}  // namespace

double sign_condition(SignCondition which, int dim, const BoundaryModel& model) {
  check_sign_condition_args(dim, model);
  const double n = static_cast<double>(dim);
  const auto& al = model.curvatures;
  if (which == SignCondition::TraceCriticalCurvature) {
    // (N-2)^N [ \int g/(1+|x'|^2)^N - (1/2) \int g/(1+|x'|^2)^{N-1} ]
    const double gN = g_moment_integral(dim, al, 0, 1.0, n);
    const double gNm1 = g_moment_integral(dim, al, 0, 1.0, n - 1.0);
    return std::pow(n - 2.0, n) * (gN - 0.5 * gNm1);
  }
  // Doubly critical: gradient, volume and boundary first-order terms of the
  // corner family combined with weights 1/2, 1/2*, 1/2_*.
  const double c = 2.0 * (n - 1.0) / (n - 2.0);
  const double xn0sq = n / (n - 2.0);
  const double K = std::pow(n, 0.5 * (n - 2.0)) * std::pow(n - 2.0, 0.5 * (n + 2.0));
  const double m0 = g_moment_integral(dim, al, 0, c, n);
  const double m1 = g_moment_integral(dim, al, 1, c, n);
  const double grad_term = -0.5 * K * (m1 + xn0sq * m0);
  const double volume_term = 0.5 * K * m0;
  const double boundary_term =
      std::pow(n, 0.5 * n) * std::pow(n - 2.0, 0.5 * n) * m0;
  return grad_term + volume_term + boundary_term;
}

double sign_condition_closed_form(SignCondition which, int dim,
                                  const BoundaryModel& model) {
  check_sign_condition_args(dim, model);
  const double n = static_cast<double>(dim);
  const double h0 = model.mean_curvature();
  const double omega = unit_sphere_area(dim - 1);
  if (which == SignCondition::TraceCriticalCurvature) {
    const double y = radial_integral({n, n, 1.0});
    return -std::pow(n - 2.0, n) * h0 * omega / (n - 3.0) * y;
  }
  const double c = 2.0 * (n - 1.0) / (n - 2.0);
  const double y = radial_integral({n, n, c});
  return -2.0 * std::pow(n, 0.5 * (n - 2.0)) * std::pow(n - 2.0, 0.5 * n) *
         (n - 1.0) / (n - 3.0) * h0 * omega * y;
}

}  // namespace nlbvp::quadrature

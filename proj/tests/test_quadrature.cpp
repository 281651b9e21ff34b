#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nlbvp/quadrature.hpp"
#include "support.hpp"

using namespace nlbvp::quadrature;

TEST_CASE("unit sphere areas") {
  CHECK(unit_sphere_area(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(unit_sphere_area(2) == doctest::Approx(2.0 * M_PI).epsilon(1e-14));
  CHECK(unit_sphere_area(3) == doctest::Approx(4.0 * M_PI).epsilon(1e-14));
  CHECK(unit_sphere_area(4) == doctest::Approx(2.0 * M_PI * M_PI).epsilon(1e-14));
  CHECK_THROWS_AS(unit_sphere_area(0), std::invalid_argument);
}

TEST_CASE("adaptive engine on finite intervals") {
  CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  // peaked integrand: scale separation of 1e4
  const double eps = 1e-4;
  const double val = integrate(
      [&](double x) { return eps / (eps * eps + x * x); }, 0.0, 1.0,
      {.rel_tol = 1e-12});
  CHECK(val == doctest::Approx(std::atan(1.0 / eps)).epsilon(1e-11));
  CHECK(integrate([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("semi-infinite mapping") {
  // \int_0^inf e^{-r} = 1
  CHECK(integrate_semi_infinite([](double r) { return std::exp(-r); }, 0.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-11));
  // \int_1^inf r^{-3} = 1/2
  CHECK(integrate_semi_infinite([](double r) { return std::pow(r, -3.0); }, 1.0,
                                1.0) == doctest::Approx(0.5).epsilon(1e-11));
}

TEST_CASE("gauss-legendre rule integrates polynomials exactly") {
  const auto [x, w] = gauss_legendre(12);
  double s = 0.0;
  for (int i = 0; i < 12; ++i) s += w[i] * std::pow(x[i], 10);
  CHECK(s == doctest::Approx(2.0 / 11.0).epsilon(1e-13));
  CHECK(w.sum() == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("radial integral reference values") {
  CHECK(radial_integral({5, 5, 1}) == doctest::Approx(1.0 / 24.0).epsilon(1e-10));
  CHECK(radial_integral({1, 2, 4}) == doctest::Approx(1.0 / 8.0).epsilon(1e-10));
  CHECK(radial_integral({5, 4, 1}) == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
  CHECK(radial_integral({5, 4, 1}) / radial_integral({5, 5, 1}) ==
        doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("radial integral matches Beta closed form on a half-integer grid") {
  for (int ia = 0; ia <= 12; ++ia) {
    for (int ib = 2; ib <= 16; ++ib) {
      const double a = 0.5 * ia;
      const double b = 0.5 * ib;
      if (!(2.0 * b - a > 1.0)) continue;
      for (double c : {0.5, 1.0, 8.0 / 3.0}) {
        const double got = radial_integral({a, b, c});
        const double want = oracle::radial_beta(a, b, c);
        CHECK(got == doctest::Approx(want).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("radial integral scaling law") {
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> ua(0.0, 6.0), uc(0.2, 9.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = ua(rng);
    const double b = a + std::uniform_real_distribution<double>(1.2, 6.0)(rng);
    const double c = uc(rng);
    if (!(2.0 * b - a > 1.0)) continue;
    const double base = radial_integral({a, b, 1.0});
    const double scaled = radial_integral({a, b, c});
    const double predicted = std::pow(c, 0.5 * (a + 1.0) - b) * base;
    CHECK(scaled == doctest::Approx(predicted).epsilon(1e-10));
  }
}

TEST_CASE("radial integral rejects divergent and malformed specs") {
  CHECK_THROWS_AS(RadialIntegralSpec(3, 2, 1), std::invalid_argument);   // 2b-a=1
  CHECK_THROWS_AS(RadialIntegralSpec(5, 3, 1), std::invalid_argument);   // 2b-a<1
  CHECK_THROWS_AS(RadialIntegralSpec(-1, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(RadialIntegralSpec(1, -2, 1), std::invalid_argument);
  CHECK_THROWS_AS(RadialIntegralSpec(1, 3, 0), std::invalid_argument);
}

TEST_CASE("integration-by-parts identities across dimensions") {
  for (int n = 4; n <= 10; ++n) {
    const auto id = identity_419_check(n);
    CHECK(id.rel_err < 1e-9);
    const auto ratio = ratio_lemma53_check(n);
    CHECK(ratio.rel_err < 1e-9);
  }
  // frozen ratios: 2(N-1)(N+1)/((N-2)(N-3))
  CHECK(ratio_lemma53_check(4).lhs / radial_integral({4, 4, 3.0}) ==
        doctest::Approx(15.0).epsilon(1e-9));
  CHECK(ratio_lemma53_check(5).lhs /
            radial_integral({5, 5, 8.0 / 3.0}) ==
        doctest::Approx(8.0).epsilon(1e-9));
  CHECK(ratio_lemma53_check(6).lhs / radial_integral({6, 6, 2.5}) ==
        doctest::Approx(35.0 / 6.0).epsilon(1e-9));
  // N=5 left-hand side of the c=1 identity: \int r^5/(1+r^2)^4 = 1/6
  CHECK(identity_419_check(5).lhs == doctest::Approx(1.0 / 6.0).epsilon(1e-10));
  CHECK_THROWS_AS(identity_419_check(3), std::invalid_argument);
  CHECK_THROWS_AS(ratio_lemma53_check(3), std::invalid_argument);
}

TEST_CASE("boundary model validation") {
  auto m = BoundaryModel::uniform(4, 0.5);
  m.validate();
  CHECK(m.mean_curvature() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(m.axisymmetric());

  auto bad = BoundaryModel::uniform(4, -0.5);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  auto wrong_count = BoundaryModel::uniform(4, 0.5);
  wrong_count.curvatures.resize(2);
  CHECK_THROWS_AS(wrong_count.validate(), std::invalid_argument);

  // two-sided bounds: satisfied for kappa=0 with a=A=alpha, violated when the
  // perturbation pushes the height above A|x'|^2
  auto bounded = BoundaryModel::uniform(3, 0.5);
  bounded.curvature_bounds = {{0.5, 0.5}};
  bounded.validate();
  bounded.perturbation_coeff = 0.2;
  CHECK_THROWS_AS(bounded.validate(), std::invalid_argument);
  bounded.curvature_bounds = {{0.5, 0.8}};
  bounded.validate();
}

TEST_CASE("slab integral: empty region and leading-order coefficient") {
  auto flat = BoundaryModel::uniform(4, 0.0);
  auto one = [](double, double) { return 1.0; };
  CHECK(slab_integral_axisym(flat, one) == 0.0);

  // For f depending only on |x'| to leading order, the slab integral behaves
  // like eps * \int g(y') f(y',0) dy' after rescaling.  Use the interior
  // gradient-squared profile at N=4, alpha=1/2, eps=1e-2 and compare with the
  // known first-order value.
  const int N = 4;
  const double eps = 1e-2;
  auto m = BoundaryModel::uniform(N, 0.5);
  const double K = std::pow(4.0, 1.0) * std::pow(2.0, 3.0);  // N^{(N-2)/2}(N-2)^{(N+2)/2}
  auto grad_sq = [&](double rho, double z) {
    const double d = eps * eps + rho * rho + z * z;
    return K * eps * eps * (rho * rho + z * z) / std::pow(d, N);
  };
  const double slab = slab_integral_axisym(m, grad_sq, {.rel_tol = 1e-10});
  const double first_order =
      eps * K * g_moment_integral(N, m.curvatures, 1, 1.0, N);
  CHECK(slab == doctest::Approx(first_order).epsilon(0.03));
}

TEST_CASE("axisymmetric and general region paths agree") {
  // N=4, equal curvatures: same region through both code paths
  const int N = 4;
  auto m = BoundaryModel::uniform(N, 0.5, 1.0);
  const double eps = 0.1;
  auto profile = [&](double rho, double z) {
    const double d = eps * eps + rho * rho + z * z;
    return 1.0 / std::pow(d, N - 1);
  };
  const double axi = slab_integral_axisym(m, profile, {.rel_tol = 1e-10});
  const double gen = slab_integral_general(
      m, [&](const Eigen::VectorXd& xp, double z) { return profile(xp.norm(), z); },
      32);
  CHECK(gen == doctest::Approx(axi).epsilon(1e-8));

  // distinct curvatures: the general path against the exact symmetry
  // reduction of the first-order term (linearity of g-integration)
  auto m2 = BoundaryModel::uniform(N, 0.5, 1.0);
  m2.curvatures << 0.3, 0.5, 0.7;
  const double eps2 = 1e-3;
  auto peaked = [&](double rho, double z) {
    const double d = eps2 * eps2 + rho * rho + z * z;
    return eps2 * eps2 / std::pow(d, N - 1);
  };
  const double gen2 = slab_integral_general(
      m2, [&](const Eigen::VectorXd& xp, double z) { return peaked(xp.norm(), z); },
      32);
  const double predicted = eps2 * g_moment_integral(N, m2.curvatures, 0, 1.0, N - 1.0);
  CHECK(gen2 == doctest::Approx(predicted).epsilon(0.02));
}

TEST_CASE("boundary graph integral reduces to the flat plane at zero curvature") {
  const int N = 4;
  auto flat = BoundaryModel::uniform(N, 0.0);
  auto profile = [](double rho, double) { return 1.0 / std::pow(1.0 + rho * rho, 4.0); };
  const double got = boundary_graph_integral_axisym(flat, profile, 1.0);
  const double want = unit_sphere_area(N - 1) * oracle::radial_beta(N - 2.0, 4.0, 1.0);
  CHECK(got == doctest::Approx(want).epsilon(1e-9));
}

TEST_CASE("halfspace axisymmetric integral against a product closed form") {
  // \int_{z>0} e^{-|x|^2} dx over R^4_+ = pi^2/2
  const double got = halfspace_axisym_integral(
      4, [](double rho, double z) { return std::exp(-(rho * rho + z * z)); }, 1.0);
  CHECK(got == doctest::Approx(0.5 * M_PI * M_PI).epsilon(1e-10));
}

TEST_CASE("supergraph ball integral: flat model gives the half-ball") {
  auto flat = BoundaryModel::uniform(3, 0.0);
  const double got = supergraph_ball_integral_axisym(
      flat, [](double, double) { return 1.0; }, 1.0, {.rel_tol = 1e-9});
  CHECK(got == doctest::Approx(2.0 * M_PI / 3.0).epsilon(1e-8));
}

TEST_CASE("sign conditions are negative and match their collapsed forms") {
  for (int n : {4, 5, 6, 7}) {
    auto m = BoundaryModel::uniform(n, 0.5);
    for (auto which : {SignCondition::TraceCriticalCurvature,
                       SignCondition::DoublyCriticalCurvature}) {
      const double lhs = sign_condition(which, n, m);
      const double closed = sign_condition_closed_form(which, n, m);
      CHECK(lhs < 0.0);
      CHECK(lhs == doctest::Approx(closed).epsilon(1e-8));
    }
  }
}

TEST_CASE("sign condition rejects N=3 and nonpositive mean curvature") {
  auto m3 = BoundaryModel::uniform(3, 0.5);
  CHECK_THROWS_AS(sign_condition(SignCondition::TraceCriticalCurvature, 3, m3),
                  std::invalid_argument);
  auto neg = BoundaryModel::uniform(5, -0.5);
  CHECK_THROWS_AS(sign_condition(SignCondition::TraceCriticalCurvature, 5, neg),
                  std::invalid_argument);
}

TEST_CASE("curvature-weighted integrals are linear in the curvatures") {
  // flipping the sign of every alpha_i flips the sign of the functional
  Eigen::VectorXd al(4);
  al << 0.2, 0.4, 0.6, 0.8;
  const double plus = g_moment_integral(5, al, 0, 1.0, 5.0);
  const double minus = g_moment_integral(5, (-al).eval(), 0, 1.0, 5.0);
  CHECK(plus > 0.0);
  CHECK(minus == doctest::Approx(-plus).epsilon(1e-12));
  // doubling doubles
  const double twice = g_moment_integral(5, (2.0 * al).eval(), 0, 1.0, 5.0);
  CHECK(twice == doctest::Approx(2.0 * plus).epsilon(1e-12));
}

TEST_CASE("trace-critical sign condition at N=5 against the explicit value") {
  // closed form: -(N-2)^N H(0) omega_{N-2} (1/(N-3)) \int r^N/(1+r^2)^N dr
  const int n = 5;
  auto m = BoundaryModel::uniform(n, 0.5);
  const double y = oracle::radial_beta(5.0, 5.0, 1.0);
  const double expected = -std::pow(3.0, 5) * 1.0 * unit_sphere_area(4) / 2.0 * y;
  CHECK(sign_condition(SignCondition::TraceCriticalCurvature, n, m) ==
        doctest::Approx(expected).epsilon(1e-8));
}

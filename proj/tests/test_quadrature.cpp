#include "cslrot/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cslrot;
using std::numbers::pi;

TEST_CASE("one-dimensional rules") {
  QuadratureSpec spec;
  spec.rel_tol = 1e-12;
  CHECK(integrate_1d([](double x) { return x * x * x * x * x; }, 0.0, 2.0, spec).value ==
        doctest::Approx(64.0 / 6.0).epsilon(1e-14));
  CHECK(integrate_1d([](double x) { return std::sin(x); }, 0.0, pi, spec).value == doctest::Approx(2.0).epsilon(1e-13));
  const auto r = integrate_1d([](double x) { return std::exp(-x * x); }, 0.0, 3.0, spec);
  CHECK(r.value == doctest::Approx(std::sqrt(pi) / 2 * std::erf(3.0)).epsilon(1e-13));
  CHECK(r.error <= 1e-11);

  const auto v = integrate_1d<2>([](double x) { return QuadValue<2>{std::cos(x), 1e-9 * x}; }, 0.0, 1.0, spec);
  CHECK(v.value[0] == doctest::Approx(std::sin(1.0)).epsilon(1e-13));
  CHECK(v.value[1] == doctest::Approx(0.5e-9).epsilon(1e-12));
}

TEST_CASE("zero integrands converge immediately") {
  const auto r = integrate_1d([](double) { return 0.0; }, 0.0, 1.0, QuadratureSpec{});
  CHECK(r.value == 0.0);
  CHECK(r.error == 0.0);
}

TEST_CASE("Gaussian k-space moments") {
  const double rc = 1e-7;
  for (auto scheme : {QuadratureScheme::TensorSpherical3D, QuadratureScheme::AdaptiveCubature}) {
    QuadratureSpec spec;
    spec.scheme = scheme;
    spec.rel_tol = 1e-10;
    const double m0 = std::pow(pi, 1.5) / std::pow(rc, 3);
    CAPTURE(static_cast<int>(scheme));
    CHECK(integrate_radial_angular([](double, double, double) { return 1.0; }, rc, spec).value ==
          doctest::Approx(m0).epsilon(1e-10));
    const auto kz2 = [](double k, double t, double) { return std::pow(k * std::cos(t), 2); };
    CHECK(integrate_radial_angular(kz2, rc, spec).value == doctest::Approx(m0 / (2 * rc * rc)).epsilon(1e-10));

    // Octant with multiplicity 8 for an integrand even in every coordinate.
    const auto even = [](double k, double t, double p) {
      const double x = k * std::sin(t) * std::cos(p), y = k * std::sin(t) * std::sin(p);
      return x * x * y * y;
    };
    const AngularDomain octant{0.0, pi / 2, 0.0, pi / 2, 8.0};
    const double full = integrate_radial_angular(even, rc, spec).value;
    CHECK(integrate_radial_angular(even, rc, spec, octant).value == doctest::Approx(full).epsilon(1e-9));
    CHECK(full == doctest::Approx(m0 / (4 * std::pow(rc, 4))).epsilon(1e-9));

    CHECK(integrate_axisymmetric([](double k, double t) { return std::pow(k * std::sin(t), 2); }, rc, spec).value ==
          doctest::Approx(m0 / (rc * rc)).epsilon(1e-10));
  }
}

TEST_CASE("sums are deterministic") {
  QuadratureSpec spec;
  const auto f = [](double k, double t, double p) { return 1.0 + std::pow(k * 1e-7 * std::sin(t) * std::cos(p), 2); };
  const double a = integrate_radial_angular(f, 1e-7, spec).value;
  const double b = integrate_radial_angular(f, 1e-7, spec).value;
  CHECK(a == b);
}

TEST_CASE("budget exhaustion raises ConvergenceError with the best estimate") {
  QuadratureSpec spec;
  spec.max_evals = 1000;
  spec.rel_tol = 1e-12;
  try {
    integrate_1d([](double x) { return std::sin(1e4 * x) * std::sin(1e4 * x); }, 0.0, 1.0, spec);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(std::isfinite(e.best_estimate()));
    CHECK(e.achieved_error() > 0.0);
  }
}

TEST_CASE("specification is validated") {
  QuadratureSpec spec;
  spec.rel_tol = 0.0;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  spec.rel_tol = 1e-8;
  spec.max_evals = 10;
  CHECK_THROWS_AS(spec.validate(), std::invalid_argument);
  CHECK_THROWS_AS(integrate_radial_angular([](double, double, double) { return 1.0; }, -1.0, QuadratureSpec{}),
                  std::invalid_argument);
}

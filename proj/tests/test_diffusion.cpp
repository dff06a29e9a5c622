#include "cslrot/diffusion.hpp"
#include "cslrot/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace cslrot;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST_CASE("cylinder closed form equals geometry-tensor quadrature") {
  const double r = 1e-7, M = 1e-18;
  const CslParams csl(1e-8, r);
  for (auto [R, L] : {std::pair{0.3 * r, 4.0 * r}, std::pair{2.0 * r, 0.05 * r}, std::pair{0.02 * r, 0.03 * r}}) {
    const auto closed = cylinder_diffusion_closed(csl, M, R, L);
    const auto quad =
        diffusion_from_tensors(geometry_tensors(FormFactor(BodySpec::with_mass(Cylinder{L, R}, M)), csl), csl);
    CHECK(rel(closed.d_par, quad.d_par) <= 1e-7);
    CHECK(rel(closed.d_perp, quad.d_perp) <= 1e-7);
    CHECK(rel(closed.d_rot, quad.d_rot) <= 1e-7);
  }
}

TEST_CASE("tiny bodies diffuse like a point mass") {
  const double r = 1e-7, M = 1e-20;
  const CslParams csl(1.0, r);
  const auto tiny = cylinder_diffusion_closed(csl, M, 1e-6 * r, 2e-6 * r);
  const auto pm = diffusion_from_tensors(GeometryTensors{oracle::point_mass_a_cm(M, csl.m0()), Mat3::Zero()}, csl);
  CHECK(rel(tiny.d_par, pm.d_par) <= 1e-9);
  CHECK(rel(tiny.d_perp, pm.d_perp) <= 1e-9);
}

TEST_CASE("linear in lambda, power laws in r_c for small bodies") {
  const auto body = BodySpec::with_density(Cylinder{10e-9, 1e-9}, 2329.0);
  const auto d1 = diffusion_for_body(body, CslParams(1e-8, 1e-6));
  const auto d2 = diffusion_for_body(body, CslParams(2e-8, 1e-6));
  CHECK(d2.d_perp == doctest::Approx(2 * d1.d_perp).epsilon(1e-14));
  const auto d3 = diffusion_for_body(body, CslParams(1e-8, 2e-6));
  CHECK(std::log2(d1.d_perp / d3.d_perp) == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(std::log2(d1.d_rot / d3.d_rot) == doctest::Approx(4.0).epsilon(1e-3));
}

TEST_CASE("spheroid memo and independent cubature") {
  clear_diffusion_memo();
  const auto body = BodySpec::with_density(Spheroid{100e-9, 5e-9}, 2329.0);
  const CslParams csl(1e-8, 1e-7);
  const auto a = diffusion_for_body(body, csl);
  CHECK(diffusion_memo_size() == 1);
  const auto b = diffusion_for_body(body, csl.with_lambda(2e-8));
  CHECK(diffusion_memo_size() == 1);
  CHECK(b.d_rot == doctest::Approx(2 * a.d_rot).epsilon(1e-14));

  QuadratureSpec alt;
  alt.scheme = QuadratureScheme::AdaptiveCubature;
  alt.rel_tol = 1e-7;
  const auto c = diffusion_from_tensors(geometry_tensors(FormFactor(body), csl, alt), csl);
  CHECK(rel(a.d_par, c.d_par) <= 1e-6);
  CHECK(rel(a.d_perp, c.d_perp) <= 1e-6);
  CHECK(rel(a.d_rot, c.d_rot) <= 1e-6);
  clear_diffusion_memo();
  CHECK(diffusion_memo_size() == 0);
}

TEST_CASE("spheres have no rotational diffusion") {
  const auto d = diffusion_for_body(BodySpec::with_density(Sphere{20e-9}, 2200.0), CslParams(1e-8, 1e-7));
  CHECK(d.d_rot == 0.0);
  CHECK(d.d_par == doctest::Approx(d.d_perp).epsilon(1e-9));
}

TEST_CASE("heating rates") {
  const auto body = BodySpec::with_density(Cylinder{100e-9, 5e-9}, 2329.0);
  const auto d = diffusion_for_body(body, CslParams(1e-8, 1e-7));
  const auto h = heating_rates(d, body);
  const auto mp = body_mass_and_inertia(body);
  CHECK(h.dp2_dt == doctest::Approx(2 * d.d_par + 4 * d.d_perp));
  CHECK(h.dj2_dt == doctest::Approx(4 * d.d_rot));
  CHECK(h.gamma_cm == doctest::Approx(2 * d.d_perp / (mp.mass * kConstants.k_B)));
  CHECK(h.gamma_rot == doctest::Approx(2 * d.d_rot / (mp.transverse() * kConstants.k_B)));
}

TEST_CASE("linear molecules use the tensor path; asymmetric ones are rejected") {
  const double m = 16 * kConstants.amu;
  const std::vector<PointMass> co2 = {{m, Vec3(0, 0, 0.116e-9)}, {12 * kConstants.amu, Vec3::Zero()}, {m, Vec3(0, 0, -0.116e-9)}};
  const CslParams csl(1.0, 0.1e-9);
  const auto d = diffusion_for_body(BodySpec::from_atoms(co2), csl);
  const auto ref = diffusion_from_tensors(
      GeometryTensors{oracle::atoms_a_cm(co2, 0.1e-9, csl.m0()), oracle::atoms_a_rot(co2, 0.1e-9, csl.m0())}, csl);
  CHECK(rel(d.d_par, ref.d_par) <= 1e-7);
  CHECK(rel(d.d_rot, ref.d_rot) <= 1e-7);

  const std::vector<PointMass> bent = {{m, Vec3(0.1e-9, 0, 0)}, {m, Vec3(0, 0.07e-9, 0.02e-9)}, {m, Vec3::Zero()}};
  CHECK_THROWS_AS(diffusion_for_body(BodySpec::from_atoms(bent), csl), std::domain_error);
  CHECK_THROWS_AS(diffusion_curve(BodySpec::from_atoms(co2), csl, {}), std::invalid_argument);
}

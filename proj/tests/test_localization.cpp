#include "cslrot/localization.hpp"
#include "cslrot/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace cslrot;
using std::numbers::pi;

namespace {

std::vector<PointMass> molecule() {
  return {{12.0 * kConstants.amu, Vec3(0.0, 0.0, 0.0)},
          {16.0 * kConstants.amu, Vec3(0.12e-9, 0.03e-9, -0.02e-9)},
          {1.0 * kConstants.amu, Vec3(-0.05e-9, 0.09e-9, 0.04e-9)},
          {14.0 * kConstants.amu, Vec3(0.02e-9, -0.08e-9, 0.11e-9)}};
}

}  // namespace

TEST_CASE("axis-angle rate: zero at alpha = 0, mirror symmetric, non-negative") {
  const FormFactor ff(BodySpec::with_density(Cylinder{100e-9, 5e-9}, 2329.0));
  const CslParams csl(1e-8, 50e-9);
  CHECK(loc_rate_full(ff, csl, 0.0) == 0.0);
  for (double a : {0.2, 0.9, 1.4}) {
    const double f = loc_rate_full(ff, csl, a);
    CHECK(f > 0.0);
    CHECK(loc_rate_full(ff, csl, pi - a) == doctest::Approx(f).epsilon(1e-12));
  }
  const FormFactor ball(BodySpec::with_density(Sphere{20e-9}, 2329.0));
  CHECK(loc_rate_full(ball, csl, 1.0) == 0.0);
}

TEST_CASE("rate is linear in lambda_c") {
  const FormFactor ff(BodySpec::with_density(Spheroid{80e-9, 10e-9}, 2329.0));
  const double f1 = loc_rate_full(ff, CslParams(1e-8, 1e-7), 0.7);
  CHECK(loc_rate_full(ff, CslParams(3e-8, 1e-7), 0.7) == doctest::Approx(3.0 * f1).epsilon(1e-13));
}

TEST_CASE("general bodies: invariances of F(a, b)") {
  const FormFactor ff(BodySpec::from_atoms(molecule()));
  const CslParams csl(1e-8, 0.1e-9);
  const auto a = Orientation::from_axis_angle(Vec3(1, 0.3, -0.2), 0.4);
  const auto b = Orientation::from_axis_angle(Vec3(-0.5, 1, 0.7), 1.1);
  const auto g = Orientation::from_axis_angle(Vec3(0.2, -0.4, 1), 2.3);
  const double f = loc_rate_full(ff, csl, a, b);
  CHECK(f > 0.0);
  CHECK(loc_rate_full(ff, csl, a, a) == doctest::Approx(0.0));
  CHECK(loc_rate_full(ff, csl, b, a) == doctest::Approx(f).epsilon(1e-7));
  CHECK(loc_rate_full(ff, csl, g * a, g * b) == doctest::Approx(f).epsilon(1e-7));
}

TEST_CASE("small rotations follow the rotational geometry tensor") {
  const FormFactor ff(BodySpec::from_atoms(molecule()));
  const CslParams csl(1e-8, 0.1e-9);
  const auto t = geometry_tensors(ff, csl);
  const Vec3 n = Vec3(0.3, -0.8, 0.5).normalized();
  for (double eps : {1e-2, 1e-3}) {
    const auto b = Orientation::from_axis_angle(n, eps);
    const double full = loc_rate_full(ff, csl, Orientation(), b);
    CHECK(rot_loc_rate(t, csl, Orientation(), b) == doctest::Approx(full).epsilon(4.0 * eps * eps + 1e-6));
  }
}

TEST_CASE("geometry tensors of point masses match the Gaussian pair sums") {
  const auto atoms = molecule();
  const FormFactor ff(BodySpec::from_atoms(atoms));
  for (double rc : {0.05e-9, 0.1e-9, 1e-9}) {
    const CslParams csl(1.0, rc);
    const auto t = geometry_tensors(ff, csl);
    const Mat3 cm = oracle::atoms_a_cm(atoms, rc, csl.m0());
    const Mat3 rot = oracle::atoms_a_rot(atoms, rc, csl.m0());
    CHECK((t.a_cm - cm).norm() <= 1e-7 * cm.norm());
    CHECK((t.a_rot - rot).norm() <= 1e-7 * rot.norm());
  }
  const FormFactor single(BodySpec::from_atoms({{5.0 * kConstants.amu, Vec3::Zero()}}));
  const auto t = geometry_tensors(single, CslParams(1.0, 1e-7));
  CHECK((t.a_cm - oracle::point_mass_a_cm(5.0 * kConstants.amu, kConstants.amu)).norm() <= 1e-9 * 12.5);
  CHECK(t.a_rot.norm() <= 1e-12);
}

TEST_CASE("centre-of-mass rate of a point mass") {
  const double M = 7.0 * kConstants.amu, r = 1e-7;
  const CslParams csl(2e-8, r);
  const auto t = geometry_tensors(FormFactor(BodySpec::from_atoms({{M, Vec3::Zero()}})), csl);
  const Vec3 dR(1e-10, -2e-10, 0.5e-10);
  const double expect = csl.lambda_c() / (2 * r * r) * dR.squaredNorm() * M * M / (2 * kConstants.amu * kConstants.amu);
  CHECK(cm_loc_rate(t, csl, dR, Orientation::rot_z(0.3)) == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("small-body law: constants, nulls and limit") {
  CHECK(small_body_constants(SmallBodyKind::Cylinder) == std::pair<double, double>{4.0, 12.0});
  CHECK(small_body_constants(SmallBodyKind::Spheroid) == std::pair<double, double>{5.0, 20.0});
  const CslParams csl(1.0, 1e-7);
  CHECK(loc_rate_small(SmallBodyKind::Spheroid, csl, 1.0, 1e-9, 2e-9, 1.0) == 0.0);
  CHECK(std::abs(loc_rate_small(SmallBodyKind::Cylinder, csl, 1.0, 1e-9, std::sqrt(3.0) * 1e-9, 1.0)) <=
        1e-14 * loc_rate_small(SmallBodyKind::Cylinder, csl, 1.0, 1e-9, 4e-9, 1.0));

  const double L = 2e-9, R = 0.2e-9;
  const auto body = BodySpec::with_density(Cylinder{L, R}, 2329.0);
  const double full = loc_rate_full(FormFactor(body), csl, 1.0);
  CHECK(loc_rate_small(SmallBodyKind::Cylinder, csl, body.mass(), R, L, 1.0) == doctest::Approx(full).epsilon(1e-3));
}

TEST_CASE("maximum and normalized curve") {
  const FormFactor ff(BodySpec::with_density(Cylinder{100e-9, 5e-9}, 2329.0));
  const CslParams csl(1.0, 1e-6);
  const auto mx = loc_rate_max(ff, csl, {}, 1e-6);
  CHECK(mx.alpha == doctest::Approx(pi / 2));
  const std::vector<double> alphas = {0.0, pi / 4, pi / 2};
  const auto curve = loc_rate_curve(ff, csl, alphas, {}, mx.rate);
  CHECK(curve[2].normalized == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(curve[1].normalized == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(std::isnan(loc_rate_curve(ff, csl, alphas)[1].normalized));
}

TEST_CASE("rotation vector round trip") {
  const Vec3 w(0.3, -1.2, 0.4);
  const auto o = Orientation::from_axis_angle(w, w.norm());
  CHECK((rotation_vector(o) - w).norm() <= 1e-14);
  CHECK(rotation_vector(Orientation()).norm() == 0.0);
}

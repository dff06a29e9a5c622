#include "cslrot/formfactor.hpp"
#include "cslrot/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace cslrot;

namespace {

Vec3 random_k(std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> g;
  return scale * Vec3(g(rng), g(rng), g(rng));
}

}  // namespace

TEST_CASE("continuous shapes match direct volume cubature") {
  std::mt19937_64 rng(11);
  const double L = 100e-9, R = 5e-9;
  for (const auto& body : {BodySpec::with_density(Cylinder{L, R}, 2329.0), BodySpec::with_density(Spheroid{L, R}, 2329.0),
                           BodySpec::with_density(Cylinder{R, L}, 2329.0), BodySpec::with_density(Sphere{R}, 2200.0)}) {
    const FormFactor ff(body);
    CHECK(std::abs(ff(Vec3::Zero()) - body.mass()) <= 1e-14 * body.mass());
    for (int i = 0; i < 6; ++i) {
      const Vec3 k = random_k(rng, 3.0 / L);
      const auto v = ff(k);
      CHECK(std::abs(v - oracle::volume_form_factor(body, k)) <= 1e-11 * body.mass());
      CHECK(v.imag() == 0.0);
    }
  }
}

TEST_CASE("point masses match the pair sum") {
  std::mt19937_64 rng(5);
  std::vector<PointMass> atoms;
  for (int i = 0; i < 7; ++i) atoms.push_back({1.0 + i, random_k(rng, 1e-9)});
  const FormFactor ff(BodySpec::from_atoms(atoms));
  for (int i = 0; i < 10; ++i) {
    const Vec3 k = random_k(rng, 1e9);
    CHECK(std::norm(ff(k)) == doctest::Approx(oracle::atoms_ff_abs2(atoms, k)).epsilon(1e-12));
  }
}

TEST_CASE("gradient and k x gradient against finite differences") {
  std::mt19937_64 rng(3);
  const double L = 60e-9, R = 8e-9;
  std::vector<PointMass> atoms = {{2.0, Vec3(1e-9, 0, 0)}, {1.0, Vec3(0, 2e-9, -1e-9)}, {3.0, Vec3(-1e-9, 0, 3e-9)}};
  for (const auto& body : {BodySpec::with_density(Cylinder{L, R}, 1.0), BodySpec::with_density(Spheroid{L, R}, 1.0),
                           BodySpec::from_atoms(atoms)}) {
    const FormFactor ff(body);
    for (int i = 0; i < 5; ++i) {
      const Vec3 k = random_k(rng, 1.0 / L);
      const Vec3c grad = ff.gradient(k);
      const double h = 1e-4 / L;
      for (int c = 0; c < 3; ++c) {
        const Vec3 dk = h * Vec3::Unit(c);
        const auto fd = (ff(k + dk) - ff(k - dk)) / (2.0 * h);
        CHECK(std::abs(grad(c) - fd) <= 1e-7 * body.mass() * L);
      }
      const Vec3c kxg = ff.k_cross_gradient(k);
      const Vec3c ref = k.cast<std::complex<double>>().cross(grad);
      CHECK((kxg - ref).norm() <= 1e-12 * body.mass());
    }
  }
}

TEST_CASE("axial samples are consistent with the value") {
  const FormFactor ff(BodySpec::with_density(Cylinder{1e-7, 1e-8}, 1.0));
  for (double kp : {0.0, 1e6, 3e7}) {
    for (double kz : {-2e7, 0.0, 5e7}) {
      const auto s = ff.axial_sample(kp, kz);
      CHECK(s.value == doctest::Approx(ff.axial(kp, kz)));
      const double h = 1e2;
      const double dpar = (ff.axial(kp, kz + h) - ff.axial(kp, kz - h)) / (2 * h);
      CHECK(std::abs(s.dpar - dpar) <= 1e-6 * ff.mass() * 1e-7);
      if (kp > 0) {
        const double dperp = (ff.axial(kp + h, kz) - ff.axial(kp - h, kz)) / (2 * h);
        CHECK(std::abs(s.dperp_over_kperp * kp - dperp) <= 1e-6 * ff.mass() * 1e-7);
        CHECK(s.torque == doctest::Approx(s.dpar - kz * s.dperp_over_kperp));
      }
    }
  }
  CHECK_THROWS_AS(FormFactor(BodySpec::from_atoms({{1.0, Vec3(1, 0, 0)}})).axial(1.0, 1.0), std::logic_error);
}

TEST_CASE("rotated evaluation uses the body-frame wavevector") {
  const FormFactor ff(BodySpec::with_density(Spheroid{1e-7, 2e-8}, 1.0));
  const auto o = Orientation::from_axis_angle(Vec3(1, 2, 3), 0.7);
  const Vec3 k(2e7, -1e7, 4e7);
  CHECK(std::abs(ff.evaluate_rotated(k, o) - ff(o.rotate_inverse(k))) <= 1e-15 * ff.mass());
}

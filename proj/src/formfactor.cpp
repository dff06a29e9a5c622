#include "cslrot/formfactor.hpp"

#include "cslrot/specfun.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cslrot {

namespace {

// Disk profile 2 J1(x)/x.
double disk_profile(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-2) {
    const double x2 = x * x;
    return 1.0 - x2 / 8.0 * (1.0 - x2 / 24.0 * (1.0 - x2 / 48.0));
  }
  return 2.0 * specfun::bessel_j1(x) / x;
}

// d/dx [2 J1(x)/x] divided by x, which equals -2 J2(x)/x^2.
double disk_profile_slope(double x) {
  const double ax = std::abs(x);
  if (ax < 1.0) {
    // J2(x)/x^2 = sum_k (-1)^k (x/2)^{2k} / (4 k! (k+2)!)
    const double q = -0.25 * x * x;
    double term = 1.0 / 8.0;
    double sum = term;
    for (int k = 1; k < 12; ++k) {
      term *= q / (k * (k + 2.0));
      sum += term;
    }
    return -2.0 * sum;
  }
  return 2.0 * (x * specfun::bessel_j0(x) - 2.0 * specfun::bessel_j1(x)) / (x * x * x);
}

// Solid-sphere profile 3 j1(u)/u and its slope divided by u. Series below
// u = 2, where the closed forms lose digits to cancellation.
double ball_profile_series(double u) {
  const double u2 = u * u;
  double term = 1.0;  // u^{2k} / (2k+1)!
  double sum = 1.0 / 3.0;
  for (int k = 1; k < 16; ++k) {
    term *= -u2 / ((2.0 * k) * (2.0 * k + 1.0));
    sum += term / (2.0 * k + 3.0);
  }
  return 3.0 * sum;
}

double ball_profile(double u) {
  if (u == 0.0) return 1.0;
  if (u < 1.0) return ball_profile_series(u);
  // sqrt(9 pi / 2) J_{3/2}(u) / u^{3/2}
  return std::sqrt(4.5 * std::numbers::pi) * specfun::bessel_j_3half(u) / (u * std::sqrt(u));
}

double ball_profile_slope(double u) {
  if (u < 2.0) {
    const double u2 = u * u;
    double term = 1.0;  // u^{2k-2} / (2k+1)! starting at k = 1
    double sum = 0.0;
    for (int k = 1; k < 16; ++k) {
      term /= (2.0 * k) * (2.0 * k + 1.0);
      sum += (k % 2 == 1 ? -1.0 : 1.0) * 2.0 * k * term / (2.0 * k + 3.0);
      term *= u2;
    }
    return 3.0 * sum;
  }
  const double s = std::sin(u), c = std::cos(u);
  const double j2 = (3.0 / (u * u) - 1.0) * s / u - 3.0 * c / (u * u);
  return -3.0 * j2 / (u * u);
}

AxialSample cylinder_sample(double kp, double kz, double M, double R, double L) {
  const double x = R * kp;
  const double y = 0.5 * L * kz;
  const double disk = disk_profile(x);
  const double rod = specfun::sinc(y);
  const double dperp = M * R * R * disk_profile_slope(x) * rod;
  const double dpar = M * disk * 0.5 * L * specfun::sinc_derivative(y);
  return {M * disk * rod, dperp, dpar, dpar - kz * dperp};
}

AxialSample spheroid_sample(double kp, double kz, double M, double R, double L) {
  const double u = std::sqrt(R * R * kp * kp + 0.25 * L * L * kz * kz);
  const double slope = M * ball_profile_slope(u);
  const double par_scale = 0.25 * L * L;
  return {M * ball_profile(u), slope * R * R, slope * par_scale * kz,
          slope * kz * (par_scale - R * R)};
}

}  // namespace

double cylinder_ff(double k_perp, double k_par, double M, double R, double L) {
  return M * disk_profile(R * k_perp) * specfun::sinc(0.5 * L * k_par);
}

double spheroid_ff(double k_perp, double k_par, double M, double R, double L) {
  const double u = std::sqrt(R * R * k_perp * k_perp + 0.25 * L * L * k_par * k_par);
  return M * ball_profile(u);
}

std::complex<double> atoms_ff(const Vec3& k, std::span<const PointMass> atoms) {
  double re = 0.0, im = 0.0;
  for (const auto& a : atoms) {
    const double phase = k.dot(a.position);
    re += a.mass * std::cos(phase);
    im -= a.mass * std::sin(phase);
  }
  return {re, im};
}

FormFactor::FormFactor(BodySpec body)
    : body_(std::move(body)), inversion_symmetric_(body_.inversion_symmetric()) {}

AxialSample FormFactor::axial_sample(double k_perp, double k_par) const {
  const double M = body_.mass();
  return std::visit(
      [&](const auto& s) -> AxialSample {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Cylinder>) {
          return cylinder_sample(k_perp, k_par, M, s.radius, s.length);
        } else if constexpr (std::is_same_v<T, Spheroid>) {
          return spheroid_sample(k_perp, k_par, M, s.radius, s.length);
        } else if constexpr (std::is_same_v<T, Sphere>) {
          return spheroid_sample(k_perp, k_par, M, s.radius, 2.0 * s.radius);
        } else {
          throw std::logic_error("axial evaluation requires an azimuthally symmetric body");
        }
      },
      body_.shape());
}

double FormFactor::axial(double k_perp, double k_par) const {
  const double M = body_.mass();
  return std::visit(
      [&](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Cylinder>) {
          return cylinder_ff(k_perp, k_par, M, s.radius, s.length);
        } else if constexpr (std::is_same_v<T, Spheroid>) {
          return spheroid_ff(k_perp, k_par, M, s.radius, s.length);
        } else if constexpr (std::is_same_v<T, Sphere>) {
          return spheroid_ff(k_perp, k_par, M, s.radius, 2.0 * s.radius);
        } else {
          throw std::logic_error("axial evaluation requires an azimuthally symmetric body");
        }
      },
      body_.shape());
}

std::complex<double> FormFactor::operator()(const Vec3& k) const {
  if (const auto* atoms = std::get_if<Atoms>(&body_.shape())) return atoms_ff(k, atoms->atoms);
  return axial(std::hypot(k.x(), k.y()), k.z());
}

std::complex<double> FormFactor::evaluate_rotated(const Vec3& k, const Orientation& o) const {
  return (*this)(o.rotate_inverse(k));
}

Vec3c FormFactor::gradient(const Vec3& k) const {
  if (const auto* atoms = std::get_if<Atoms>(&body_.shape())) {
    Vec3c g = Vec3c::Zero();
    for (const auto& a : atoms->atoms) {
      const double phase = k.dot(a.position);
      // d/dk exp(-i k.r) = -i r exp(-i k.r)
      const std::complex<double> c = a.mass * std::complex<double>(-std::sin(phase), -std::cos(phase));
      g += c * a.position.cast<std::complex<double>>();
    }
    return g;
  }
  const auto s = axial_sample(std::hypot(k.x(), k.y()), k.z());
  return Vec3(s.dperp_over_kperp * k.x(), s.dperp_over_kperp * k.y(), s.dpar)
      .cast<std::complex<double>>();
}

Vec3c FormFactor::k_cross_gradient(const Vec3& k) const {
  if (std::holds_alternative<Atoms>(body_.shape())) {
    const Vec3c g = gradient(k);
    const Vec3c kc = k.cast<std::complex<double>>();
    return kc.cross(g);
  }
  const auto s = axial_sample(std::hypot(k.x(), k.y()), k.z());
  return Vec3(s.torque * k.y(), -s.torque * k.x(), 0.0).cast<std::complex<double>>();
}

}  // namespace cslrot

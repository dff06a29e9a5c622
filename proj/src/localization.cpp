#include "cslrot/localization.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cslrot {

namespace {

constexpr double kPi = std::numbers::pi;

double rate_prefactor(const CslParams& csl) {
  const double r = csl.r_c();
  return r * r * r * csl.lambda_c() / (2.0 * std::pow(kPi, 1.5) * csl.m0() * csl.m0());
}

Vec3 direction(double theta, double phi) {
  const double s = std::sin(theta);
  return {s * std::cos(phi), s * std::sin(phi), std::cos(theta)};
}

double loc_rate_axial(const FormFactor& ff, const CslParams& csl, double alpha, const QuadratureSpec& spec) {
  if (!(alpha >= 0.0 && alpha <= kPi)) throw std::invalid_argument("loc_rate_full: alpha must lie in [0, pi]");
  alpha = std::min(alpha, kPi - alpha);
  if (alpha == 0.0 || csl.lambda_c() == 0.0) return 0.0;
  if (std::holds_alternative<Sphere>(ff.body().shape())) return 0.0;
  // Axes placed symmetrically about e3 in the x-z plane. The integrand is
  // even in each Cartesian coordinate, so one octant suffices.
  const double sh = std::sin(0.5 * alpha), ch = std::cos(0.5 * alpha);
  const Vec3 m1(sh, 0.0, ch), m2(-sh, 0.0, ch);
  auto f = [&](double k, double theta, double phi) {
    const Vec3 kv = k * direction(theta, phi);
    const double p1 = kv.dot(m1), p2 = kv.dot(m2);
    const double t1 = std::sqrt(std::max(0.0, k * k - p1 * p1));
    const double t2 = std::sqrt(std::max(0.0, k * k - p2 * p2));
    const double d = ff.axial(t1, p1) - ff.axial(t2, p2);
    return QuadValue<1>{d * d};
  };
  const AngularDomain octant{0.0, 0.5 * kPi, 0.0, 0.5 * kPi, 8.0};
  const auto r = integrate_radial_angular<1>(f, csl.r_c(), spec, octant);
  return rate_prefactor(csl) * r.value[0];
}

double loc_rate_general(const FormFactor& ff, const CslParams& csl, const Orientation& a, const Orientation& b,
                        const QuadratureSpec& spec) {
  if (csl.lambda_c() == 0.0) return 0.0;
  Eigen::Quaterniond q = relative_orientation(a, b).quaternion();
  if (q.w() < 0.0) q.coeffs() = -q.coeffs();
  if (q.vec().norm() == 0.0) return 0.0;
  // Half rotation H with H^2 = Q: the integrand becomes
  // |rho(H^-1 k) - rho(H k)|^2, symmetric under exchanging the orientations.
  const Eigen::Quaterniond h = Eigen::Quaterniond::Identity().slerp(0.5, q).normalized();
  const Mat3 hm = h.toRotationMatrix();
  auto f = [&](double k, double theta, double phi) {
    const Vec3 kv = k * direction(theta, phi);
    const std::complex<double> d = ff(hm.transpose() * kv) - ff(hm * kv);
    return QuadValue<1>{std::norm(d)};
  };
  // Hermitian symmetry makes the integrand even in k.
  const AngularDomain upper{0.0, 0.5 * kPi, 0.0, 2.0 * kPi, 2.0};
  const auto r = integrate_radial_angular<1>(f, csl.r_c(), spec, upper);
  return rate_prefactor(csl) * r.value[0];
}

}  // namespace

double loc_rate_full(const FormFactor& ff, const CslParams& csl, double alpha, const QuadratureSpec& spec) {
  if (!ff.azimuthally_symmetric())
    throw std::invalid_argument("loc_rate_full: axis angle requires an azimuthally symmetric body");
  return loc_rate_axial(ff, csl, alpha, spec);
}

double loc_rate_full(const FormFactor& ff, const CslParams& csl, const Orientation& a, const Orientation& b,
                     const QuadratureSpec& spec) {
  if (ff.azimuthally_symmetric()) return loc_rate_axial(ff, csl, axis_angle_between(ff.body(), a, b), spec);
  return loc_rate_general(ff, csl, a, b, spec);
}

std::pair<double, double> small_body_constants(SmallBodyKind kind) {
  return kind == SmallBodyKind::Cylinder ? std::pair{4.0, 12.0} : std::pair{5.0, 20.0};
}

double loc_rate_small(SmallBodyKind kind, const CslParams& csl, double M, double R, double L, double alpha) {
  const auto [a, b] = small_body_constants(kind);
  const double r2 = csl.r_c() * csl.r_c();
  const double shape = R * R / a - L * L / b;
  const double s = std::sin(alpha);
  return csl.lambda_c() * M * M / (8.0 * csl.m0() * csl.m0() * r2 * r2) * shape * shape * s * s;
}

LocRateMax loc_rate_max(const FormFactor& ff, const CslParams& csl, const QuadratureSpec& spec, double alpha_tol) {
  auto F = [&](double x) { return loc_rate_full(ff, csl, x, spec); };
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = 0.0, hi = 0.5 * kPi;
  double x1 = hi - invphi * (hi - lo), x2 = lo + invphi * (hi - lo);
  double f1 = F(x1), f2 = F(x2);
  while (hi - lo > alpha_tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = F(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = F(x1);
    }
  }
  LocRateMax best = f1 >= f2 ? LocRateMax{x1, f1} : LocRateMax{x2, f2};
  const double edge = F(0.5 * kPi);
  if (edge >= best.rate) best = {0.5 * kPi, edge};
  return best;
}

std::vector<LocRatePoint> loc_rate_curve(const FormFactor& ff, const CslParams& csl, std::span<const double> alphas,
                                         const QuadratureSpec& spec, std::optional<double> normalizer) {
  if (normalizer && !(*normalizer > 0.0)) throw std::invalid_argument("loc_rate_curve: normalizer must be positive");
  std::vector<LocRatePoint> out;
  out.reserve(alphas.size());
  for (double a : alphas) {
    const double rate = loc_rate_full(ff, csl, a, spec);
    out.push_back({a, rate, normalizer ? rate / *normalizer : std::numeric_limits<double>::quiet_NaN()});
  }
  return out;
}

GeometryTensors geometry_tensors(const FormFactor& ff, const CslParams& csl, const QuadratureSpec& spec) {
  const double r = csl.r_c();
  const double m02 = csl.m0() * csl.m0();
  const double cm_scale = std::pow(r, 5) / (std::pow(kPi, 1.5) * m02);
  const double rot_scale = std::pow(r, 3) / (std::pow(kPi, 1.5) * m02);
  GeometryTensors t;

  if (ff.azimuthally_symmetric()) {
    // Azimuthal averages: <k_x^2> = k^2 sin^2(t)/2, <k_z^2> = k^2 cos^2(t).
    // Inversion symmetry folds theta onto [0, pi/2].
    auto cm = [&](double k, double theta) {
      const double kp = k * std::sin(theta), kz = k * std::cos(theta);
      const double f = ff.axial(kp, kz);
      return QuadValue<2>{0.5 * f * f * kp * kp, f * f * kz * kz};
    };
    auto rot = [&](double k, double theta) {
      const double kp = k * std::sin(theta), kz = k * std::cos(theta);
      const double tq = ff.axial_sample(kp, kz).torque;
      return QuadValue<1>{0.5 * tq * tq * kp * kp};
    };
    const auto rc = integrate_axisymmetric<2>(cm, r, spec, 0.0, 0.5 * kPi, 2.0);
    t.a_cm(0, 0) = t.a_cm(1, 1) = cm_scale * rc.value[0];
    t.a_cm(2, 2) = cm_scale * rc.value[1];
    t.error_cm = cm_scale * rc.error;
    // A sphere has no torque; the integrand vanishes identically.
    const auto rr = integrate_axisymmetric<1>(rot, r, spec, 0.0, 0.5 * kPi, 2.0);
    t.a_rot(0, 0) = t.a_rot(1, 1) = rot_scale * rr.value[0];
    t.error_rot = rot_scale * rr.error;
    return t;
  }

  // Hermitian symmetry: both integrands are even in k.
  const AngularDomain upper{0.0, 0.5 * kPi, 0.0, 2.0 * kPi, 2.0};
  auto cm = [&](double k, double theta, double phi) {
    const Vec3 kv = k * direction(theta, phi);
    const double w = std::norm(ff(kv));
    return QuadValue<6>{w * kv.x() * kv.x(), w * kv.y() * kv.y(), w * kv.z() * kv.z(),
                        w * kv.x() * kv.y(), w * kv.x() * kv.z(), w * kv.y() * kv.z()};
  };
  auto rot = [&](double k, double theta, double phi) {
    const Vec3 kv = k * direction(theta, phi);
    const Vec3c v = ff.k_cross_gradient(kv);
    auto re = [&](int i, int j) { return std::real(v[i] * std::conj(v[j])); };
    return QuadValue<6>{re(0, 0), re(1, 1), re(2, 2), re(0, 1), re(0, 2), re(1, 2)};
  };
  auto fill = [](Mat3& m, const QuadValue<6>& v, double s) {
    m(0, 0) = s * v[0];
    m(1, 1) = s * v[1];
    m(2, 2) = s * v[2];
    m(0, 1) = m(1, 0) = s * v[3];
    m(0, 2) = m(2, 0) = s * v[4];
    m(1, 2) = m(2, 1) = s * v[5];
  };
  const auto rc = integrate_radial_angular<6>(cm, r, spec, upper);
  fill(t.a_cm, rc.value, cm_scale);
  t.error_cm = cm_scale * rc.error;
  const auto rr = integrate_radial_angular<6>(rot, r, spec, upper);
  fill(t.a_rot, rr.value, rot_scale);
  t.error_rot = rot_scale * rr.error;
  return t;
}

double cm_loc_rate(const GeometryTensors& t, const CslParams& csl, const Vec3& dR, const Orientation& o0) {
  const Mat3 R = o0.matrix();
  const double q = dR.dot(R * t.a_cm * R.transpose() * dR);
  return csl.lambda_c() / (2.0 * csl.r_c() * csl.r_c()) * std::max(0.0, q);
}

Vec3 rotation_vector(const Orientation& o) {
  Eigen::Quaterniond q = o.quaternion();
  if (q.w() < 0.0) q.coeffs() = -q.coeffs();
  const double s = q.vec().norm();
  if (s == 0.0) return Vec3::Zero();
  return (2.0 * std::atan2(s, q.w()) / s) * q.vec();
}

double rot_loc_rate(const GeometryTensors& t, const CslParams& csl, const Orientation& a, const Orientation& b) {
  const Mat3& A = t.a_rot;
  const double scale = A.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  const double tol = 1e-8 * scale;
  const bool axial = std::abs(A(2, 2)) <= tol && std::abs(A(0, 0) - A(1, 1)) <= tol && std::abs(A(0, 1)) <= tol &&
                     std::abs(A(0, 2)) <= tol && std::abs(A(1, 2)) <= tol;
  if (axial) {
    const double c = a.symmetry_axis().cross(b.symmetry_axis()).squaredNorm();
    return 0.5 * csl.lambda_c() * 0.5 * (A(0, 0) + A(1, 1)) * c;
  }
  const Vec3 d = rotation_vector(relative_orientation(a, b));
  return 0.5 * csl.lambda_c() * std::max(0.0, d.dot(A * d));
}

}  // namespace cslrot

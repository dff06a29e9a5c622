#include "cslrot/oracles.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace cslrot::oracle {

namespace {

constexpr int kOrder = 16;

struct Rule {
  std::vector<double> x, w;  // on [-1, 1]
};

const Rule& gauss_legendre() {
  static const Rule rule = [] {
    std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)> t(
        gsl_integration_glfixed_table_alloc(kOrder), gsl_integration_glfixed_table_free);
    Rule r;
    for (int i = 0; i < kOrder; ++i) {
      double xi, wi;
      gsl_integration_glfixed_point(-1.0, 1.0, static_cast<std::size_t>(i), &xi, &wi, t.get());
      r.x.push_back(xi);
      r.w.push_back(wi);
    }
    return r;
  }();
  return rule;
}

// Nodes and weights of a composite rule on [a, b] with enough panels to
// resolve a phase that varies by `phase` across the interval.
void composite(double a, double b, double phase, std::vector<double>& x, std::vector<double>& w) {
  const int panels = std::max(2, static_cast<int>(std::ceil(std::abs(phase) / 2.0)) + 1);
  const auto& r = gauss_legendre();
  x.clear();
  w.clear();
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    for (int i = 0; i < kOrder; ++i) {
      x.push_back(lo + 0.5 * h * (r.x[i] + 1.0));
      w.push_back(0.5 * h * r.w[i]);
    }
  }
}

Mat3 skew(const Vec3& a) {
  Mat3 s;
  s << 0.0, -a.z(), a.y(), a.z(), 0.0, -a.x(), -a.y(), a.x(), 0.0;
  return s;
}

// Gaussian moment matrix without the pi^{3/2}/r^3 prefactor.
Mat3 moment(const Vec3& d, double r) {
  const double r2 = r * r;
  return std::exp(-d.squaredNorm() / (4.0 * r2)) * (Mat3::Identity() / (2.0 * r2) - d * d.transpose() / (4.0 * r2 * r2));
}

}  // namespace

std::complex<double> volume_form_factor(const BodySpec& body, const Vec3& k) {
  using std::numbers::pi;
  double R = 0.0, L = 0.0;
  bool spheroid = false;
  if (const auto* c = std::get_if<Cylinder>(&body.shape())) {
    R = c->radius;
    L = c->length;
  } else if (const auto* s = std::get_if<Spheroid>(&body.shape())) {
    R = s->radius;
    L = s->length;
    spheroid = true;
  } else if (const auto* s = std::get_if<Sphere>(&body.shape())) {
    R = s->radius;
    L = 2.0 * s->radius;
    spheroid = true;
  } else {
    throw std::invalid_argument("volume_form_factor: continuous shapes only");
  }
  const double rho = body.density();
  const double kp = std::hypot(k.x(), k.y());
  const double kz = k.z();
  const double kphi = std::atan2(k.y(), k.x());
  const int n_phi = 2 * (static_cast<int>(kp * R) + 40);

  std::vector<double> zx, zw, sx, sw;
  // Spheroids: z = (L/2) sin t removes the square-root edge.
  if (spheroid)
    composite(-0.5 * pi, 0.5 * pi, kz * L, zx, zw);
  else
    composite(-0.5 * L, 0.5 * L, kz * L, zx, zw);

  double re = 0.0, im = 0.0;
  for (std::size_t iz = 0; iz < zx.size(); ++iz) {
    double z, jac, smax;
    if (spheroid) {
      z = 0.5 * L * std::sin(zx[iz]);
      jac = 0.5 * L * std::cos(zx[iz]);
      smax = R * std::cos(zx[iz]);
    } else {
      z = zx[iz];
      jac = 1.0;
      smax = R;
    }
    composite(0.0, smax, kp * smax, sx, sw);
    double zre = 0.0, zim = 0.0;
    for (std::size_t is = 0; is < sx.size(); ++is) {
      double pre = 0.0, pim = 0.0;
      for (int ip = 0; ip < n_phi; ++ip) {
        const double phi = 2.0 * pi * ip / n_phi;
        const double arg = kp * sx[is] * std::cos(phi - kphi) + kz * z;
        pre += std::cos(arg);
        pim -= std::sin(arg);
      }
      const double wgt = sw[is] * sx[is] * 2.0 * pi / n_phi;
      zre += wgt * pre;
      zim += wgt * pim;
    }
    re += zw[iz] * jac * zre;
    im += zw[iz] * jac * zim;
  }
  return {rho * re, rho * im};
}

double atoms_ff_abs2(std::span<const PointMass> atoms, const Vec3& k) {
  double s = 0.0;
  for (const auto& a : atoms)
    for (const auto& b : atoms) s += a.mass * b.mass * std::cos(k.dot(a.position - b.position));
  return s;
}

Mat3 atoms_a_cm(std::span<const PointMass> atoms, double r_c, double m0) {
  Mat3 a = Mat3::Zero();
  for (const auto& p : atoms)
    for (const auto& q : atoms) a += p.mass * q.mass * moment(q.position - p.position, r_c);
  return a * (r_c * r_c) / (m0 * m0);
}

Mat3 atoms_a_rot(std::span<const PointMass> atoms, double r_c, double m0) {
  Mat3 a = Mat3::Zero();
  for (const auto& p : atoms)
    for (const auto& q : atoms)
      a += p.mass * q.mass * skew(p.position) * moment(q.position - p.position, r_c) * skew(q.position).transpose();
  return a / (m0 * m0);
}

Mat3 point_mass_a_cm(double mass, double m0) { return Mat3::Identity() * (mass * mass / (2.0 * m0 * m0)); }

double series_j1(double x) {
  const long double q = -0.25L * x * x;
  long double term = 0.5L * x, sum = term;
  for (int k = 1; k < 80; ++k) {
    term *= q / (static_cast<long double>(k) * (k + 1));
    sum += term;
  }
  return static_cast<double>(sum);
}

double series_j_3half(double x) {
  const long double q = -0.25L * x * x;
  long double term = 1.0L / (0.75L * std::sqrt(std::numbers::pi_v<long double>));
  long double sum = term;
  for (int k = 1; k < 80; ++k) {
    term *= q / (static_cast<long double>(k) * (k + 1.5L));
    sum += term;
  }
  return static_cast<double>(std::pow(0.5L * std::abs(x), 1.5L) * sum);
}

double series_erf(double x) {
  const long double x2 = static_cast<long double>(x) * x;
  long double term = x, sum = x;
  for (int n = 1; n < 120; ++n) {
    term *= -x2 / n;
    sum += term / (2 * n + 1);
  }
  return static_cast<double>(2.0L / std::sqrt(std::numbers::pi_v<long double>) * sum);
}

}  // namespace cslrot::oracle

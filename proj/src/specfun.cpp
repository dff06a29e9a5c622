#include "cslrot/specfun.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_bessel.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cslrot::specfun {

namespace {

void init_gsl() {
  static std::once_flag flag;
  std::call_once(flag, [] { gsl_set_error_handler_off(); });
}

void check_finite(double x, const char* fn) {
  if (std::isnan(x)) throw std::domain_error(std::string(fn) + ": NaN argument");
}

double checked(int status, const gsl_sf_result& r, const char* fn) {
  if (status == GSL_SUCCESS) return r.val;
  if (status == GSL_EUNDRFLW) return 0.0;
  throw std::runtime_error(std::string(fn) + ": " + gsl_strerror(status));
}

}  // namespace

double bessel_j0(double x) {
  check_finite(x, "bessel_j0");
  init_gsl();
  gsl_sf_result r;
  return checked(gsl_sf_bessel_J0_e(x, &r), r, "bessel_j0");
}

double bessel_j1(double x) {
  check_finite(x, "bessel_j1");
  init_gsl();
  gsl_sf_result r;
  return checked(gsl_sf_bessel_J1_e(x, &r), r, "bessel_j1");
}

double bessel_j_3half(double x) {
  check_finite(x, "bessel_j_3half");
  if (x < 0.0) throw std::domain_error("bessel_j_3half: negative argument");
  using std::numbers::pi;
  if (x < 1.0) {
    // (x/2)^{3/2} sum_k (-x^2/4)^k / (k! Gamma(k + 5/2)); 12 terms reach 1e-17 at x = 1.
    const double q = -0.25 * x * x;
    double term = 1.0 / (0.75 * std::sqrt(pi));  // 1/Gamma(5/2)
    double sum = term;
    for (int k = 1; k < 12; ++k) {
      term *= q / (k * (k + 1.5));
      sum += term;
    }
    return std::pow(0.5 * x, 1.5) * sum;
  }
  return std::sqrt(2.0 / (pi * x)) * (std::sin(x) / x - std::cos(x));
}

double bessel_i_scaled(int n, double x) {
  check_finite(x, "bessel_i_scaled");
  if (n < 0) throw std::domain_error("bessel_i_scaled: negative order");
  init_gsl();
  gsl_sf_result r;
  const double v = checked(gsl_sf_bessel_In_scaled_e(n, std::abs(x), &r), r, "bessel_i_scaled");
  return (x < 0.0 && (n % 2 == 1)) ? -v : v;
}

void bessel_i_scaled_array(double x, std::span<double> out) {
  check_finite(x, "bessel_i_scaled_array");
  if (out.empty()) return;
  init_gsl();
  const double ax = std::abs(x);
  if (ax == 0.0) {
    for (auto& v : out) v = 0.0;
    out[0] = 1.0;
    return;
  }
  const int nmax = static_cast<int>(out.size()) - 1;
  int status = gsl_sf_bessel_In_scaled_array(0, nmax, ax, out.data());
  if (status == GSL_EUNDRFLW) {
    // GSL leaves the array unfilled when the top order underflows. The
    // orders then decay fast, so Miller's backward recurrence normalized by
    // e^{-x}I_0 converges from a modest starting index.
    const int start = 2 * ((nmax + static_cast<int>(std::sqrt(200.0 * nmax))) / 2) + 2;
    double above = 0.0, cur = 1e-300;
    for (auto& v : out) v = 0.0;
    for (int n = start; n > 0; --n) {
      const double below = above + (2.0 * n / ax) * cur;
      above = cur;
      cur = below;
      if (n - 1 <= nmax) out[n - 1] = cur;
      if (std::abs(cur) > 1e250) {
        cur *= 1e-250;
        above *= 1e-250;
        for (int k = n - 1; k <= nmax; ++k) out[k] *= 1e-250;
      }
    }
    gsl_sf_result r0;
    status = gsl_sf_bessel_In_scaled_e(0, ax, &r0);
    const double scale = r0.val / out[0];
    for (auto& v : out) v *= scale;
  }
  if (status != GSL_SUCCESS)
    throw std::runtime_error(std::string("bessel_i_scaled_array: ") + gsl_strerror(status));
  if (x < 0.0)
    for (int n = 1; n <= nmax; n += 2) out[n] = -out[n];
}

double erf(double x) {
  check_finite(x, "erf");
  return std::erf(x);
}

double sinc(double x) {
  const double ax = std::abs(x);
  if (ax < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 * (1.0 - x2 / 20.0);
  }
  return std::sin(x) / x;
}

double sinc_derivative(double x) {
  const double ax = std::abs(x);
  if (ax < 0.1) {
    // -x/3 + x^3/30 - x^5/840 + x^7/45360 - x^9/3991680
    const double x2 = x * x;
    return x * (-1.0 / 3.0 +
                x2 * (1.0 / 30.0 + x2 * (-1.0 / 840.0 + x2 * (1.0 / 45360.0 - x2 / 3991680.0))));
  }
  return (x * std::cos(x) - std::sin(x)) / (x * x);
}

}  // namespace cslrot::specfun

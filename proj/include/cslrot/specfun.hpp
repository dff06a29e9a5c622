#pragma once

#include <span>

/// Special functions over real arguments.
///
/// The modified Bessel functions are only exposed in exponentially scaled form,
/// e^{-|x|} I_n(x); every closed form in this library is arranged so that no
/// intermediate overflows for arguments up to ~1e12.
namespace cslrot::specfun {

/// Cylindrical Bessel functions of the first kind. Throw std::domain_error on NaN.
double bessel_j0(double x);
double bessel_j1(double x);

/// J_{3/2}(x) for x >= 0. Throws std::domain_error for negative or NaN input.
double bessel_j_3half(double x);

/// e^{-|x|} I_n(x) for n >= 0, with I_n(-x) = (-1)^n I_n(x).
double bessel_i_scaled(int n, double x);

/// Fills out[n] = e^{-|x|} I_n(x) for n = 0 .. out.size()-1.
void bessel_i_scaled_array(double x, std::span<double> out);

double erf(double x);

/// sin(x)/x with sinc(0) = 1.
double sinc(double x);

/// d/dx sinc(x).
double sinc_derivative(double x);

}  // namespace cslrot::specfun

#pragma once

#include "cslrot/params.hpp"

#include <complex>
#include <span>

// Reference implementations that share no numerical path with the library:
// fixed-rule volume cubature, closed-form Gaussian pair sums and power series.
namespace cslrot::oracle {

/// Direct volume integral of rho exp(-i k . r) over a uniform cylinder or
/// spheroid (body frame, kg). Panels of 16-point Gauss-Legendre in z and s,
/// trapezoid in phi.
std::complex<double> volume_form_factor(const BodySpec& body, const Vec3& k);

/// |rho~(k)|^2 = sum_nm m_n m_m cos(k . (r_n - r_m)), kg^2.
double atoms_ff_abs2(std::span<const PointMass> atoms, const Vec3& k);

/// Exact geometry tensors of point masses from the Gaussian moment integrals
///   int d^3k e^{-r^2 k^2} cos(k.d) k_p k_q = pi^{3/2}/r^3 e^{-d^2/4r^2} [delta/2r^2 - d_p d_q/4r^4].
Mat3 atoms_a_cm(std::span<const PointMass> atoms, double r_c, double m0);
Mat3 atoms_a_rot(std::span<const PointMass> atoms, double r_c, double m0);

/// A_cm of a single point mass: M^2/(2 m0^2) times the identity.
Mat3 point_mass_a_cm(double mass, double m0);

/// Power series, |x| <= 12 (J) and |x| <= 3 (erf).
double series_j1(double x);
double series_j_3half(double x);
double series_erf(double x);

}  // namespace cslrot::oracle

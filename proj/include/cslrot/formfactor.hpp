#pragma once

#include "cslrot/params.hpp"

#include <complex>
#include <span>

namespace cslrot {

using Vec3c = Eigen::Vector3cd;

/// Uniform cylinder of mass M, radius R, length L (kg). Wavevector components
/// in 1/m perpendicular and parallel to the symmetry axis.
double cylinder_ff(double k_perp, double k_par, double M, double R, double L);

/// Uniform spheroid of mass M, equatorial radius R, full length L (kg).
double spheroid_ff(double k_perp, double k_par, double M, double R, double L);

/// Point masses: sum_n m_n exp(-i k . r_n).
std::complex<double> atoms_ff(const Vec3& k, std::span<const PointMass> atoms);

/// Value and first derivatives of an azimuthally symmetric form factor
/// f(k_perp, k_par).
struct AxialSample {
  double value;
  /// (df/dk_perp) / k_perp, finite at k_perp = 0.
  double dperp_over_kperp;
  double dpar;
  /// df/dk_par - k_par * dperp_over_kperp. In the body frame
  /// k x grad f = torque * (k_y, -k_x, 0).
  double torque;
};

/// Mass-density Fourier transform of a rigid body, sign convention
/// exp(-i k . r). Immutable after construction.
class FormFactor {
 public:
  explicit FormFactor(BodySpec body);

  const BodySpec& body() const { return body_; }
  double mass() const { return body_.mass(); }
  bool azimuthally_symmetric() const { return body_.azimuthally_symmetric(); }
  bool inversion_symmetric() const { return inversion_symmetric_; }

  /// Body-frame evaluation (kg).
  std::complex<double> operator()(const Vec3& k_body) const;

  /// rho~(R^T(o) k) for a space-fixed wavevector k.
  std::complex<double> evaluate_rotated(const Vec3& k, const Orientation& o) const;

  /// Body-frame gradient with respect to k (kg m).
  Vec3c gradient(const Vec3& k_body) const;

  /// k x grad_k rho~(k), body frame (kg).
  Vec3c k_cross_gradient(const Vec3& k_body) const;

  /// Azimuthally symmetric shapes only; throws std::logic_error otherwise.
  double axial(double k_perp, double k_par) const;
  AxialSample axial_sample(double k_perp, double k_par) const;

 private:
  BodySpec body_;
  bool inversion_symmetric_;
};

}  // namespace cslrot

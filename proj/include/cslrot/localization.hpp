#pragma once

#include "cslrot/formfactor.hpp"
#include "cslrot/params.hpp"
#include "cslrot/quadrature.hpp"

#include <optional>
#include <span>
#include <vector>

namespace cslrot {

/// Dimensionless shape tensors in the body frame:
///   a_cm  = r_c^5/(pi^{3/2} m0^2) int d^3k exp(-r_c^2 k^2) |rho(k)|^2 k (x) k
///   a_rot = r_c^3/(pi^{3/2} m0^2) int d^3k exp(-r_c^2 k^2) Re[v (x) v*],  v = k x grad rho(k)
struct GeometryTensors {
  Mat3 a_cm = Mat3::Zero();
  Mat3 a_rot = Mat3::Zero();
  double error_cm = 0.0;   ///< largest absolute component error estimate
  double error_rot = 0.0;
};

/// Orientational localization rate F(a, b) in 1/s from the full k-space integral.
double loc_rate_full(const FormFactor& ff, const CslParams& csl, const Orientation& a,
                     const Orientation& b, const QuadratureSpec& spec = {});

/// Same rate for an azimuthally symmetric body as a function of the angle
/// between the two symmetry axes (rad).
double loc_rate_full(const FormFactor& ff, const CslParams& csl, double alpha,
                     const QuadratureSpec& spec = {});

enum class SmallBodyKind { Cylinder, Spheroid };

/// Leading small-body form (1/s), valid when the body extent is well below r_c:
///   lambda M^2/(8 m0^2 r_c^4) (R^2/a - L^2/b)^2 sin^2(alpha)
/// with (a, b) = (4, 12) for cylinders and (5, 20) for spheroids.
double loc_rate_small(SmallBodyKind kind, const CslParams& csl, double M, double R, double L,
                      double alpha);

/// Coefficient c in F = c (R^2/a - L^2/b)^2 sin^2 alpha, returned as (a, b).
std::pair<double, double> small_body_constants(SmallBodyKind kind);

struct LocRateMax {
  double alpha;  ///< rad, in [0, pi/2]
  double rate;   ///< 1/s
};

/// Maximum of F over alpha in [0, pi/2] by golden-section search (tolerance
/// in rad). The value at pi/2 is always included among the candidates.
LocRateMax loc_rate_max(const FormFactor& ff, const CslParams& csl, const QuadratureSpec& spec = {},
                        double alpha_tol = 1e-10);

struct LocRatePoint {
  double alpha;       ///< rad
  double rate;        ///< 1/s
  double normalized;  ///< rate / normalizer, NaN without normalizer
};

std::vector<LocRatePoint> loc_rate_curve(const FormFactor& ff, const CslParams& csl,
                                         std::span<const double> alphas,
                                         const QuadratureSpec& spec = {},
                                         std::optional<double> normalizer = std::nullopt);

GeometryTensors geometry_tensors(const FormFactor& ff, const CslParams& csl,
                                 const QuadratureSpec& spec = {});

/// Centre-of-mass localization rate (1/s) for displacement dR (m) of a body
/// at orientation o0, small-displacement regime.
double cm_loc_rate(const GeometryTensors& t, const CslParams& csl, const Vec3& dR,
                   const Orientation& o0);

/// Orientational localization rate (1/s) for nearby orientations. For
/// tensors with the axisymmetric structure the axis form
/// (lambda/2) a_rot_perp |m x m'|^2 is used; otherwise the rotation vector
/// of the relative orientation is contracted with a_rot.
double rot_loc_rate(const GeometryTensors& t, const CslParams& csl, const Orientation& a,
                    const Orientation& b);

/// Rotation vector (axis times angle, rad) of a proper rotation.
Vec3 rotation_vector(const Orientation& o);

}  // namespace cslrot

#pragma once

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cslrot {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// CODATA 2018 values, SI units.
struct PhysicalConstants {
  double hbar;  ///< J s
  double k_B;   ///< J/K
  double amu;   ///< kg
};

inline constexpr PhysicalConstants kConstants{1.054571817e-34, 1.380649e-23,
                                              1.66053906660e-27};

/// Collapse rate lambda_c (1/s), localization length r_c (m) and reference
/// mass m0 (kg). The default reference mass is one atomic mass unit.
class CslParams {
 public:
  CslParams(double lambda_c, double r_c, double m0 = kConstants.amu);

  double lambda_c() const { return lambda_c_; }
  double r_c() const { return r_c_; }
  double m0() const { return m0_; }

  CslParams with_lambda(double lambda_c) const { return {lambda_c, r_c_, m0_}; }
  CslParams with_r_c(double r_c) const { return {lambda_c_, r_c, m0_}; }

 private:
  double lambda_c_;
  double r_c_;
  double m0_;
};

/// Mass density of a named material in kg/m^3. Throws for unknown names.
double material_density(std::string_view name);

struct Cylinder {
  double length;  ///< m, along the body e3 axis
  double radius;  ///< m
};

struct Spheroid {
  double length;  ///< full length along e3, m
  double radius;  ///< equatorial radius, m
};

struct Sphere {
  double radius;  ///< m
};

struct PointMass {
  double mass;    ///< kg
  Vec3 position;  ///< body frame, m
};

struct Atoms {
  std::vector<PointMass> atoms;
};

using Shape = std::variant<Cylinder, Spheroid, Sphere, Atoms>;

/// Geometry and total mass of a rigid body. Continuous shapes are uniform;
/// their symmetry axis is the body-frame e3 axis.
class BodySpec {
 public:
  static BodySpec with_density(Shape shape, double density);
  static BodySpec with_mass(Shape shape, double mass);
  static BodySpec from_atoms(std::vector<PointMass> atoms);

  const Shape& shape() const { return shape_; }
  double mass() const { return mass_; }
  /// m^3; zero for point-mass bodies.
  double volume() const;
  /// kg/m^3; throws for point-mass bodies.
  double density() const;
  /// Largest distance between two points of the body, m.
  double max_extent() const;

  bool azimuthally_symmetric() const;
  bool inversion_symmetric() const;
  std::string shape_name() const;

  /// Uniformly scaled copy at fixed density (mass scales as s^3).
  BodySpec scaled(double s) const;

 private:
  BodySpec(Shape shape, double mass);

  Shape shape_;
  double mass_;
};

double shape_volume(const Shape& shape);

struct MassProperties {
  double mass;   ///< kg
  Mat3 inertia;  ///< kg m^2, body frame, about the body-frame origin

  /// Moment about an axis perpendicular to e3.
  double transverse() const { return inertia(0, 0); }
  double axial() const { return inertia(2, 2); }
};

MassProperties body_mass_and_inertia(const BodySpec& body);

/// Proper rotation from the body-fixed to the space-fixed frame, stored as a
/// unit quaternion.
class Orientation {
 public:
  Orientation() = default;
  explicit Orientation(const Eigen::Quaterniond& q);

  static Orientation from_axis_angle(const Vec3& axis, double angle);
  /// Minimal rotation taking e3 onto the given direction.
  static Orientation from_symmetry_axis(const Vec3& m);
  static Orientation rot_z(double angle) { return from_axis_angle(Vec3::UnitZ(), angle); }

  const Eigen::Quaterniond& quaternion() const { return q_; }
  Mat3 matrix() const { return q_.toRotationMatrix(); }
  /// m = R e3
  Vec3 symmetry_axis() const;

  Orientation inverse() const;
  Orientation operator*(const Orientation& other) const;

  Vec3 rotate(const Vec3& v) const { return q_ * v; }
  Vec3 rotate_inverse(const Vec3& v) const { return q_.conjugate() * v; }

 private:
  Eigen::Quaterniond q_ = Eigen::Quaterniond::Identity();
};

/// Orientation with R(result) = R^T(b) R(a).
Orientation relative_orientation(const Orientation& a, const Orientation& b);

/// Angle between the symmetry axes, in [0, pi]. Throws std::invalid_argument
/// for bodies without azimuthal symmetry.
double axis_angle_between(const BodySpec& body, const Orientation& a, const Orientation& b);

/// Angle between two unit vectors, accurate near 0 and pi.
double angle_between(const Vec3& a, const Vec3& b);

}  // namespace cslrot

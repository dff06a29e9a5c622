#include "cslrot/params.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cslrot {

namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

void validate_shape(const Shape& shape) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Cylinder> || std::is_same_v<T, Spheroid>) {
          require_positive(s.length, "length");
          require_positive(s.radius, "radius");
        } else if constexpr (std::is_same_v<T, Sphere>) {
          require_positive(s.radius, "radius");
        } else {
          if (s.atoms.empty()) throw std::invalid_argument("atom list must not be empty");
          for (const auto& a : s.atoms) {
            require_positive(a.mass, "atom mass");
            if (!a.position.allFinite()) throw std::invalid_argument("atom position must be finite");
          }
        }
      },
      shape);
}

}  // namespace

CslParams::CslParams(double lambda_c, double r_c, double m0)
    : lambda_c_(lambda_c), r_c_(r_c), m0_(m0) {
  if (!(lambda_c >= 0.0) || !std::isfinite(lambda_c))
    throw std::invalid_argument("lambda_c must be non-negative and finite");
  require_positive(r_c, "r_c");
  require_positive(m0, "m0");
}

double material_density(std::string_view name) {
  if (name == "silicon" || name == "Si") return 2329.0;
  if (name == "silica" || name == "SiO2") return 2200.0;
  throw std::invalid_argument("unknown material '" + std::string(name) + "'");
}

double shape_volume(const Shape& shape) {
  using std::numbers::pi;
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Cylinder>) {
          return pi * s.radius * s.radius * s.length;
        } else if constexpr (std::is_same_v<T, Spheroid>) {
          return 2.0 / 3.0 * pi * s.radius * s.radius * s.length;
        } else if constexpr (std::is_same_v<T, Sphere>) {
          return 4.0 / 3.0 * pi * s.radius * s.radius * s.radius;
        } else {
          return 0.0;
        }
      },
      shape);
}

BodySpec::BodySpec(Shape shape, double mass) : shape_(std::move(shape)), mass_(mass) {}

BodySpec BodySpec::with_density(Shape shape, double density) {
  validate_shape(shape);
  if (std::holds_alternative<Atoms>(shape))
    throw std::invalid_argument("point-mass bodies take their mass from the atom list");
  require_positive(density, "density");
  const double mass = density * shape_volume(shape);
  return BodySpec(std::move(shape), mass);
}

BodySpec BodySpec::with_mass(Shape shape, double mass) {
  validate_shape(shape);
  if (std::holds_alternative<Atoms>(shape))
    throw std::invalid_argument("point-mass bodies take their mass from the atom list");
  require_positive(mass, "mass");
  return BodySpec(std::move(shape), mass);
}

BodySpec BodySpec::from_atoms(std::vector<PointMass> atoms) {
  Shape shape = Atoms{std::move(atoms)};
  validate_shape(shape);
  double mass = 0.0;
  for (const auto& a : std::get<Atoms>(shape).atoms) mass += a.mass;
  return BodySpec(std::move(shape), mass);
}

double BodySpec::volume() const { return shape_volume(shape_); }

double BodySpec::density() const {
  if (std::holds_alternative<Atoms>(shape_))
    throw std::logic_error("point-mass bodies have no uniform density");
  return mass_ / volume();
}

double BodySpec::max_extent() const {
  return std::visit(
      [](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Cylinder>) {
          return std::hypot(s.length, 2.0 * s.radius);
        } else if constexpr (std::is_same_v<T, Spheroid>) {
          return std::max(s.length, 2.0 * s.radius);
        } else if constexpr (std::is_same_v<T, Sphere>) {
          return 2.0 * s.radius;
        } else {
          double d = 0.0;
          for (std::size_t i = 0; i < s.atoms.size(); ++i)
            for (std::size_t j = i + 1; j < s.atoms.size(); ++j)
              d = std::max(d, (s.atoms[i].position - s.atoms[j].position).norm());
          return d;
        }
      },
      shape_);
}

bool BodySpec::azimuthally_symmetric() const { return !std::holds_alternative<Atoms>(shape_); }

bool BodySpec::inversion_symmetric() const {
  if (!std::holds_alternative<Atoms>(shape_)) return true;
  // A point set is inversion symmetric if every atom has an equal-mass partner at -r.
  const auto& atoms = std::get<Atoms>(shape_).atoms;
  for (const auto& a : atoms) {
    bool found = false;
    for (const auto& b : atoms) {
      if (b.mass == a.mass && (a.position + b.position).norm() <= 1e-12 * (1.0 + a.position.norm())) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

std::string BodySpec::shape_name() const {
  return std::visit(
      [](const auto& s) -> std::string {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Cylinder>) return "cylinder";
        else if constexpr (std::is_same_v<T, Spheroid>) return "spheroid";
        else if constexpr (std::is_same_v<T, Sphere>) return "sphere";
        else return "atoms";
      },
      shape_);
}

BodySpec BodySpec::scaled(double s) const {
  require_positive(s, "scale factor");
  return std::visit(
      [&](const auto& sh) -> BodySpec {
        using T = std::decay_t<decltype(sh)>;
        const double mass = mass_ * s * s * s;
        if constexpr (std::is_same_v<T, Atoms>) {
          std::vector<PointMass> atoms = sh.atoms;
          for (auto& a : atoms) {
            a.mass *= s * s * s;
            a.position *= s;
          }
          return from_atoms(std::move(atoms));
        } else if constexpr (std::is_same_v<T, Sphere>) {
          return BodySpec(Sphere{sh.radius * s}, mass);
        } else {
          return BodySpec(T{sh.length * s, sh.radius * s}, mass);
        }
      },
      shape_);
}

MassProperties body_mass_and_inertia(const BodySpec& body) {
  const double M = body.mass();
  Mat3 inertia = Mat3::Zero();
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, Cylinder>) {
          const double perp = M * (s.length * s.length / 12.0 + s.radius * s.radius / 4.0);
          inertia.diagonal() << perp, perp, M * s.radius * s.radius / 2.0;
        } else if constexpr (std::is_same_v<T, Spheroid>) {
          const double perp = M * (s.length * s.length / 4.0 + s.radius * s.radius) / 5.0;
          inertia.diagonal() << perp, perp, 2.0 * M * s.radius * s.radius / 5.0;
        } else if constexpr (std::is_same_v<T, Sphere>) {
          inertia.diagonal().setConstant(2.0 * M * s.radius * s.radius / 5.0);
        } else {
          for (const auto& a : s.atoms)
            inertia += a.mass * (a.position.squaredNorm() * Mat3::Identity() -
                                 a.position * a.position.transpose());
        }
      },
      body.shape());
  return {M, inertia};
}

Orientation::Orientation(const Eigen::Quaterniond& q) : q_(q) {
  const double n = q.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw std::invalid_argument("quaternion must be nonzero and finite");
  q_.normalize();
}

Orientation Orientation::from_axis_angle(const Vec3& axis, double angle) {
  const double n = axis.norm();
  if (!(n > 0.0)) throw std::invalid_argument("rotation axis must be nonzero");
  return Orientation(Eigen::Quaterniond(Eigen::AngleAxisd(angle, axis / n)));
}

Orientation Orientation::from_symmetry_axis(const Vec3& m) {
  const double n = m.norm();
  if (!(n > 0.0)) throw std::invalid_argument("symmetry axis must be nonzero");
  return Orientation(Eigen::Quaterniond::FromTwoVectors(Vec3::UnitZ(), m / n));
}

Vec3 Orientation::symmetry_axis() const { return q_ * Vec3::UnitZ(); }

Orientation Orientation::inverse() const { return Orientation(q_.conjugate()); }

Orientation Orientation::operator*(const Orientation& other) const {
  return Orientation(q_ * other.q_);
}

Orientation relative_orientation(const Orientation& a, const Orientation& b) {
  return b.inverse() * a;
}

double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b));
}

double axis_angle_between(const BodySpec& body, const Orientation& a, const Orientation& b) {
  if (!body.azimuthally_symmetric())
    throw std::invalid_argument("axis angle requires an azimuthally symmetric body");
  return angle_between(a.symmetry_axis(), b.symmetry_axis());
}

}  // namespace cslrot

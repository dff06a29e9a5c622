#pragma once

#include "cslrot/diffusion.hpp"
#include "cslrot/params.hpp"
#include "cslrot/quadrature.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace cslrot {

struct HeatingMeasurement {
  double gamma_cm;   ///< K/s
  double gamma_rot;  ///< K/s
  double rel_error;  ///< fractional, in [0, 1)
  BodySpec body;

  void validate() const;
};

enum class Channel { Cm, Rot };

const char* channel_name(Channel c);

/// Thrown when the chosen channel does not respond to the collapse noise
/// for this body (e.g. rotation of a sphere).
class ChannelInsensitive : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Collapse rate (1/s) that reproduces the measured heating in one channel:
///   lambda = Gamma X k_B / (2 d(r_c)),  X = M or I_perp,
/// with d the diffusion coefficient per unit collapse rate.
double lambda_bound(double r_c, const HeatingMeasurement& meas, Channel channel, double m0 = kConstants.amu,
                    const QuadratureSpec& spec = {});

struct ExclusionCurve {
  Channel channel;
  std::vector<double> r_c;           ///< m
  std::vector<double> lambda_bound;  ///< 1/s
  std::vector<double> band_low;      ///< lambda (1 - rel_error)
  std::vector<double> band_high;     ///< lambda (1 + rel_error)
};

/// 200 log-spaced points on [1 nm, 100 um].
std::vector<double> default_r_c_grid();
std::vector<double> log_grid(double lo, double hi, std::size_t n);

ExclusionCurve exclusion_curve(const HeatingMeasurement& meas, Channel channel, std::span<const double> r_c_grid,
                               double m0 = kConstants.amu, const QuadratureSpec& spec = {});

struct CrossingPoint {
  double r_c;       ///< m
  double lambda_c;  ///< 1/s
};

/// Axis-aligned box spanned by the crossings of the +-rel_error bands.
struct ErrorRectangle {
  double r_c_min, r_c_max;
  double lambda_min, lambda_max;
};

struct Intersection {
  CrossingPoint point;
  ErrorRectangle region;
};

class NoIntersection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AmbiguousIntersection : public std::runtime_error {
 public:
  AmbiguousIntersection(const std::string& what, std::vector<CrossingPoint> roots)
      : std::runtime_error(what), roots_(std::move(roots)) {}
  const std::vector<CrossingPoint>& roots() const { return roots_; }

 private:
  std::vector<CrossingPoint> roots_;
};

struct IntersectOptions {
  double r_c_min = 1e-9;
  double r_c_max = 1e-5;
  std::size_t scan_points = 200;
  /// Bisection stops when the bracket is below this relative width in r_c.
  double rel_tol = 1e-8;
  double m0 = kConstants.amu;
  QuadratureSpec spec = {};
};

/// Crossing of the two bound curves, found by a scan for sign changes of
/// log(lambda_cm / lambda_rot) over log r_c followed by bisection.
/// Throws NoIntersection without a sign change and AmbiguousIntersection
/// (with every refined root) for more than one.
Intersection intersect(const HeatingMeasurement& meas, const IntersectOptions& opt = {});

/// Forward model: heating rates produced by collapse parameters (lambda_c, r_c).
HeatingMeasurement forward_heating(const BodySpec& body, const CslParams& csl, double rel_error = 0.0,
                                   const QuadratureSpec& spec = {});

}  // namespace cslrot

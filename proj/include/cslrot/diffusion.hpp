#pragma once

#include "cslrot/localization.hpp"
#include "cslrot/params.hpp"
#include "cslrot/quadrature.hpp"

#include <optional>
#include <span>
#include <vector>

namespace cslrot {

/// Momentum diffusion coefficients. d_par, d_perp in kg^2 m^2 / s^3,
/// d_rot in (J s)^2 / s.
struct DiffusionSet {
  double d_par = 0.0;
  double d_perp = 0.0;
  double d_rot = 0.0;
  std::optional<BodySpec> body;
  std::optional<CslParams> csl;
};

/// Dimensionless cylinder factors g with
///   D_par  = lambda hbar^2 M^2 / (2 r_c^2 m0^2) * par
///   D_perp = lambda hbar^2 M^2 / (2 r_c^2 m0^2) * perp
///   D_rot  = lambda hbar^2 M^2 / (2 m0^2)       * rot
/// as functions of x = R^2/(2 r_c^2), y = L^2/(4 r_c^2).
struct CylinderFactors {
  double par;
  double perp;
  double rot;
};
CylinderFactors cylinder_factors(double x, double y);

DiffusionSet cylinder_diffusion_closed(const CslParams& csl, double M, double R, double L);

/// Reads (D_perp, D_par, D_rot) from axisymmetric tensors with the symmetry
/// axis along e3. Throws std::domain_error if the tensors deviate from that
/// structure by more than rel_tol (relative to their largest entry).
DiffusionSet diffusion_from_tensors(const GeometryTensors& t, const CslParams& csl, double rel_tol = 1e-6);

/// Diffusion coefficients of any azimuthally symmetric body: closed form for
/// cylinders, geometry-tensor quadrature otherwise. Spheroid and sphere
/// results are memoized per (shape, R/r_c, L/r_c, tolerance).
DiffusionSet diffusion_for_body(const BodySpec& body, const CslParams& csl, const QuadratureSpec& spec = {});

/// Number of entries currently held by the spheroid memo.
std::size_t diffusion_memo_size();
void clear_diffusion_memo();

struct HeatingRates {
  double dp2_dt;     ///< d<P^2>/dt, kg^2 m^2 / s^3
  double dj2_dt;     ///< d<J^2>/dt, (J s)^2 / s
  double gamma_cm;   ///< 2 D_perp / (M k_B), K/s
  double gamma_rot;  ///< 2 D_rot / (I_perp k_B), K/s
};

HeatingRates heating_rates(const DiffusionSet& d, const BodySpec& body);

struct DiffusionPoint {
  double r_c;
  double d_par;
  double d_perp;
  double d_rot;
};

std::vector<DiffusionPoint> diffusion_curve(const BodySpec& body, const CslParams& csl,
                                            std::span<const double> r_c_grid,
                                            const QuadratureSpec& spec = {});

}  // namespace cslrot

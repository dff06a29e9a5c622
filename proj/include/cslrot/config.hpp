#pragma once

#include "cslrot/params.hpp"
#include "cslrot/quadrature.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cslrot {

/// Schema or value error in a run configuration; key() is the dotted path
/// of the offending entry.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::invalid_argument(key.empty() ? what : "'" + key + "': " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct CslSection {
  std::optional<double> lambda_c;  ///< 1/s
  std::optional<double> r_c;       ///< m
  double m0 = kConstants.amu;      ///< kg

  /// Collapse parameters at the given r_c; throws ConfigError without lambda_c.
  CslParams at(double r_c) const;
};

struct KRay {
  double theta;  ///< rad, from the body e3 axis
  double phi;    ///< rad
};

struct FormfactorSection {
  std::vector<KRay> rays;
  std::vector<double> k;  ///< 1/m
};

struct LocrateSection {
  std::vector<double> alphas;  ///< rad
  std::vector<double> r_c;     ///< m
};

struct DiffusionSection {
  std::vector<double> r_c;  ///< m
};

struct PlanarSection {
  double sigma_alpha = 0.1;
  double d_rot = 0.0;              ///< hbar^3 / I
  std::optional<double> inertia;   ///< kg m^2; defaults to I_perp of the body
  std::vector<double> times;       ///< I / hbar
  std::size_t n_alpha = 512;
  std::optional<int> m_max;
  double check_dt = 1e-3;  ///< I / hbar, step of the --check integrator
};

struct ExcludeSection {
  double gamma_cm = 0.0;   ///< K/s
  double gamma_rot = 0.0;  ///< K/s
  double rel_error = 0.0;
  std::vector<double> r_c;  ///< curve grid, m
  double search_min = 1e-9;
  double search_max = 1e-5;
  std::size_t scan_points = 200;
};

/// Parsed and validated run configuration. Sections are optional at parse
/// time; each command requires its own.
struct RunConfig {
  std::optional<BodySpec> body;
  CslSection csl;
  QuadratureSpec quadrature;
  std::optional<FormfactorSection> formfactor;
  std::optional<LocrateSection> locrate;
  std::optional<DiffusionSection> diffusion;
  std::optional<PlanarSection> planar;
  std::optional<ExcludeSection> exclude;

  std::string canonical;  ///< sorted-key JSON dump of the input
  std::uint64_t hash = 0;  ///< FNV-1a of canonical
};

RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::string& path);

std::uint64_t fnv1a64(std::string_view bytes);

/// "12nm", "3.5um", "1e-7" or "2mm"; plain numbers are meters.
double parse_length(std::string_view s);
/// "amu", "amu:28.0855" or kilograms.
double parse_mass(std::string_view s);
/// "0.5", "0.02pi", "90deg".
double parse_scalar(std::string_view s);

}  // namespace cslrot

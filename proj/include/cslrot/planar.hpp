#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cslrot {

/// Wigner function w(alpha, m) of a planar rotor on a uniform angle grid
/// alpha_j = -pi + 2 pi j / N_alpha and the ladder m = -m_max .. m_max.
/// Values are per radian; sum_m int dalpha w = 1.
class PlanarWignerState {
 public:
  PlanarWignerState(std::size_t n_alpha, int m_max, double inertia);

  std::size_t n_alpha() const { return n_alpha_; }
  int m_max() const { return m_max_; }
  std::size_t n_m() const { return static_cast<std::size_t>(2 * m_max_ + 1); }
  double inertia() const { return inertia_; }  ///< kg m^2
  double d_alpha() const;
  double alpha(std::size_t j) const;

  double& at(std::size_t j, int m) { return values_[row(m) * n_alpha_ + j]; }
  double at(std::size_t j, int m) const { return values_[row(m) * n_alpha_ + j]; }
  std::span<double> row_span(int m) { return {values_.data() + row(m) * n_alpha_, n_alpha_}; }
  std::span<const double> row_span(int m) const { return {values_.data() + row(m) * n_alpha_, n_alpha_}; }
  const std::vector<double>& values() const { return values_; }

  double norm() const;

 private:
  std::size_t row(int m) const;

  std::size_t n_alpha_;
  int m_max_;
  double inertia_;
  std::vector<double> values_;
};

/// d_rot in (J s)^2/s, inertia in kg m^2.
struct PlanarParams {
  double d_rot;
  double inertia;
  std::vector<double> times;  ///< s

  /// From rotor units: d_rot in hbar^3/I, times in I/hbar.
  static PlanarParams natural(double d_rot_natural, double inertia, std::vector<double> times_natural = {});
  double d_rot_natural() const;
  void validate() const;
};

/// Rotor time unit conversions.
double time_to_natural(double t, double inertia);
double time_from_natural(double tau, double inertia);

/// w0 = (-1)^m I_m[cos(2 alpha)/(4 sigma^2)] / (2 pi I_0(1/(4 sigma^2))): the
/// Wigner function of psi ~ exp(-cos^2(alpha)/(4 sigma^2)). Throws
/// std::domain_error if more than 1e-10 of the mass lies beyond m_max.
PlanarWignerState initial_cos_squeezed(double sigma_alpha, std::size_t n_alpha, int m_max, double inertia);

/// Smallest m_99 with sum_{|m| <= m_99} p(m) >= 1 - 1e-12 for the state above.
int cos_squeezed_m99(double sigma_alpha, std::size_t n_alpha = 512);

/// ceil(m_99 + 8 sqrt(2 D t_max / hbar^2)), the ladder needed up to t_max (s).
int default_m_max(double sigma_alpha, const PlanarParams& params, double t_max, std::size_t n_alpha = 512);

/// Propagation kernel T_t(alpha_j, l) on the state grid for |l| <= ell_max,
/// row-major [l + ell_max][j]. The k-sum runs to the Nyquist mode (half
/// weight). Throws ConvergenceError if the retained l-range carries less than
/// 1 - 1e-12 of the kernel mass.
struct KernelTable {
  std::size_t n_alpha;
  int ell_max;
  std::vector<double> values;
  double at(std::size_t j, int ell) const { return values[(ell + ell_max) * n_alpha + j]; }
  /// sum_l sum_j T (2 pi / N)
  double mass() const;
};
KernelTable kernel(double t, const PlanarParams& params, std::size_t n_alpha, int ell_max);

/// Exact propagation by the Bessel kernel, applied in the angle Fourier domain.
/// Throws std::domain_error if more than 1e-8 of the mass reaches the last
/// four ladder rungs.
PlanarWignerState evolve_exact(const PlanarWignerState& w0, double t, const PlanarParams& params);

/// Independent split-step integrator: exact spectral advection alternated
/// with classical Runge-Kutta steps of the m-Laplacian, composed to fourth
/// order. dt in s. Throws ConvergenceError if the norm drifts by more than 1e-6.
PlanarWignerState evolve_ode(const PlanarWignerState& w0, double t, const PlanarParams& params, double dt);

struct Marginals {
  std::vector<double> p_alpha;  ///< 1/rad, on the state grid
  std::vector<double> p_m;      ///< index m + m_max
};
Marginals marginals(const PlanarWignerState& w);

/// <exp(i alpha)> of the state.
std::complex<double> mean_orientation(const PlanarWignerState& w);
/// 1 - |<exp(i alpha)>|^2
double orientation_variance(const PlanarWignerState& w);
/// <m^2>
double mean_m2(const PlanarWignerState& w);
/// <p^2 / 2I> in J.
double mean_energy(const PlanarWignerState& w);

/// Free variance 1 - |<exp(i(alpha + hbar m t / I))>_0|^2 from the initial state.
double variance_free(const PlanarWignerState& w0, double t);

/// Attenuation of |<exp(i alpha)>| by the diffusion:
///   exp{-(D t / 2 hbar^2) [1 - sinc(2 hbar t / I)]}
double revival_suppression(double t, const PlanarParams& params);

/// sigma_C^2 = 1 - (1 - sigma_0^2) * revival_suppression^2.
double variance_csl(double sigma0_sq, double t, const PlanarParams& params);
double variance_csl(const PlanarWignerState& w0, double t, const PlanarParams& params);

/// CSV snapshot: '# key = value' header lines then alpha_rad,m,w rows.
std::string snapshot_csv(const PlanarWignerState& w, double t, const PlanarParams& params, double sigma_alpha);

}  // namespace cslrot

#include "cslrot/planar.hpp"

#include "cslrot/params.hpp"
#include "cslrot/quadrature.hpp"
#include "cslrot/specfun.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace cslrot {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
using cplx = std::complex<double>;

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

/// Per-row real FFTs over the angle grid. Row spectra are stored as
/// [row][k], k = 0 .. N/2, unnormalized forward transform.
class RowFft {
 public:
  explicit RowFft(std::size_t n) : n_(n), nk_(n / 2 + 1) {
    in_ = fftw_alloc_real(n_);
    out_ = fftw_alloc_complex(nk_);
    std::lock_guard lock(fftw_planner_mutex());
    fwd_ = fftw_plan_dft_r2c_1d(static_cast<int>(n_), in_, out_, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_c2r_1d(static_cast<int>(n_), out_, in_, FFTW_ESTIMATE);
  }
  ~RowFft() {
    {
      std::lock_guard lock(fftw_planner_mutex());
      fftw_destroy_plan(fwd_);
      fftw_destroy_plan(bwd_);
    }
    fftw_free(in_);
    fftw_free(out_);
  }
  RowFft(const RowFft&) = delete;
  RowFft& operator=(const RowFft&) = delete;

  std::size_t nk() const { return nk_; }

  void forward(std::span<const double> row, std::span<cplx> spec) {
    std::copy(row.begin(), row.end(), in_);
    fftw_execute(fwd_);
    for (std::size_t k = 0; k < nk_; ++k) spec[k] = {out_[k][0], out_[k][1]};
  }

  /// Inverse including the 1/N factor.
  void backward(std::span<const cplx> spec, std::span<double> row) {
    for (std::size_t k = 0; k < nk_; ++k) {
      out_[k][0] = spec[k].real();
      out_[k][1] = spec[k].imag();
    }
    fftw_execute(bwd_);
    const double inv = 1.0 / static_cast<double>(n_);
    for (std::size_t j = 0; j < n_; ++j) row[j] = in_[j] * inv;
  }

 private:
  std::size_t n_, nk_;
  double* in_;
  fftw_complex* out_;
  fftw_plan fwd_, bwd_;
};

struct Spectrum {
  std::size_t nk;
  int m_max;
  std::vector<cplx> data;  // [m + m_max][k]
  cplx& at(int m, std::size_t k) { return data[(m + m_max) * nk + k]; }
  cplx at(int m, std::size_t k) const { return data[(m + m_max) * nk + k]; }
};

Spectrum to_spectrum(const PlanarWignerState& w, RowFft& fft) {
  Spectrum s{fft.nk(), w.m_max(), std::vector<cplx>(fft.nk() * w.n_m())};
  for (int m = -w.m_max(); m <= w.m_max(); ++m)
    fft.forward(w.row_span(m), {s.data.data() + (m + w.m_max()) * s.nk, s.nk});
  return s;
}

PlanarWignerState from_spectrum(const Spectrum& s, const PlanarWignerState& like, RowFft& fft) {
  PlanarWignerState w(like.n_alpha(), like.m_max(), like.inertia());
  for (int m = -w.m_max(); m <= w.m_max(); ++m)
    fft.backward({s.data.data() + (m + w.m_max()) * s.nk, s.nk}, w.row_span(m));
  return w;
}

void check_even_grid(std::size_t n) {
  if (n < 8 || n % 2 != 0) throw std::invalid_argument("planar: n_alpha must be even and at least 8");
}

/// e^{-beta} I_l(beta * x) for l = 0 .. out.size()-1, |x| <= 1.
void damped_bessel(double beta, double x, std::span<double> out) {
  const double z = beta * x;
  specfun::bessel_i_scaled_array(std::abs(z), out);
  const double damp = std::exp(std::abs(z) - beta);
  for (std::size_t l = 0; l < out.size(); ++l) {
    out[l] *= damp;
    if (z < 0.0 && (l % 2 == 1)) out[l] = -out[l];
  }
}

double edge_mass(const PlanarWignerState& w) {
  double edge = 0.0;
  const double da = w.d_alpha();
  for (int m = -w.m_max(); m <= w.m_max(); ++m) {
    if (std::abs(m) <= w.m_max() - 4) continue;
    for (double v : w.row_span(m)) edge += std::abs(v) * da;
  }
  return edge;
}

}  // namespace

PlanarWignerState::PlanarWignerState(std::size_t n_alpha, int m_max, double inertia)
    : n_alpha_(n_alpha), m_max_(m_max), inertia_(inertia) {
  check_even_grid(n_alpha);
  if (m_max < 1) throw std::invalid_argument("PlanarWignerState: m_max must be positive");
  if (!(inertia > 0.0)) throw std::invalid_argument("PlanarWignerState: inertia must be positive");
  values_.assign(n_alpha_ * n_m(), 0.0);
}

double PlanarWignerState::d_alpha() const { return kTwoPi / static_cast<double>(n_alpha_); }

double PlanarWignerState::alpha(std::size_t j) const {
  return -std::numbers::pi + kTwoPi * static_cast<double>(j) / static_cast<double>(n_alpha_);
}

std::size_t PlanarWignerState::row(int m) const {
  if (m < -m_max_ || m > m_max_) throw std::out_of_range("PlanarWignerState: m outside the ladder");
  return static_cast<std::size_t>(m + m_max_);
}

double PlanarWignerState::norm() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s * d_alpha();
}

PlanarParams PlanarParams::natural(double d_rot_natural, double inertia, std::vector<double> times_natural) {
  const double hb = kConstants.hbar;
  PlanarParams p{d_rot_natural * hb * hb * hb / inertia, inertia, {}};
  for (double t : times_natural) p.times.push_back(time_from_natural(t, inertia));
  p.validate();
  return p;
}

double PlanarParams::d_rot_natural() const {
  const double hb = kConstants.hbar;
  return d_rot * inertia / (hb * hb * hb);
}

void PlanarParams::validate() const {
  if (!(d_rot >= 0.0)) throw std::invalid_argument("PlanarParams: d_rot must be non-negative");
  if (!(inertia > 0.0)) throw std::invalid_argument("PlanarParams: inertia must be positive");
  for (double t : times)
    if (!(t >= 0.0)) throw std::invalid_argument("PlanarParams: times must be non-negative");
}

double time_to_natural(double t, double inertia) { return kConstants.hbar * t / inertia; }
double time_from_natural(double tau, double inertia) { return tau * inertia / kConstants.hbar; }

PlanarWignerState initial_cos_squeezed(double sigma_alpha, std::size_t n_alpha, int m_max, double inertia) {
  if (!(sigma_alpha > 0.0)) throw std::invalid_argument("initial_cos_squeezed: sigma_alpha must be positive");
  PlanarWignerState w(n_alpha, m_max, inertia);
  const double a = 1.0 / (4.0 * sigma_alpha * sigma_alpha);
  const double norm0 = kTwoPi * specfun::bessel_i_scaled(0, a);  // N e^{-a}
  std::vector<double> bess(static_cast<std::size_t>(m_max) + 1);
  for (std::size_t j = 0; j < n_alpha; ++j) {
    const double x = a * std::cos(2.0 * w.alpha(j));
    specfun::bessel_i_scaled_array(x, bess);
    const double scale = std::exp(std::abs(x) - a) / norm0;
    for (int m = 0; m <= m_max; ++m) {
      const double v = ((m % 2 == 0) ? 1.0 : -1.0) * bess[m] * scale;
      w.at(j, m) = v;
      w.at(j, -m) = v;
    }
  }
  const double lost = std::abs(1.0 - w.norm());
  if (lost > 1e-10)
    throw std::domain_error("initial_cos_squeezed: m_max too small, truncated mass " + std::to_string(lost));
  return w;
}

int cos_squeezed_m99(double sigma_alpha, std::size_t n_alpha) {
  int m_max = 32;
  for (;;) {
    try {
      const auto w = initial_cos_squeezed(sigma_alpha, n_alpha, m_max, 1.0);
      const auto p = marginals(w).p_m;
      double inside = p[m_max];
      if (inside >= 1.0 - 1e-12) return 0;
      for (int m = 1; m <= m_max; ++m) {
        inside += p[m_max + m] + p[m_max - m];
        if (inside >= 1.0 - 1e-12) return m;
      }
    } catch (const std::domain_error&) {
    }
    m_max *= 2;
    if (m_max > 1 << 16) throw std::domain_error("cos_squeezed_m99: sigma_alpha too small");
  }
}

int default_m_max(double sigma_alpha, const PlanarParams& params, double t_max, std::size_t n_alpha) {
  params.validate();
  const double hb = kConstants.hbar;
  const double spread = std::sqrt(2.0 * params.d_rot * t_max / (hb * hb));
  return static_cast<int>(std::ceil(cos_squeezed_m99(sigma_alpha, n_alpha) + 8.0 * spread));
}

double KernelTable::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * kTwoPi / static_cast<double>(n_alpha);
}

KernelTable kernel(double t, const PlanarParams& params, std::size_t n_alpha, int ell_max) {
  params.validate();
  check_even_grid(n_alpha);
  if (!(t >= 0.0)) throw std::invalid_argument("kernel: t must be non-negative");
  if (ell_max < 0) throw std::invalid_argument("kernel: ell_max must be non-negative");
  const double tau = time_to_natural(t, params.inertia);
  const double beta = 0.5 * params.d_rot_natural() * tau;

  std::vector<double> s0(static_cast<std::size_t>(ell_max) + 1);
  damped_bessel(beta, 1.0, s0);
  double kept = s0[0];
  for (int l = 1; l <= ell_max; ++l) kept += 2.0 * s0[l];
  if (kept < 1.0 - 1e-12)
    throw ConvergenceError("kernel: ell range too small for the diffusion spread", kept, 1.0 - kept);

  const std::size_t nk = n_alpha / 2 + 1;
  // s[k][l] = e^{-beta} I_l(beta sinc(k tau))
  std::vector<std::vector<double>> s(nk, std::vector<double>(static_cast<std::size_t>(ell_max) + 1));
  for (std::size_t k = 0; k < nk; ++k) damped_bessel(beta, specfun::sinc(static_cast<double>(k) * tau), s[k]);

  KernelTable table{n_alpha, ell_max, std::vector<double>((2 * ell_max + 1) * n_alpha)};
  RowFft fft(n_alpha);
  std::vector<cplx> spec(nk);
  for (int l = -ell_max; l <= ell_max; ++l) {
    const std::size_t al = static_cast<std::size_t>(std::abs(l));
    for (std::size_t k = 0; k < nk; ++k) {
      // Grid origin at -pi contributes (-1)^k.
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      spec[k] = sign * s[k][al] * std::polar(1.0, static_cast<double>(k) * l * tau);
    }
    std::span<double> row(table.values.data() + (l + ell_max) * n_alpha, n_alpha);
    fft.backward(spec, row);
    // backward() divides by N; the kernel carries 1/(2 pi) instead.
    for (double& v : row) v *= static_cast<double>(n_alpha) / kTwoPi;
  }
  return table;
}

PlanarWignerState evolve_exact(const PlanarWignerState& w0, double t, const PlanarParams& params) {
  params.validate();
  if (!(t >= 0.0)) throw std::invalid_argument("evolve_exact: t must be non-negative");
  const int M = w0.m_max();
  const double tau = time_to_natural(t, params.inertia);
  const double beta = 0.5 * params.d_rot_natural() * tau;
  RowFft fft(w0.n_alpha());
  const Spectrum in = to_spectrum(w0, fft);
  Spectrum out{in.nk, M, std::vector<cplx>(in.data.size())};
  std::vector<double> s(static_cast<std::size_t>(M) + 1);
  std::vector<cplx> phase(static_cast<std::size_t>(4 * M + 1));
  for (std::size_t k = 0; k < in.nk; ++k) {
    const double kd = static_cast<double>(k);
    damped_bessel(beta, specfun::sinc(kd * tau), s);
    for (int n = -2 * M; n <= 2 * M; ++n) phase[n + 2 * M] = std::polar(1.0, -kd * n * tau);
    for (int m = -M; m <= M; ++m) {
      cplx acc = 0.0;
      // source rung n = m - 2 l within [-M, M]
      const int l_lo = (m - M + ((m - M) % 2 != 0 ? 1 : 0)) / 2;  // ceil((m - M)/2)
      const int l_hi = (m + M - ((m + M) % 2 != 0 ? 1 : 0)) / 2;  // floor((m + M)/2)
      for (int l = std::max(l_lo, -M); l <= std::min(l_hi, M); ++l)
        acc += in.at(m - 2 * l, k) * phase[m - l + 2 * M] * s[static_cast<std::size_t>(std::abs(l))];
      out.at(m, k) = acc;
    }
  }
  PlanarWignerState w = from_spectrum(out, w0, fft);
  const double edge = edge_mass(w);
  if (edge > 1e-8)
    throw std::domain_error("evolve_exact: m_max too small, edge mass " + std::to_string(edge));
  return w;
}

PlanarWignerState evolve_ode(const PlanarWignerState& w0, double t, const PlanarParams& params, double dt) {
  params.validate();
  if (!(t >= 0.0)) throw std::invalid_argument("evolve_ode: t must be non-negative");
  if (!(dt > 0.0)) throw std::invalid_argument("evolve_ode: dt must be positive");
  const int M = w0.m_max();
  const std::size_t nm = w0.n_m();
  const std::size_t steps = t == 0.0 ? 0 : static_cast<std::size_t>(std::ceil(t / dt));
  const double h = steps == 0 ? 0.0 : time_to_natural(t, params.inertia) / static_cast<double>(steps);
  const double c = 0.25 * params.d_rot_natural();

  // Fourth-order triple-jump composition of the symmetric splitting.
  const double cbrt2 = std::cbrt(2.0);
  const double g1 = 1.0 / (2.0 - cbrt2);
  const std::array<double, 3> sub = {g1, 1.0 - 2.0 * g1, g1};

  // RK4 sub-steps keep |step| * (spectral radius 4c) <= 1.
  std::array<int, 3> rk_sub{};
  for (std::size_t s = 0; s < 3; ++s)
    rk_sub[s] = c == 0.0 ? 0 : std::max(1, static_cast<int>(std::ceil(std::abs(sub[s] * h) * 4.0 * c)));

  RowFft fft(w0.n_alpha());
  Spectrum spec = to_spectrum(w0, fft);
  double largest = 0.0;
  for (const auto& v : spec.data) largest = std::max(largest, std::abs(v));

  std::vector<cplx> y(nm), k1(nm), k2(nm), k3(nm), k4(nm), tmp(nm);
  std::array<std::vector<cplx>, 3> half_phase;
  auto lap = [&](const std::vector<cplx>& v, std::vector<cplx>& r) {
    for (std::size_t i = 0; i < nm; ++i) {
      const cplx lo = i >= 2 ? v[i - 2] : cplx{};
      const cplx hi = i + 2 < nm ? v[i + 2] : cplx{};
      r[i] = c * (lo - 2.0 * v[i] + hi);
    }
  };
  auto rk4 = [&](double step) {
    lap(y, k1);
    for (std::size_t i = 0; i < nm; ++i) tmp[i] = y[i] + 0.5 * step * k1[i];
    lap(tmp, k2);
    for (std::size_t i = 0; i < nm; ++i) tmp[i] = y[i] + 0.5 * step * k2[i];
    lap(tmp, k3);
    for (std::size_t i = 0; i < nm; ++i) tmp[i] = y[i] + step * k3[i];
    lap(tmp, k4);
    for (std::size_t i = 0; i < nm; ++i) y[i] += step / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  };

  for (std::size_t k = 0; k < spec.nk; ++k) {
    double row_max = 0.0;
    for (int m = -M; m <= M; ++m) row_max = std::max(row_max, std::abs(spec.at(m, k)));
    if (row_max <= 1e-20 * largest) {
      for (int m = -M; m <= M; ++m) spec.at(m, k) = 0.0;
      continue;
    }
    const double kd = static_cast<double>(k);
    for (std::size_t s = 0; s < 3; ++s) {
      half_phase[s].resize(nm);
      for (int m = -M; m <= M; ++m) half_phase[s][m + M] = std::polar(1.0, -kd * m * 0.5 * sub[s] * h);
    }
    for (int m = -M; m <= M; ++m) y[m + M] = spec.at(m, k);
    for (std::size_t n = 0; n < steps; ++n) {
      for (std::size_t s = 0; s < 3; ++s) {
        for (std::size_t i = 0; i < nm; ++i) y[i] *= half_phase[s][i];
        for (int r = 0; r < rk_sub[s]; ++r) rk4(sub[s] * h / rk_sub[s]);
        for (std::size_t i = 0; i < nm; ++i) y[i] *= half_phase[s][i];
      }
    }
    for (int m = -M; m <= M; ++m) spec.at(m, k) = y[m + M];
  }
  PlanarWignerState w = from_spectrum(spec, w0, fft);
  const double drift = std::abs(w.norm() - w0.norm());
  if (!(drift <= 1e-6)) throw ConvergenceError("evolve_ode: norm drift exceeds 1e-6", w.norm(), drift);
  return w;
}

Marginals marginals(const PlanarWignerState& w) {
  Marginals out{std::vector<double>(w.n_alpha(), 0.0), std::vector<double>(w.n_m(), 0.0)};
  const double da = w.d_alpha();
  for (int m = -w.m_max(); m <= w.m_max(); ++m) {
    const auto row = w.row_span(m);
    double pm = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
      out.p_alpha[j] += row[j];
      pm += row[j];
    }
    out.p_m[m + w.m_max()] = pm * da;
  }
  return out;
}

std::complex<double> mean_orientation(const PlanarWignerState& w) {
  const auto p = marginals(w).p_alpha;
  cplx s = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) s += p[j] * std::polar(1.0, w.alpha(j));
  return s * w.d_alpha();
}

double orientation_variance(const PlanarWignerState& w) { return 1.0 - std::norm(mean_orientation(w)); }

double mean_m2(const PlanarWignerState& w) {
  const auto p = marginals(w).p_m;
  double s = 0.0;
  for (int m = -w.m_max(); m <= w.m_max(); ++m) s += static_cast<double>(m) * m * p[m + w.m_max()];
  return s;
}

double mean_energy(const PlanarWignerState& w) {
  const double hb = kConstants.hbar;
  return hb * hb * mean_m2(w) / (2.0 * w.inertia());
}

double variance_free(const PlanarWignerState& w0, double t) {
  const double tau = time_to_natural(t, w0.inertia());
  cplx s = 0.0;
  for (int m = -w0.m_max(); m <= w0.m_max(); ++m) {
    const auto row = w0.row_span(m);
    cplx r = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) r += row[j] * std::polar(1.0, w0.alpha(j));
    s += r * std::polar(1.0, static_cast<double>(m) * tau);
  }
  return 1.0 - std::norm(s * w0.d_alpha());
}

double revival_suppression(double t, const PlanarParams& params) {
  params.validate();
  const double tau = time_to_natural(t, params.inertia);
  const double beta = 0.5 * params.d_rot_natural() * tau;
  return std::exp(-beta * (1.0 - specfun::sinc(2.0 * tau)));
}

double variance_csl(double sigma0_sq, double t, const PlanarParams& params) {
  const double f = revival_suppression(t, params);
  return 1.0 - (1.0 - sigma0_sq) * f * f;
}

double variance_csl(const PlanarWignerState& w0, double t, const PlanarParams& params) {
  return variance_csl(variance_free(w0, t), t, params);
}

std::string snapshot_csv(const PlanarWignerState& w, double t, const PlanarParams& params, double sigma_alpha) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf, "# t_natural = %.12g\n# d_rot_natural = %.12g\n# sigma_alpha = %.12g\n",
                time_to_natural(t, params.inertia), params.d_rot_natural(), sigma_alpha);
  out += buf;
  std::snprintf(buf, sizeof buf, "# n_alpha = %zu\n# m_max = %d\nalpha_rad,m,w\n", w.n_alpha(), w.m_max());
  out += buf;
  for (int m = -w.m_max(); m <= w.m_max(); ++m)
    for (std::size_t j = 0; j < w.n_alpha(); ++j) {
      std::snprintf(buf, sizeof buf, "%.12e,%d,%.12e\n", w.alpha(j), m, w.at(j, m));
      out += buf;
    }
  return out;
}

}  // namespace cslrot

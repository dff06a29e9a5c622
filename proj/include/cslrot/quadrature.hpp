#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace cslrot {

enum class QuadratureScheme {
  GaussKronrod1D,     ///< iterated adaptive 21-point Gauss-Kronrod
  TensorSpherical3D,  ///< same rule, nested radial / polar / azimuthal
  AdaptiveCubature,   ///< Genz-Malik degree-7 rule on boxes, global subdivision
};

struct QuadratureSpec {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;  ///< in integrand units
  std::size_t max_evals = 200'000'000;
  QuadratureScheme scheme = QuadratureScheme::TensorSpherical3D;
  /// Radial cutoff in u = r_c k. exp(-81) ~ 7e-36.
  double u_max = 9.0;

  /// rel_tol in (0, 1e-2], max_evals >= 1000, u_max > 0.
  void validate() const;
};

template <std::size_t N>
using QuadValue = std::array<double, N>;

template <class V>
struct QuadratureResult {
  V value;
  double error;  ///< largest component error estimate
  std::size_t evaluations;
};

/// Raised when the tolerance is not met within max_evals. Carries the best
/// estimate of the first component and its error estimate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_estimate, double achieved_error)
      : std::runtime_error(what), best_estimate_(best_estimate), achieved_error_(achieved_error) {}
  double best_estimate() const { return best_estimate_; }
  double achieved_error() const { return achieved_error_; }

 private:
  double best_estimate_;
  double achieved_error_;
};

/// Restriction of the k-space angles, used to exploit mirror symmetries. The
/// integral over the sub-domain is multiplied by `multiplicity`.
struct AngularDomain {
  double theta_lo = 0.0;
  double theta_hi = std::numbers::pi;
  double phi_lo = 0.0;
  double phi_hi = 2.0 * std::numbers::pi;
  double multiplicity = 1.0;
};

namespace quad_detail {

/// Components below this fraction of the largest one are resolved in
/// absolute terms relative to the largest.
inline constexpr double kComponentFloor = 1e-6;

struct EvalBudget {
  std::size_t used = 0;
  std::size_t limit = 0;
};

// 21-point Kronrod extension of the 10-point Gauss rule.
inline constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
inline constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600261426590, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
inline constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

template <std::size_t N>
struct Panel {
  double a, b;
  QuadValue<N> value;
  QuadValue<N> error;
  bool splittable;
};

template <std::size_t N>
void add_to(QuadValue<N>& acc, const QuadValue<N>& v, double w) {
  for (std::size_t i = 0; i < N; ++i) acc[i] += w * v[i];
}

template <std::size_t N>
double max_abs(const QuadValue<N>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

template <std::size_t N, class F>
Panel<N> gauss_kronrod_21(F& f, double a, double b, EvalBudget& budget) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  QuadValue<N> kronrod{}, gauss{};
  const QuadValue<N> fc = f(center);
  add_to(kronrod, fc, kWgk[10]);
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const QuadValue<N> f1 = f(center - dx);
    const QuadValue<N> f2 = f(center + dx);
    add_to(kronrod, f1, kWgk[j]);
    add_to(kronrod, f2, kWgk[j]);
    if (j % 2 == 1) {
      add_to(gauss, f1, kWg[j / 2]);
      add_to(gauss, f2, kWg[j / 2]);
    }
  }
  budget.used += 21;
  Panel<N> p{a, b, {}, {}, true};
  for (std::size_t i = 0; i < N; ++i) {
    p.value[i] = kronrod[i] * half;
    p.error[i] = std::abs((kronrod[i] - gauss[i]) * half);
  }
  const double width_floor = 64.0 * std::numeric_limits<double>::epsilon() *
                             std::max({std::abs(a), std::abs(b), std::numeric_limits<double>::min()});
  p.splittable = (b - a) > width_floor;
  return p;
}

/// Deterministic compensated sum of per-panel values in panel order.
template <std::size_t N, class PanelRange, class Get>
QuadValue<N> ordered_sum(const PanelRange& panels, Get get) {
  QuadValue<N> sum{}, comp{};
  for (const auto& p : panels) {
    const QuadValue<N>& v = get(p);
    for (std::size_t i = 0; i < N; ++i) {
      const double t = sum[i] + v[i];
      if (std::abs(sum[i]) >= std::abs(v[i]))
        comp[i] += (sum[i] - t) + v[i];
      else
        comp[i] += (v[i] - t) + sum[i];
      sum[i] = t;
    }
  }
  for (std::size_t i = 0; i < N; ++i) sum[i] += comp[i];
  return sum;
}

template <std::size_t N>
QuadValue<N> tolerances(const QuadValue<N>& total, double rel_tol, const QuadValue<N>& abs_tol) {
  const double scale = max_abs(total);
  QuadValue<N> tol{};
  for (std::size_t i = 0; i < N; ++i)
    tol[i] = std::max(abs_tol[i], rel_tol * std::max(std::abs(total[i]), kComponentFloor * scale));
  return tol;
}

template <std::size_t N>
QuadValue<N> filled(double v) {
  QuadValue<N> r;
  r.fill(v);
  return r;
}

/// Globally adaptive Gauss-Kronrod on [a, b] for a vector-valued integrand.
template <std::size_t N, class F>
QuadratureResult<QuadValue<N>> adaptive_gk(F&& f, double a, double b, double rel_tol,
                                           const QuadValue<N>& abs_tol, EvalBudget& budget,
                                           int initial_panels) {
  std::vector<Panel<N>> panels;
  panels.reserve(64);
  const int n0 = std::max(1, initial_panels);
  for (int i = 0; i < n0; ++i) {
    const double lo = a + (b - a) * i / n0;
    const double hi = (i + 1 == n0) ? b : a + (b - a) * (i + 1) / n0;
    panels.push_back(gauss_kronrod_21<N>(f, lo, hi, budget));
  }

  auto totals = [&] {
    auto v = ordered_sum<N>(panels, [](const Panel<N>& p) -> const QuadValue<N>& { return p.value; });
    auto e = ordered_sum<N>(panels, [](const Panel<N>& p) -> const QuadValue<N>& { return p.error; });
    return std::pair{v, e};
  };

  for (;;) {
    auto [value, error] = totals();
    const QuadValue<N> tol = tolerances<N>(value, rel_tol, abs_tol);
    bool converged = true;
    double worst_ratio = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      if (!(error[i] <= tol[i])) converged = false;
      worst_ratio = std::max(worst_ratio, tol[i] > 0.0 ? error[i] / tol[i]
                                                        : (error[i] > 0.0 ? 1e300 : 0.0));
    }
    if (converged) {
      std::size_t evals = budget.used;
      return {value, max_abs(error), evals};
    }

    // Split the panel with the largest tolerance-weighted error, plus any
    // other panel above half of it, so that each sweep does useful work.
    auto weight = [&](const Panel<N>& p) {
      double w = 0.0;
      for (std::size_t i = 0; i < N; ++i)
        w = std::max(w, tol[i] > 0.0 ? p.error[i] / tol[i] : (p.error[i] > 0.0 ? 1e300 : 0.0));
      return p.splittable ? w : 0.0;
    };
    double top = 0.0;
    for (const auto& p : panels) top = std::max(top, weight(p));
    if (!(top > 0.0) || !std::isfinite(worst_ratio))
      throw ConvergenceError("adaptive quadrature: cannot subdivide further", value[0], max_abs(error));

    std::vector<Panel<N>> next;
    next.reserve(panels.size() * 2);
    std::size_t planned = 0;
    for (const auto& p : panels)
      if (weight(p) >= 0.5 * top) ++planned;
    if (budget.used + planned * 42 > budget.limit)
      throw ConvergenceError("adaptive quadrature: evaluation budget exhausted", value[0], max_abs(error));
    for (const auto& p : panels) {
      if (weight(p) >= 0.5 * top) {
        const double mid = 0.5 * (p.a + p.b);
        next.push_back(gauss_kronrod_21<N>(f, p.a, mid, budget));
        next.push_back(gauss_kronrod_21<N>(f, mid, p.b, budget));
      } else {
        next.push_back(p);
      }
    }
    panels = std::move(next);
  }
}

// ---- Genz-Malik degree 7/5 embedded rule ----

template <std::size_t D>
struct Box {
  std::array<double, D> center;
  std::array<double, D> half;
  double volume() const {
    double v = 1.0;
    for (double h : half) v *= 2.0 * h;
    return v;
  }
};

template <std::size_t D, std::size_t N>
struct BoxResult {
  Box<D> box;
  QuadValue<N> value;
  QuadValue<N> error;
  std::size_t split_dim;
};

template <std::size_t D, std::size_t N, class F>
BoxResult<D, N> genz_malik(F& f, const Box<D>& box, EvalBudget& budget) {
  static_assert(D >= 2, "Genz-Malik rule requires at least two dimensions");
  constexpr double dim = static_cast<double>(D);
  const double lambda2 = std::sqrt(9.0 / 70.0);
  const double lambda4 = std::sqrt(9.0 / 10.0);
  const double lambda5 = std::sqrt(9.0 / 19.0);
  const double w1 = (12824.0 - 9120.0 * dim + 400.0 * dim * dim) / 19683.0;
  const double w2 = 980.0 / 6561.0;
  const double w3 = (1820.0 - 400.0 * dim) / 19683.0;
  const double w4 = 200.0 / 19683.0;
  const double w5 = 6859.0 / 19683.0 / static_cast<double>(1u << D);
  const double e1 = (729.0 - 950.0 * dim + 50.0 * dim * dim) / 729.0;
  const double e2 = 245.0 / 486.0;
  const double e3 = (265.0 - 100.0 * dim) / 1458.0;
  const double e4 = 25.0 / 729.0;
  const double ratio = (lambda2 * lambda2) / (lambda4 * lambda4);

  std::array<double, D> x = box.center;
  const QuadValue<N> f0 = f(x);
  QuadValue<N> sum2{}, sum3{}, sum4{}, sum5{};
  std::size_t evals = 1;
  double best_diff = -1.0;
  std::size_t split = 0;
  for (std::size_t i = 0; i < D; ++i) {
    x = box.center;
    x[i] = box.center[i] - lambda2 * box.half[i];
    const auto a1 = f(x);
    x[i] = box.center[i] + lambda2 * box.half[i];
    const auto a2 = f(x);
    x[i] = box.center[i] - lambda4 * box.half[i];
    const auto b1 = f(x);
    x[i] = box.center[i] + lambda4 * box.half[i];
    const auto b2 = f(x);
    evals += 4;
    double diff = 0.0;
    for (std::size_t c = 0; c < N; ++c) {
      sum2[c] += a1[c] + a2[c];
      sum3[c] += b1[c] + b2[c];
      diff += std::abs(a1[c] + a2[c] - 2.0 * f0[c] - ratio * (b1[c] + b2[c] - 2.0 * f0[c]));
    }
    if (diff > best_diff * (1.0 + 1e-12)) {
      best_diff = diff;
      split = i;
    }
  }
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = i + 1; j < D; ++j)
      for (int si = -1; si <= 1; si += 2)
        for (int sj = -1; sj <= 1; sj += 2) {
          x = box.center;
          x[i] += si * lambda4 * box.half[i];
          x[j] += sj * lambda4 * box.half[j];
          add_to(sum4, f(x), 1.0);
          ++evals;
        }
  for (unsigned mask = 0; mask < (1u << D); ++mask) {
    for (std::size_t i = 0; i < D; ++i)
      x[i] = box.center[i] + ((mask >> i) & 1u ? 1.0 : -1.0) * lambda5 * box.half[i];
    add_to(sum5, f(x), 1.0);
    ++evals;
  }
  budget.used += evals;
  const double vol = box.volume();
  BoxResult<D, N> r{box, {}, {}, split};
  for (std::size_t c = 0; c < N; ++c) {
    const double r7 = vol * (w1 * f0[c] + w2 * sum2[c] + w3 * sum3[c] + w4 * sum4[c] + w5 * sum5[c]);
    const double r5 = vol * (e1 * f0[c] + e2 * sum2[c] + e3 * sum3[c] + e4 * sum4[c]);
    r.value[c] = r7;
    r.error[c] = std::abs(r7 - r5);
  }
  return r;
}

/// Globally adaptive Genz-Malik cubature over a box given by lower/upper
/// corners, with `initial` subdivisions per dimension.
template <std::size_t D, std::size_t N, class F>
QuadratureResult<QuadValue<N>> adaptive_cubature(F&& f, const std::array<double, D>& lo,
                                                 const std::array<double, D>& hi,
                                                 const std::array<int, D>& initial, double rel_tol,
                                                 const QuadValue<N>& abs_tol, EvalBudget& budget) {
  std::vector<BoxResult<D, N>> boxes;
  {
    std::array<int, D> idx{};
    for (;;) {
      Box<D> b;
      for (std::size_t i = 0; i < D; ++i) {
        const double w = (hi[i] - lo[i]) / initial[i];
        b.half[i] = 0.5 * w;
        b.center[i] = lo[i] + (idx[i] + 0.5) * w;
      }
      boxes.push_back(genz_malik<D, N>(f, b, budget));
      std::size_t d = 0;
      while (d < D && ++idx[d] == initial[d]) idx[d++] = 0;
      if (d == D) break;
    }
  }
  for (;;) {
    auto value = ordered_sum<N>(boxes, [](const BoxResult<D, N>& b) -> const QuadValue<N>& { return b.value; });
    auto error = ordered_sum<N>(boxes, [](const BoxResult<D, N>& b) -> const QuadValue<N>& { return b.error; });
    const QuadValue<N> tol = tolerances<N>(value, rel_tol, abs_tol);
    bool converged = true;
    for (std::size_t i = 0; i < N; ++i)
      if (!(error[i] <= tol[i])) converged = false;
    if (converged) return {value, max_abs(error), budget.used};

    auto weight = [&](const BoxResult<D, N>& b) {
      double w = 0.0;
      for (std::size_t i = 0; i < N; ++i)
        w = std::max(w, tol[i] > 0.0 ? b.error[i] / tol[i] : (b.error[i] > 0.0 ? 1e300 : 0.0));
      return w;
    };
    double top = 0.0;
    for (const auto& b : boxes) top = std::max(top, weight(b));
    std::size_t planned = 0;
    for (const auto& b : boxes)
      if (weight(b) >= 0.5 * top) ++planned;
    const std::size_t per_box = 1 + 4 * D + 2 * D * (D - 1) + (1u << D);
    if (budget.used + planned * 2 * per_box > budget.limit)
      throw ConvergenceError("adaptive cubature: evaluation budget exhausted", value[0], max_abs(error));
    std::vector<BoxResult<D, N>> next;
    next.reserve(boxes.size() + planned);
    for (const auto& b : boxes) {
      if (weight(b) >= 0.5 * top) {
        Box<D> left = b.box, right = b.box;
        const std::size_t d = b.split_dim;
        left.half[d] *= 0.5;
        right.half[d] *= 0.5;
        left.center[d] -= left.half[d];
        right.center[d] += right.half[d];
        next.push_back(genz_malik<D, N>(f, left, budget));
        next.push_back(genz_malik<D, N>(f, right, budget));
      } else {
        next.push_back(b);
      }
    }
    boxes = std::move(next);
  }
}

}  // namespace quad_detail

/// Adaptive Gauss-Kronrod integral of a vector-valued f over [a, b].
template <std::size_t N, class F>
QuadratureResult<QuadValue<N>> integrate_1d(F&& f, double a, double b, const QuadratureSpec& spec,
                                            int initial_panels = 1) {
  spec.validate();
  quad_detail::EvalBudget budget{0, spec.max_evals};
  return quad_detail::adaptive_gk<N>(f, a, b, spec.rel_tol, quad_detail::filled<N>(spec.abs_tol), budget,
                                     initial_panels);
}

namespace quad_detail {

/// Below this relative tolerance the iterated rules first run a coarse pilot
/// pass; its magnitude sets absolute floors for the inner integrals, whose
/// own values can be many orders below the total.
inline constexpr double kPilotRelTol = 1e-4;

template <std::size_t N>
QuadValue<N> pilot_floor(const QuadValue<N>& pilot, double rel_tol, double abs_tol) {
  const double scale = max_abs(pilot);
  QuadValue<N> out{};
  for (std::size_t i = 0; i < N; ++i)
    out[i] = std::max(abs_tol, 0.05 * rel_tol * std::max(std::abs(pilot[i]), kComponentFloor * scale));
  return out;
}

template <std::size_t N>
QuadValue<N> scaled(QuadValue<N> v, double s) {
  for (auto& c : v) c *= s;
  return v;
}

// Iterated theta / phi / u rule in scaled units (without the 1/r_c^3 and
// multiplicity factors).
template <std::size_t N, class F>
QuadratureResult<QuadValue<N>> nested_spherical(F& f, double inv_r, const AngularDomain& dom, double u_max,
                                                double rel_tol, const QuadValue<N>& abs_outer,
                                                EvalBudget& budget) {
  using V = QuadValue<N>;
  const double rel_in = 0.25 * rel_tol;
  const V abs_mid = scaled(abs_outer, 1.0 / (4.0 * std::max(dom.theta_hi - dom.theta_lo, 1e-300)));
  const V abs_in = scaled(abs_mid, 1.0 / (4.0 * std::max(dom.phi_hi - dom.phi_lo, 1e-300)));
  auto radial = [&](double theta, double phi) {
    auto h = [&](double u) { return scaled(f(u * inv_r, theta, phi), u * u * std::exp(-u * u)); };
    return adaptive_gk<N>(h, 0.0, u_max, rel_in, abs_in, budget, 3).value;
  };
  auto azimuthal = [&](double theta) {
    auto h = [&](double phi) { return radial(theta, phi); };
    return scaled(adaptive_gk<N>(h, dom.phi_lo, dom.phi_hi, rel_in, abs_mid, budget, 2).value, std::sin(theta));
  };
  return adaptive_gk<N>(azimuthal, dom.theta_lo, dom.theta_hi, rel_tol, abs_outer, budget, 2);
}

template <std::size_t N, class F>
QuadratureResult<QuadValue<N>> nested_axisymmetric(F& f, double inv_r, double theta_lo, double theta_hi,
                                                   double u_max, double rel_tol, const QuadValue<N>& abs_outer,
                                                   EvalBudget& budget) {
  const double rel_in = 0.25 * rel_tol;
  const QuadValue<N> abs_in = scaled(abs_outer, 1.0 / (4.0 * std::max(theta_hi - theta_lo, 1e-300)));
  auto polar = [&](double theta) {
    auto h = [&](double u) { return scaled(f(u * inv_r, theta), u * u * std::exp(-u * u)); };
    return scaled(adaptive_gk<N>(h, 0.0, u_max, rel_in, abs_in, budget, 3).value, std::sin(theta));
  };
  return adaptive_gk<N>(polar, theta_lo, theta_hi, rel_tol, abs_outer, budget, 2);
}

}  // namespace quad_detail

/// Integral over k-space with the Gaussian weight exp(-r_c^2 k^2):
///   multiplicity * int sin(t) dt int dp int_0^{u_max/r_c} k^2 dk exp(-r_c^2 k^2) f(k, t, p)
/// f(k [1/m], theta, phi) returns QuadValue<N>.
template <std::size_t N, class F>
QuadratureResult<QuadValue<N>> integrate_radial_angular(F&& f, double r_c, const QuadratureSpec& spec,
                                                        const AngularDomain& dom = {}) {
  spec.validate();
  if (!(r_c > 0.0)) throw std::invalid_argument("integrate_radial_angular: r_c must be positive");
  using V = QuadValue<N>;
  quad_detail::EvalBudget budget{0, spec.max_evals};
  const double inv_r = 1.0 / r_c;
  const double norm = dom.multiplicity * inv_r * inv_r * inv_r;
  const double abs_outer = spec.abs_tol / norm;

  QuadratureResult<V> r;
  if (spec.scheme == QuadratureScheme::AdaptiveCubature) {
    auto g = [&](const std::array<double, 3>& x) {
      const double theta = x[0], phi = x[1], u = x[2];
      return quad_detail::scaled(f(u * inv_r, theta, phi), std::sin(theta) * u * u * std::exp(-u * u));
    };
    r = quad_detail::adaptive_cubature<3, N>(g, {dom.theta_lo, dom.phi_lo, 0.0},
                                             {dom.theta_hi, dom.phi_hi, spec.u_max}, {2, 2, 3}, spec.rel_tol,
                                             quad_detail::filled<N>(abs_outer), budget);
  } else {
    V floor = quad_detail::filled<N>(abs_outer);
    if (spec.rel_tol < quad_detail::kPilotRelTol) {
      const auto pilot = quad_detail::nested_spherical<N>(f, inv_r, dom, spec.u_max, quad_detail::kPilotRelTol,
                                                          floor, budget);
      floor = quad_detail::pilot_floor<N>(pilot.value, spec.rel_tol, abs_outer);
    }
    r = quad_detail::nested_spherical<N>(f, inv_r, dom, spec.u_max, spec.rel_tol, floor, budget);
  }
  return {quad_detail::scaled(r.value, norm), r.error * norm, budget.used};
}

/// Same measure as integrate_radial_angular for integrands independent of the
/// azimuth: 2 pi * multiplicity * int sin(t) dt int k^2 dk exp(-r_c^2 k^2) f(k, t),
/// with theta restricted to [theta_lo, theta_hi].
template <std::size_t N, class F>
QuadratureResult<QuadValue<N>> integrate_axisymmetric(F&& f, double r_c, const QuadratureSpec& spec,
                                                      double theta_lo = 0.0,
                                                      double theta_hi = std::numbers::pi,
                                                      double multiplicity = 1.0) {
  spec.validate();
  if (!(r_c > 0.0)) throw std::invalid_argument("integrate_axisymmetric: r_c must be positive");
  using V = QuadValue<N>;
  quad_detail::EvalBudget budget{0, spec.max_evals};
  const double inv_r = 1.0 / r_c;
  const double norm = 2.0 * std::numbers::pi * multiplicity * inv_r * inv_r * inv_r;
  const double abs_outer = spec.abs_tol / norm;

  QuadratureResult<V> r;
  if (spec.scheme == QuadratureScheme::AdaptiveCubature) {
    auto g = [&](const std::array<double, 2>& x) {
      const double theta = x[0], u = x[1];
      return quad_detail::scaled(f(u * inv_r, theta), std::sin(theta) * u * u * std::exp(-u * u));
    };
    r = quad_detail::adaptive_cubature<2, N>(g, {theta_lo, 0.0}, {theta_hi, spec.u_max}, {2, 3}, spec.rel_tol,
                                             quad_detail::filled<N>(abs_outer), budget);
  } else {
    V floor = quad_detail::filled<N>(abs_outer);
    if (spec.rel_tol < quad_detail::kPilotRelTol) {
      const auto pilot = quad_detail::nested_axisymmetric<N>(f, inv_r, theta_lo, theta_hi, spec.u_max,
                                                             quad_detail::kPilotRelTol, floor, budget);
      floor = quad_detail::pilot_floor<N>(pilot.value, spec.rel_tol, abs_outer);
    }
    r = quad_detail::nested_axisymmetric<N>(f, inv_r, theta_lo, theta_hi, spec.u_max, spec.rel_tol, floor,
                                            budget);
  }
  return {quad_detail::scaled(r.value, norm), r.error * norm, budget.used};
}

/// Scalar convenience wrappers.
QuadratureResult<double> integrate_1d(const std::function<double(double)>& f, double a, double b,
                                      const QuadratureSpec& spec);
QuadratureResult<double> integrate_radial_angular(const std::function<double(double, double, double)>& f,
                                                  double r_c, const QuadratureSpec& spec,
                                                  const AngularDomain& dom = {});
QuadratureResult<double> integrate_axisymmetric(const std::function<double(double, double)>& f,
                                                double r_c, const QuadratureSpec& spec);

}  // namespace cslrot

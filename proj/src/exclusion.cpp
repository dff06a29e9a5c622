#include "cslrot/exclusion.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace cslrot {

namespace {

template <class F>
void parallel_for(std::size_t n, F&& f) {
  const std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) f(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double channel_gamma(const HeatingMeasurement& m, Channel c) { return c == Channel::Cm ? m.gamma_cm : m.gamma_rot; }

struct Crossing {
  double log_r;
  double log_lambda;
};

class LogRatio {
 public:
  LogRatio(const HeatingMeasurement& meas, const IntersectOptions& opt) : meas_(meas), opt_(opt) {}

  // log lambda_cm(r) and log lambda_rot(r) at r = e^s.
  std::pair<double, double> logs(double s) const {
    const double r = std::exp(s);
    return {std::log(lambda_bound(r, meas_, Channel::Cm, opt_.m0, opt_.spec)),
            std::log(lambda_bound(r, meas_, Channel::Rot, opt_.m0, opt_.spec))};
  }

 private:
  const HeatingMeasurement& meas_;
  const IntersectOptions& opt_;
};

// Root of g(s) + shift on [a, b] with a sign change; returns s and log lambda_cm.
Crossing bisect(const LogRatio& f, double a, double ga, double b, double shift_cm, double shift_rot, double tol) {
  double fa = ga;
  while (b - a > tol) {
    const double m = 0.5 * (a + b);
    const auto [c, r] = f.logs(m);
    const double fm = (c + shift_cm) - (r + shift_rot);
    if (fm == 0.0) return {m, c + shift_cm};
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  const double s = 0.5 * (a + b);
  return {s, f.logs(s).first + shift_cm};
}

std::string format_roots(const std::vector<CrossingPoint>& roots) {
  std::ostringstream os;
  os.precision(6);
  for (std::size_t i = 0; i < roots.size(); ++i)
    os << (i ? ", " : "") << "(r_c = " << roots[i].r_c << " m, lambda_c = " << roots[i].lambda_c << " 1/s)";
  return os.str();
}

}  // namespace

void HeatingMeasurement::validate() const {
  if (!(gamma_cm > 0.0) || !std::isfinite(gamma_cm)) throw std::invalid_argument("gamma_cm must be positive");
  if (!(gamma_rot > 0.0) || !std::isfinite(gamma_rot)) throw std::invalid_argument("gamma_rot must be positive");
  if (!(rel_error >= 0.0 && rel_error < 1.0)) throw std::invalid_argument("rel_error must lie in [0, 1)");
}

const char* channel_name(Channel c) { return c == Channel::Cm ? "cm" : "rot"; }

double lambda_bound(double r_c, const HeatingMeasurement& meas, Channel channel, double m0,
                    const QuadratureSpec& spec) {
  meas.validate();
  if (!(r_c > 0.0)) throw std::invalid_argument("lambda_bound: r_c must be positive");
  const auto d = diffusion_for_body(meas.body, CslParams(1.0, r_c, m0), spec);
  const auto mp = body_mass_and_inertia(meas.body);
  const double dd = channel == Channel::Cm ? d.d_perp : d.d_rot;
  const double x = channel == Channel::Cm ? mp.mass : mp.transverse();
  if (!(dd > 0.0) || !(x > 0.0))
    throw ChannelInsensitive(std::string("channel insensitive: ") + channel_name(channel) + " channel of " +
                             meas.body.shape_name() + " has no collapse-induced diffusion");
  return channel_gamma(meas, channel) * x * kConstants.k_B / (2.0 * dd);
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("log_grid: need 0 < lo < hi");
  if (n < 2) throw std::invalid_argument("log_grid: need at least two points");
  std::vector<double> g(n);
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) g[i] = std::exp(a + (b - a) * static_cast<double>(i) / (n - 1));
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> default_r_c_grid() { return log_grid(1e-9, 1e-4, 200); }

ExclusionCurve exclusion_curve(const HeatingMeasurement& meas, Channel channel, std::span<const double> r_c_grid,
                               double m0, const QuadratureSpec& spec) {
  meas.validate();
  if (r_c_grid.empty()) throw std::invalid_argument("exclusion_curve: empty r_c grid");
  ExclusionCurve c{channel, {r_c_grid.begin(), r_c_grid.end()}, {}, {}, {}};
  const std::size_t n = r_c_grid.size();
  c.lambda_bound.resize(n);
  c.band_low.resize(n);
  c.band_high.resize(n);
  parallel_for(n, [&](std::size_t i) {
    const double l = lambda_bound(r_c_grid[i], meas, channel, m0, spec);
    c.lambda_bound[i] = l;
    c.band_low[i] = l * (1.0 - meas.rel_error);
    c.band_high[i] = l * (1.0 + meas.rel_error);
  });
  return c;
}

Intersection intersect(const HeatingMeasurement& meas, const IntersectOptions& opt) {
  meas.validate();
  if (!(opt.r_c_min > 0.0) || !(opt.r_c_max > opt.r_c_min))
    throw std::invalid_argument("intersect: need 0 < r_c_min < r_c_max");
  if (opt.scan_points < 2) throw std::invalid_argument("intersect: need at least two scan points");
  if (!(opt.rel_tol > 0.0)) throw std::invalid_argument("intersect: rel_tol must be positive");

  const auto grid = log_grid(opt.r_c_min, opt.r_c_max, opt.scan_points);
  const std::size_t n = grid.size();
  std::vector<double> lcm(n), lrot(n);
  parallel_for(n, [&](std::size_t i) {
    lcm[i] = std::log(lambda_bound(grid[i], meas, Channel::Cm, opt.m0, opt.spec));
    lrot[i] = std::log(lambda_bound(grid[i], meas, Channel::Rot, opt.m0, opt.spec));
  });

  const LogRatio f(meas, opt);
  const double tol = opt.rel_tol;

  auto crossings = [&](double shift_cm, double shift_rot) {
    std::vector<Crossing> roots;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double g0 = (lcm[i] + shift_cm) - (lrot[i] + shift_rot);
      const double g1 = (lcm[i + 1] + shift_cm) - (lrot[i + 1] + shift_rot);
      if (g0 == 0.0) {
        roots.push_back({std::log(grid[i]), lcm[i] + shift_cm});
      } else if ((g0 < 0.0) != (g1 < 0.0) && g1 != 0.0) {
        roots.push_back(bisect(f, std::log(grid[i]), g0, std::log(grid[i + 1]), shift_cm, shift_rot, tol));
      }
    }
    const double glast = (lcm[n - 1] + shift_cm) - (lrot[n - 1] + shift_rot);
    if (glast == 0.0) roots.push_back({std::log(grid[n - 1]), lcm[n - 1] + shift_cm});
    return roots;
  };

  const auto centre = crossings(0.0, 0.0);
  if (centre.empty()) {
    std::ostringstream os;
    os << "no unique intersection: the cm and rot bounds do not cross on r_c in [" << opt.r_c_min << ", "
       << opt.r_c_max << "] m";
    throw NoIntersection(os.str());
  }
  if (centre.size() > 1) {
    std::vector<CrossingPoint> pts;
    for (const auto& c : centre) pts.push_back({std::exp(c.log_r), std::exp(c.log_lambda)});
    throw AmbiguousIntersection("ambiguous intersection: " + std::to_string(pts.size()) +
                                    " crossings: " + format_roots(pts),
                                std::move(pts));
  }

  Intersection out{};
  out.point = {std::exp(centre[0].log_r), std::exp(centre[0].log_lambda)};
  out.region = {out.point.r_c, out.point.r_c, out.point.lambda_c, out.point.lambda_c};
  if (meas.rel_error > 0.0) {
    const double lo = std::log1p(-meas.rel_error), hi = std::log1p(meas.rel_error);
    for (double sc : {lo, hi})
      for (double sr : {lo, hi}) {
        const auto roots = sc == sr ? std::vector<Crossing>{{centre[0].log_r, centre[0].log_lambda + sc}}
                                    : crossings(sc, sr);
        if (roots.size() != 1)
          throw NoIntersection("no unique intersection for the +-rel_error bands on the search interval");
        const double r = std::exp(roots[0].log_r), l = std::exp(roots[0].log_lambda);
        out.region.r_c_min = std::min(out.region.r_c_min, r);
        out.region.r_c_max = std::max(out.region.r_c_max, r);
        out.region.lambda_min = std::min(out.region.lambda_min, l);
        out.region.lambda_max = std::max(out.region.lambda_max, l);
      }
  }
  return out;
}

HeatingMeasurement forward_heating(const BodySpec& body, const CslParams& csl, double rel_error,
                                   const QuadratureSpec& spec) {
  const auto h = heating_rates(diffusion_for_body(body, csl, spec), body);
  return {h.gamma_cm, h.gamma_rot, rel_error, body};
}

}  // namespace cslrot

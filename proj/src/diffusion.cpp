#include "cslrot/diffusion.hpp"

#include "cslrot/specfun.hpp"

#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <stdexcept>
#include <tuple>

namespace cslrot {

namespace {

constexpr int kTerms = 40;
constexpr double kSeriesLimit = 0.5;

struct SeriesTables {
  // Power-series coefficients in x of e^{-x}I0, e^{-x}I1 and the derived
  // bracket combinations; in y of the length factors.
  std::array<double, kTerms + 1> a{}, b{}, g1{}, g3{}, g4{};
  std::array<double, kTerms + 1> p1{}, p2{}, p2m{}, pd{};
  // rot(x, y) = sum s[i][j] x^{i-1} y^{j-1}
  std::array<std::array<double, kTerms>, kTerms> s{};

  SeriesTables() {
    a[0] = 1.0;
    for (int n = 1; n <= kTerms; ++n) a[n] = a[n - 1] * (n - 0.5) * -2.0 / (double(n) * n);
    double c = 1.0;
    b[0] = 0.0;
    b[1] = 0.5;
    for (int j = 1; j < kTerms; ++j) {
      c *= (j + 0.5) * -2.0 / ((j + 2.0) * j);
      b[j + 1] = 0.5 * c;
    }
    for (int n = 1; n <= kTerms; ++n) {
      g1[n] = -a[n] - b[n];
      g4[n] = -a[n] - 2.0 * b[n];
    }
    g4[1] = 0.0;
    g3[0] = 2.0 / 3.0;
    for (int n = 1; n < kTerms; ++n) g3[n] = -2.0 * a[n] - 2.0 * b[n] + 10.0 / 3.0 * b[n + 1];

    double fact = 1.0;  // n!
    double fact_prev = 1.0;  // (n-1)!
    for (int n = 1; n <= kTerms; ++n) {
      fact_prev = fact;
      fact *= n;
      const double sign = (n % 2 == 1) ? 1.0 : -1.0;
      p1[n] = sign / fact;
      p2[n] = 2.0 * sign / (fact_prev * (2.0 * n - 1.0)) - p1[n];
      pd[n] = p1[n] - p2[n];
    }
    p2[1] = 1.0;
    pd[1] = 0.0;
    p2m = p2;
    p2m[0] = -2.0;

    for (int i = 1; i < kTerms; ++i)
      for (int j = 1; j < kTerms; ++j) {
        if (i + j <= 3) continue;  // cancels identically
        s[i][j] = 0.5 * g3[i - 1] * p1[j] + b[i] * p2m[j - 1] / 3.0 + g4[i] * pd[j];
      }
  }
};

const SeriesTables& tables() {
  static const SeriesTables t;
  return t;
}

template <std::size_t K>
double poly(const std::array<double, K>& c, double x) {
  double r = 0.0;
  for (std::size_t n = K; n-- > 0;) r = r * x + c[n];
  return r;
}

double rot_series(double x, double y) {
  const auto& t = tables();
  double outer = 0.0;
  for (int i = kTerms - 1; i >= 1; --i) {
    double inner = 0.0;
    for (int j = kTerms - 1; j >= 1; --j) inner = inner * y + t.s[i][j];
    outer = outer * x + inner;
  }
  return outer;
}

using MemoKey = std::tuple<int, double, double, double, int, double>;
struct MemoValue {
  double cm_perp, cm_par, rot_perp;
};

std::shared_mutex memo_mutex;
std::map<MemoKey, MemoValue> memo;

}  // namespace

CylinderFactors cylinder_factors(double x, double y) {
  if (!(x > 0.0 && y > 0.0)) throw std::invalid_argument("cylinder_factors: x and y must be positive");
  const auto& t = tables();
  const double xy = x * y;
  const double A = specfun::bessel_i_scaled(0, x);
  const double B = specfun::bessel_i_scaled(1, x);
  const bool sx = x < kSeriesLimit, sy = y < kSeriesLimit;
  const double G1 = sx ? poly(t.g1, x) : 1.0 - A - B;
  const double G2 = B;
  const double h1 = -std::expm1(-y);
  const double ly = std::sqrt(y);
  const double h2 = sy ? poly(t.p2, y) : std::sqrt(std::numbers::pi) * ly * specfun::erf(ly) - h1;

  CylinderFactors f{};
  f.par = h1 * G1 / xy;
  f.perp = h2 * G2 / xy;
  if (sx && sy) {
    f.rot = rot_series(x, y);
  } else {
    const double G3 = sx ? poly(t.g3, x) : 1.0 - 2.0 * A - 2.0 * B + 10.0 * B / (3.0 * x);
    const double G4 = sx ? poly(t.g4, x) : 1.0 - A - 2.0 * B;
    const double hd = sy ? poly(t.pd, y) : h1 - h2;
    const double S = 0.5 * x * G3 * h1 + y / 3.0 * G2 * (h2 - 2.0) + G4 * hd;
    f.rot = S / xy;
  }
  return f;
}

DiffusionSet cylinder_diffusion_closed(const CslParams& csl, double M, double R, double L) {
  if (!(M > 0.0 && R > 0.0 && L > 0.0))
    throw std::invalid_argument("cylinder_diffusion_closed: M, R, L must be positive");
  const double r = csl.r_c();
  const double x = R * R / (2.0 * r * r);
  const double y = L * L / (4.0 * r * r);
  const auto g = cylinder_factors(x, y);
  const double hb = kConstants.hbar;
  const double mass_ratio = (M / csl.m0()) * (M / csl.m0());
  const double p_rot = 0.5 * csl.lambda_c() * hb * hb * mass_ratio;
  const double p_cm = p_rot / (r * r);
  return {p_cm * g.par, p_cm * g.perp, p_rot * g.rot,
          BodySpec::with_mass(Cylinder{L, R}, M), csl};
}

DiffusionSet diffusion_from_tensors(const GeometryTensors& t, const CslParams& csl, double rel_tol) {
  const double scale_cm = t.a_cm.cwiseAbs().maxCoeff();
  const double scale_rot = t.a_rot.cwiseAbs().maxCoeff();
  auto off = [](const Mat3& m) { return std::max({std::abs(m(0, 1)), std::abs(m(0, 2)), std::abs(m(1, 2))}); };
  const bool cm_ok = std::abs(t.a_cm(0, 0) - t.a_cm(1, 1)) <= rel_tol * scale_cm && off(t.a_cm) <= rel_tol * scale_cm;
  const bool rot_ok = std::abs(t.a_rot(0, 0) - t.a_rot(1, 1)) <= rel_tol * scale_rot &&
                      off(t.a_rot) <= rel_tol * scale_rot && std::abs(t.a_rot(2, 2)) <= rel_tol * scale_rot;
  if (!cm_ok || !rot_ok)
    throw std::domain_error("diffusion_from_tensors: tensors are not axisymmetric about e3");
  const double hb2 = kConstants.hbar * kConstants.hbar;
  const double lam = csl.lambda_c();
  const double r2 = csl.r_c() * csl.r_c();
  DiffusionSet d;
  d.d_perp = lam * hb2 * 0.5 * (t.a_cm(0, 0) + t.a_cm(1, 1)) / (2.0 * r2);
  d.d_par = lam * hb2 * t.a_cm(2, 2) / (2.0 * r2);
  d.d_rot = lam * hb2 * 0.5 * (t.a_rot(0, 0) + t.a_rot(1, 1)) / 2.0;
  d.csl = csl;
  return d;
}

DiffusionSet diffusion_for_body(const BodySpec& body, const CslParams& csl, const QuadratureSpec& spec) {
  const auto& shape = body.shape();
  if (const auto* c = std::get_if<Cylinder>(&shape)) {
    auto d = cylinder_diffusion_closed(csl, body.mass(), c->radius, c->length);
    d.body = body;
    return d;
  }
  if (std::holds_alternative<Atoms>(shape)) {
    auto d = diffusion_from_tensors(geometry_tensors(FormFactor(body), csl, spec), csl);
    d.body = body;
    return d;
  }
  spec.validate();
  double R = 0.0, L = 0.0;
  int kind = 0;
  if (const auto* s = std::get_if<Spheroid>(&shape)) {
    R = s->radius;
    L = s->length;
    kind = 1;
  } else {
    R = std::get<Sphere>(shape).radius;
    L = 2.0 * R;
    kind = 2;
  }
  const double r = csl.r_c();
  const MemoKey key{kind, R / r, L / r, spec.rel_tol, static_cast<int>(spec.scheme), spec.u_max};
  MemoValue v{};
  bool found = false;
  {
    std::shared_lock lock(memo_mutex);
    if (auto it = memo.find(key); it != memo.end()) {
      v = it->second;
      found = true;
    }
  }
  if (!found) {
    // Reduced tensors: unit collapse rate and m0 = M.
    const CslParams unit(1.0, r, body.mass());
    const auto t = geometry_tensors(FormFactor(body), unit, spec);
    v = {t.a_cm(0, 0), t.a_cm(2, 2), t.a_rot(0, 0)};
    std::unique_lock lock(memo_mutex);
    memo.emplace(key, v);
  }
  const double hb2 = kConstants.hbar * kConstants.hbar;
  const double mass_ratio = (body.mass() / csl.m0()) * (body.mass() / csl.m0());
  const double lam = csl.lambda_c() * mass_ratio;
  DiffusionSet d;
  d.d_perp = lam * hb2 * v.cm_perp / (2.0 * r * r);
  d.d_par = lam * hb2 * v.cm_par / (2.0 * r * r);
  d.d_rot = lam * hb2 * v.rot_perp / 2.0;
  d.body = body;
  d.csl = csl;
  return d;
}

std::size_t diffusion_memo_size() {
  std::shared_lock lock(memo_mutex);
  return memo.size();
}

void clear_diffusion_memo() {
  std::unique_lock lock(memo_mutex);
  memo.clear();
}

HeatingRates heating_rates(const DiffusionSet& d, const BodySpec& body) {
  const auto mp = body_mass_and_inertia(body);
  const double kb = kConstants.k_B;
  const double i_perp = mp.transverse();
  HeatingRates h{};
  h.dp2_dt = 2.0 * d.d_par + 4.0 * d.d_perp;
  h.dj2_dt = 4.0 * d.d_rot;
  h.gamma_cm = 2.0 * d.d_perp / (mp.mass * kb);
  if (i_perp > 0.0)
    h.gamma_rot = 2.0 * d.d_rot / (i_perp * kb);
  else
    h.gamma_rot = d.d_rot == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return h;
}

std::vector<DiffusionPoint> diffusion_curve(const BodySpec& body, const CslParams& csl,
                                            std::span<const double> r_c_grid, const QuadratureSpec& spec) {
  if (r_c_grid.empty()) throw std::invalid_argument("diffusion_curve: empty r_c grid");
  std::vector<DiffusionPoint> out;
  out.reserve(r_c_grid.size());
  for (double r : r_c_grid) {
    const auto d = diffusion_for_body(body, csl.with_r_c(r), spec);
    out.push_back({r, d.d_par, d.d_perp, d.d_rot});
  }
  return out;
}

}  // namespace cslrot

#include "cslrot/commands.hpp"

#include "cslrot/diffusion.hpp"
#include "cslrot/exclusion.hpp"
#include "cslrot/formfactor.hpp"
#include "cslrot/localization.hpp"
#include "cslrot/oracles.hpp"
#include "cslrot/planar.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

namespace cslrot {

namespace {

using nlohmann::json;

std::string num(double x) {
  if (std::isnan(x)) return "";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12e", x);
  return buf;
}

const char* scheme_name(QuadratureScheme s) {
  switch (s) {
    case QuadratureScheme::GaussKronrod1D: return "gauss_kronrod_1d";
    case QuadratureScheme::TensorSpherical3D: return "tensor_spherical";
    case QuadratureScheme::AdaptiveCubature: return "adaptive_cubature";
  }
  return "?";
}

using Meta = std::vector<std::pair<std::string, std::string>>;

std::string header(std::string_view command, const RunConfig& cfg, const QuadratureSpec& spec, const Meta& extra) {
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(cfg.hash));
  std::string h;
  auto kv = [&](const std::string& k, const std::string& v) { h += "# " + k + " = " + v + "\n"; };
  kv("cslrot_version", CSLROT_VERSION);
  kv("command", std::string(command));
  kv("config_fnv1a64", hash);
  kv("quadrature.rel_tol", num(spec.rel_tol));
  kv("quadrature.abs_tol", num(spec.abs_tol));
  kv("quadrature.scheme", scheme_name(spec.scheme));
  kv("quadrature.u_max", num(spec.u_max));
  kv("quadrature.max_evals", std::to_string(spec.max_evals));
  if (cfg.body) kv("body.shape", cfg.body->shape_name());
  if (cfg.body) kv("body.mass_kg", num(cfg.body->mass()));
  for (const auto& [k, v] : extra) kv(k, v);
  return h;
}

struct Output {
  std::string name;
  std::string content;
};

const BodySpec& need_body(const RunConfig& cfg) {
  if (!cfg.body) throw ConfigError("body", "missing key");
  return *cfg.body;
}

template <class T>
const T& need(const std::optional<T>& section, const char* key) {
  if (!section) throw ConfigError(key, "missing key");
  return *section;
}

std::vector<std::size_t> subsample(std::size_t n, std::size_t k) {
  std::vector<std::size_t> idx;
  if (n <= k) {
    for (std::size_t i = 0; i < n; ++i) idx.push_back(i);
    return idx;
  }
  for (std::size_t i = 0; i < k; ++i) idx.push_back(i * (n - 1) / (k - 1));
  return idx;
}

std::optional<SmallBodyKind> small_kind(const BodySpec& b, double& R, double& L) {
  if (const auto* c = std::get_if<Cylinder>(&b.shape())) {
    R = c->radius;
    L = c->length;
    return SmallBodyKind::Cylinder;
  }
  if (const auto* s = std::get_if<Spheroid>(&b.shape())) {
    R = s->radius;
    L = s->length;
    return SmallBodyKind::Spheroid;
  }
  return std::nullopt;
}

double rel_dev(double a, double b, double scale) { return scale > 0.0 ? std::abs(a - b) / scale : std::abs(a - b); }

// ---------------------------------------------------------------- formfactor

std::vector<Output> cmd_formfactor(const RunConfig& cfg, const QuadratureSpec& spec, const CommandOptions& opt,
                                   CommandResult& res) {
  const auto& body = need_body(cfg);
  const auto& sec = need(cfg.formfactor, "formfactor");
  const FormFactor ff(body);
  const double M = body.mass();

  struct Row {
    std::size_t ray;
    double k;
    Vec3 kv;
    std::complex<double> v;
  };
  std::vector<Row> rows;
  for (std::size_t r = 0; r < sec.rays.size(); ++r) {
    const auto& ray = sec.rays[r];
    const Vec3 n(std::sin(ray.theta) * std::cos(ray.phi), std::sin(ray.theta) * std::sin(ray.phi),
                 std::cos(ray.theta));
    for (double k : sec.k) rows.push_back({r, k, k * n, ff(k * n)});
  }

  if (opt.check) {
    CheckReport rep{"", 0.0, check_tolerance(spec.rel_tol)};
    const auto* atoms = std::get_if<Atoms>(&body.shape());
    rep.oracle = atoms ? "pair sum |rho~|^2 / M^2" : "volume cubature |rho~ - oracle| / M";
    for (std::size_t i : subsample(rows.size(), 24)) {
      const auto& row = rows[i];
      const double d = atoms ? std::abs(std::norm(row.v) - oracle::atoms_ff_abs2(atoms->atoms, row.kv)) / (M * M)
                             : std::abs(row.v - oracle::volume_form_factor(body, row.kv)) / M;
      rep.max_deviation = std::max(rep.max_deviation, d);
    }
    res.check = rep;
  }

  std::string csv = header("formfactor", cfg, spec, {{"units", "k in 1/m, rho~ in kg"}});
  csv += "ray,theta_rad,phi_rad,k_per_m,re_kg,im_kg,abs_over_mass\n";
  for (const auto& row : rows) {
    const auto& ray = sec.rays[row.ray];
    csv += std::to_string(row.ray) + "," + num(ray.theta) + "," + num(ray.phi) + "," + num(row.k) + "," +
           num(row.v.real()) + "," + num(row.v.imag()) + "," + num(std::abs(row.v) / M) + "\n";
  }
  return {{"formfactor.csv", csv}};
}

// ---------------------------------------------------------------- locrate

std::vector<Output> cmd_locrate(const RunConfig& cfg, const QuadratureSpec& spec, const CommandOptions& opt,
                                CommandResult& res) {
  const auto& body = need_body(cfg);
  const auto& sec = need(cfg.locrate, "locrate");
  const FormFactor ff(body);
  const bool axial = body.azimuthally_symmetric();
  double R = 0.0, L = 0.0;
  const auto kind = small_kind(body, R, L);

  auto rate_at = [&](const CslParams& csl, double alpha, const QuadratureSpec& s) {
    if (axial) return loc_rate_full(ff, csl, alpha, s);
    return loc_rate_full(ff, csl, Orientation(), Orientation::from_axis_angle(Vec3::UnitX(), alpha), s);
  };

  std::string table;
  Meta meta{{"rate_normalized", axial ? "rate / max over alpha in [0, pi/2]" : "rate / max over the alpha grid"},
            {"rotation", axial ? "angle between symmetry axes" : "about body e1"},
            {"csl.m0_kg", num(cfg.csl.m0)}};
  CheckReport rep{"adaptive cubature at up to 5 angles per r_c, |diff| / max rate", 0.0,
                  check_tolerance(spec.rel_tol)};
  for (std::size_t i = 0; i < sec.r_c.size(); ++i) {
    const CslParams csl = cfg.csl.at(sec.r_c[i]);
    std::vector<double> rates;
    for (double a : sec.alphas) rates.push_back(rate_at(csl, a, spec));
    double norm = *std::max_element(rates.begin(), rates.end());
    if (axial) {
      const auto mx = loc_rate_max(ff, csl, spec, 1e-8);
      norm = std::max(norm, mx.rate);
      meta.push_back({"max_alpha_rad[" + std::to_string(i) + "]", num(mx.alpha)});
    }
    meta.push_back({"max_rate_per_s[" + std::to_string(i) + "]", num(norm)});
    for (std::size_t j = 0; j < rates.size(); ++j) {
      const double a = sec.alphas[j];
      const double small = kind ? loc_rate_small(*kind, csl, body.mass(), R, L, a)
                                : std::numeric_limits<double>::quiet_NaN();
      table += num(sec.r_c[i]) + "," + num(a) + "," + num(rates[j]) + "," + num(norm > 0 ? rates[j] / norm : 0.0) +
               "," + num(small) + "\n";
    }
    if (opt.check) {
      QuadratureSpec alt = spec;
      alt.scheme = QuadratureScheme::AdaptiveCubature;
      alt.rel_tol = std::max(spec.rel_tol, 1e-7);
      for (std::size_t j : subsample(rates.size(), 5))
        rep.max_deviation =
            std::max(rep.max_deviation, rel_dev(rates[j], rate_at(csl, sec.alphas[j], alt), norm));
    }
  }
  if (opt.check) res.check = rep;
  std::string csv = header("locrate", cfg, spec, meta);
  csv += "r_c_m,alpha_rad,rate_per_s,rate_normalized,rate_small_body_per_s\n" + table;
  return {{"locrate.csv", csv}};
}

// ---------------------------------------------------------------- diffusion

std::vector<Output> cmd_diffusion(const RunConfig& cfg, const QuadratureSpec& spec, const CommandOptions& opt,
                                  CommandResult& res) {
  const auto& body = need_body(cfg);
  const auto& sec = need(cfg.diffusion, "diffusion");
  const CslParams csl0 = cfg.csl.at(sec.r_c.front());
  const auto pts = diffusion_curve(body, csl0, sec.r_c, spec);

  if (opt.check) {
    CheckReport rep{"", 0.0, check_tolerance(spec.rel_tol)};
    const FormFactor ff(body);
    const auto* atoms = std::get_if<Atoms>(&body.shape());
    const bool cyl = std::holds_alternative<Cylinder>(body.shape());
    rep.oracle = cyl ? "closed form vs geometry-tensor quadrature"
                     : atoms ? "Gaussian pair-sum tensors" : "adaptive-cubature geometry tensors";
    for (std::size_t i : subsample(pts.size(), 6)) {
      const auto& p = pts[i];
      const CslParams csl = csl0.with_r_c(p.r_c);
      GeometryTensors t;
      if (atoms) {
        t.a_cm = oracle::atoms_a_cm(atoms->atoms, p.r_c, csl.m0());
        t.a_rot = oracle::atoms_a_rot(atoms->atoms, p.r_c, csl.m0());
      } else {
        QuadratureSpec alt = spec;
        if (!cyl) {
          alt.scheme = QuadratureScheme::AdaptiveCubature;
          alt.rel_tol = std::max(spec.rel_tol, 1e-7);
        }
        t = geometry_tensors(ff, csl, alt);
      }
      const auto d = diffusion_from_tensors(t, csl);
      const double tscale = std::max(std::abs(p.d_par), std::abs(p.d_perp));
      rep.max_deviation = std::max({rep.max_deviation, rel_dev(p.d_par, d.d_par, tscale),
                                    rel_dev(p.d_perp, d.d_perp, tscale),
                                    rel_dev(p.d_rot, d.d_rot, std::abs(p.d_rot) > 0 ? std::abs(p.d_rot)
                                                                                    : tscale * p.r_c * p.r_c)});
    }
    res.check = rep;
  }

  std::string csv = header("diffusion", cfg, spec,
                           {{"csl.lambda_c_per_s", num(csl0.lambda_c())},
                            {"csl.m0_kg", num(csl0.m0())},
                            {"units", "d_par, d_perp in kg^2 m^2 s^-3; d_rot in J^2 s"}});
  csv += "r_c_m,d_par,d_perp,d_rot\n";
  for (const auto& p : pts) csv += num(p.r_c) + "," + num(p.d_par) + "," + num(p.d_perp) + "," + num(p.d_rot) + "\n";
  return {{"diffusion.csv", csv}};
}

// ---------------------------------------------------------------- planar

std::vector<Output> cmd_planar(const RunConfig& cfg, const QuadratureSpec& spec, const CommandOptions& opt,
                               CommandResult& res) {
  const auto& sec = need(cfg.planar, "planar");
  double inertia = 0.0;
  if (sec.inertia)
    inertia = *sec.inertia;
  else if (cfg.body)
    inertia = body_mass_and_inertia(*cfg.body).transverse();
  else
    throw ConfigError("planar.inertia", "missing key (or give a body)");
  const PlanarParams params = PlanarParams::natural(sec.d_rot, inertia, sec.times);
  const double t_max = *std::max_element(params.times.begin(), params.times.end());
  const int m_max = sec.m_max ? *sec.m_max : default_m_max(sec.sigma_alpha, params, t_max, sec.n_alpha);
  const auto w0 = initial_cos_squeezed(sec.sigma_alpha, sec.n_alpha, m_max, inertia);

  std::vector<PlanarWignerState> states;
  for (double t : params.times) states.push_back(evolve_exact(w0, t, params));

  if (opt.check) {
    CheckReport rep{"split-step integrator, sup |w_exact - w_ode| and norm drift", 0.0, 1e-6};
    const double dt = time_from_natural(sec.check_dt, inertia);
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto w = evolve_ode(w0, params.times[i], params, dt);
      double d = std::abs(states[i].norm() - 1.0);
      for (std::size_t k = 0; k < w.values().size(); ++k)
        d = std::max(d, std::abs(w.values()[k] - states[i].values()[k]));
      rep.max_deviation = std::max(rep.max_deviation, d);
    }
    res.check = rep;
  }

  const Meta meta{{"sigma_alpha", num(sec.sigma_alpha)},
                  {"d_rot_natural", num(sec.d_rot)},
                  {"inertia_kg_m2", num(inertia)},
                  {"n_alpha", std::to_string(sec.n_alpha)},
                  {"m_max", std::to_string(m_max)},
                  {"time_unit", "I/hbar"}};
  const std::string head = header("planar", cfg, spec, meta);
  std::vector<Output> out;
  std::string pa = head + "alpha_rad", pm = head + "m", var = head;
  var += "t_natural,variance,variance_closed_form,variance_free,revival_suppression,mean_m2,norm\n";
  std::vector<Marginals> marg;
  for (std::size_t i = 0; i < states.size(); ++i) {
    char name[40];
    std::snprintf(name, sizeof name, "snapshot_%03zu.csv", i);
    out.push_back({name, head + snapshot_csv(states[i], params.times[i], params, sec.sigma_alpha)});
    marg.push_back(marginals(states[i]));
    pa += ",p_t" + std::to_string(i);
    pm += ",p_t" + std::to_string(i);
    const double t = params.times[i];
    var += num(sec.times[i]) + "," + num(orientation_variance(states[i])) + "," + num(variance_csl(w0, t, params)) +
           "," + num(variance_free(w0, t)) + "," + num(revival_suppression(t, params)) + "," +
           num(mean_m2(states[i])) + "," + num(states[i].norm()) + "\n";
  }
  pa += "\n";
  pm += "\n";
  for (std::size_t j = 0; j < w0.n_alpha(); ++j) {
    pa += num(w0.alpha(j));
    for (const auto& m : marg) pa += "," + num(m.p_alpha[j]);
    pa += "\n";
  }
  for (int m = -m_max; m <= m_max; ++m) {
    pm += std::to_string(m);
    for (const auto& mg : marg) pm += "," + num(mg.p_m[static_cast<std::size_t>(m + m_max)]);
    pm += "\n";
  }
  out.push_back({"p_alpha.csv", pa});
  out.push_back({"p_m.csv", pm});
  out.push_back({"variance.csv", var});
  return out;
}

// ---------------------------------------------------------------- exclude

std::vector<Output> cmd_exclude(const RunConfig& cfg, const QuadratureSpec& spec, const CommandOptions& opt,
                                CommandResult& res) {
  const auto& body = need_body(cfg);
  const auto& sec = need(cfg.exclude, "exclude");
  const HeatingMeasurement meas{sec.gamma_cm, sec.gamma_rot, sec.rel_error, body};
  const double m0 = cfg.csl.m0;
  const auto cm = exclusion_curve(meas, Channel::Cm, sec.r_c, m0, spec);
  const auto rot = exclusion_curve(meas, Channel::Rot, sec.r_c, m0, spec);

  IntersectOptions io;
  io.r_c_min = sec.search_min;
  io.r_c_max = sec.search_max;
  io.scan_points = sec.scan_points;
  io.m0 = m0;
  io.spec = spec;

  json summary;
  std::optional<Intersection> x;
  try {
    x = intersect(meas, io);
    summary = {{"status", "unique"},
               {"r_c_m", x->point.r_c},
               {"lambda_c_per_s", x->point.lambda_c},
               {"region",
                {{"r_c_min_m", x->region.r_c_min},
                 {"r_c_max_m", x->region.r_c_max},
                 {"lambda_min_per_s", x->region.lambda_min},
                 {"lambda_max_per_s", x->region.lambda_max}}}};
  } catch (const AmbiguousIntersection& e) {
    json roots = json::array();
    for (const auto& r : e.roots()) roots.push_back({{"r_c_m", r.r_c}, {"lambda_c_per_s", r.lambda_c}});
    summary = {{"status", "ambiguous intersection"}, {"roots", roots}};
    res.notes.push_back(e.what());
  } catch (const NoIntersection& e) {
    summary = {{"status", "no unique intersection"}};
    res.notes.push_back(e.what());
  }

  if (opt.check) {
    CheckReport rep{"forward heating at the intersection vs measured rates", 0.0, check_tolerance(spec.rel_tol)};
    if (!x) {
      rep.max_deviation = std::numeric_limits<double>::infinity();
      rep.oracle += " (no intersection)";
    } else {
      const auto h = forward_heating(body, CslParams(x->point.lambda_c, x->point.r_c, m0), 0.0, spec);
      rep.max_deviation = std::max(std::abs(h.gamma_cm / sec.gamma_cm - 1.0), std::abs(h.gamma_rot / sec.gamma_rot - 1.0));
    }
    res.check = rep;
  }

  Meta meta{{"gamma_cm_K_per_s", num(sec.gamma_cm)},
            {"gamma_rot_K_per_s", num(sec.gamma_rot)},
            {"rel_error", num(sec.rel_error)},
            {"csl.m0_kg", num(m0)},
            {"intersection.status", summary["status"].get<std::string>()}};
  if (x) {
    meta.push_back({"intersection.r_c_m", num(x->point.r_c)});
    meta.push_back({"intersection.lambda_c_per_s", num(x->point.lambda_c)});
    meta.push_back({"region.r_c_min_m", num(x->region.r_c_min)});
    meta.push_back({"region.r_c_max_m", num(x->region.r_c_max)});
    meta.push_back({"region.lambda_min_per_s", num(x->region.lambda_min)});
    meta.push_back({"region.lambda_max_per_s", num(x->region.lambda_max)});
  }
  std::string csv = header("exclude", cfg, spec, meta);
  csv += "r_c_m,lambda_cm_bound,lambda_rot_bound,lambda_cm_low,lambda_cm_high,lambda_rot_low,lambda_rot_high\n";
  for (std::size_t i = 0; i < cm.r_c.size(); ++i)
    csv += num(cm.r_c[i]) + "," + num(cm.lambda_bound[i]) + "," + num(rot.lambda_bound[i]) + "," +
           num(cm.band_low[i]) + "," + num(cm.band_high[i]) + "," + num(rot.band_low[i]) + "," +
           num(rot.band_high[i]) + "\n";

  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(cfg.hash));
  auto curve_json = [](const ExclusionCurve& c) {
    return json{{"lambda_bound", c.lambda_bound}, {"band_low", c.band_low}, {"band_high", c.band_high}};
  };
  const json doc{{"cslrot_version", CSLROT_VERSION},
                 {"config_fnv1a64", hash},
                 {"measurement",
                  {{"gamma_cm_K_per_s", sec.gamma_cm},
                   {"gamma_rot_K_per_s", sec.gamma_rot},
                   {"rel_error", sec.rel_error},
                   {"body", body.shape_name()},
                   {"mass_kg", body.mass()}}},
                 {"quadrature", {{"rel_tol", spec.rel_tol}, {"scheme", scheme_name(spec.scheme)}}},
                 {"r_c_m", cm.r_c},
                 {"cm", curve_json(cm)},
                 {"rot", curve_json(rot)},
                 {"intersection", summary}};
  return {{"exclusion.csv", csv}, {"exclusion.json", doc.dump(2) + "\n"}};
}

}  // namespace

double check_tolerance(double rel_tol) { return std::max(1e-6, 100.0 * rel_tol); }

CommandResult run_command(std::string_view command, const RunConfig& cfg, const CommandOptions& opt) {
  QuadratureSpec spec = cfg.quadrature;
  if (opt.tol) {
    spec.rel_tol = *opt.tol;
    try {
      spec.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError("--tol", e.what());
    }
  }
  CommandResult res;
  std::vector<Output> outputs;
  if (command == "formfactor")
    outputs = cmd_formfactor(cfg, spec, opt, res);
  else if (command == "locrate")
    outputs = cmd_locrate(cfg, spec, opt, res);
  else if (command == "diffusion")
    outputs = cmd_diffusion(cfg, spec, opt, res);
  else if (command == "planar")
    outputs = cmd_planar(cfg, spec, opt, res);
  else if (command == "exclude")
    outputs = cmd_exclude(cfg, spec, opt, res);
  else
    throw ConfigError("", "unknown command '" + std::string(command) + "'");

  std::filesystem::create_directories(opt.out_dir);
  for (const auto& o : outputs) {
    const auto path = opt.out_dir / o.name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    f << o.content;
    if (!f) throw std::runtime_error("cannot write " + path.string());
    res.files.push_back(path);
  }
  return res;
}

}  // namespace cslrot

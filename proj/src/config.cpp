#include "cslrot/config.hpp"

#include "cslrot/exclusion.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace cslrot {

using nlohmann::json;

namespace {

double parse_number(std::string_view s, std::string_view what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size())
    throw std::invalid_argument("cannot parse " + std::string(what) + " '" + std::string(s) + "'");
  return v;
}

bool strip_suffix(std::string_view& s, std::string_view suffix) {
  if (s.size() < suffix.size() || s.substr(s.size() - suffix.size()) != suffix) return false;
  s.remove_suffix(suffix.size());
  return true;
}

// Object reader that remembers its dotted path and rejects unknown keys.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected an object");
  }

  void allow(std::initializer_list<const char*> keys) const {
    std::set<std::string> ok(keys.begin(), keys.end());
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!ok.count(it.key())) throw ConfigError(key(it.key()), "unknown key");
  }

  bool has(const char* k) const { return j_.contains(k); }
  const json& raw(const char* k) const { return j_.at(k); }
  std::string key(const std::string& k) const { return path_.empty() ? k : path_ + "." + k; }
  Node child(const char* k) const { return {j_.at(k), key(k)}; }

  template <class F>
  auto get(const char* k, F&& parse) const {
    if (!has(k)) throw ConfigError(key(k), "missing key");
    try {
      return parse(j_.at(k));
    } catch (const ConfigError&) {
      throw;
    } catch (const std::exception& e) {
      throw ConfigError(key(k), e.what());
    }
  }

 private:
  const json& j_;
  std::string path_;
};

double as_scalar(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_scalar(v.get<std::string>());
  throw std::invalid_argument("expected a number");
}

double as_length(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_length(v.get<std::string>());
  throw std::invalid_argument("expected a length");
}

double as_mass(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_mass(v.get<std::string>());
  throw std::invalid_argument("expected a mass");
}

double positive(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument(std::string(what) + " must be positive");
  return x;
}

std::size_t as_count(const json& v) {
  if (!v.is_number_integer() || v.get<long long>() < 1) throw std::invalid_argument("expected a positive integer");
  return static_cast<std::size_t>(v.get<long long>());
}

// A list of values or {min, max, n, spacing}.
template <class P>
std::vector<double> sweep(const Node& parent, const char* k, P&& parse) {
  return parent.get(k, [&](const json& v) {
    std::vector<double> out;
    if (v.is_array()) {
      if (v.empty()) throw ConfigError(parent.key(k), "empty sweep");
      for (std::size_t i = 0; i < v.size(); ++i) {
        try {
          out.push_back(parse(v[i]));
        } catch (const std::exception& e) {
          throw ConfigError(parent.key(k) + "[" + std::to_string(i) + "]", e.what());
        }
      }
      return out;
    }
    const Node s(v, parent.key(k));
    s.allow({"min", "max", "n", "spacing"});
    const double lo = s.get("min", parse), hi = s.get("max", parse);
    const std::size_t n = s.get("n", as_count);
    const std::string spacing = s.has("spacing") ? s.get("spacing", [](const json& x) { return x.get<std::string>(); })
                                                 : std::string("log");
    if (n == 1) {
      if (lo != hi) throw ConfigError(s.key("n"), "a single point needs min == max");
      return std::vector<double>{lo};
    }
    if (spacing == "log") {
      if (!(lo > 0.0) || !(hi > lo)) throw ConfigError(parent.key(k), "log sweep needs 0 < min < max");
      return log_grid(lo, hi, n);
    }
    if (spacing != "linear") throw ConfigError(s.key("spacing"), "expected 'log' or 'linear'");
    if (!(hi > lo)) throw ConfigError(parent.key(k), "sweep needs min < max");
    for (std::size_t i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * static_cast<double>(i) / (n - 1));
    out.back() = hi;
    return out;
  });
}

BodySpec parse_body(const Node& b) {
  const std::string shape = b.get("shape", [](const json& v) { return v.get<std::string>(); });
  if (shape == "atoms") {
    b.allow({"shape", "atoms"});
    std::vector<PointMass> atoms;
    const json& list = b.raw("atoms");
    if (!list.is_array() || list.empty()) throw ConfigError(b.key("atoms"), "expected a non-empty list");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Node a(list[i], b.key("atoms") + "[" + std::to_string(i) + "]");
      a.allow({"mass", "position"});
      const double m = a.get("mass", [](const json& v) { return positive(as_mass(v), "mass"); });
      const Vec3 p = a.get("position", [](const json& v) {
        if (!v.is_array() || v.size() != 3) throw std::invalid_argument("expected three coordinates");
        return Vec3(as_length(v[0]), as_length(v[1]), as_length(v[2]));
      });
      atoms.push_back({m, p});
    }
    return BodySpec::from_atoms(std::move(atoms));
  }

  Shape s;
  if (shape == "cylinder" || shape == "spheroid") {
    b.allow({"shape", "length", "radius", "material", "density", "mass"});
    const double L = b.get("length", [](const json& v) { return positive(as_length(v), "length"); });
    const double R = b.get("radius", [](const json& v) { return positive(as_length(v), "radius"); });
    s = shape == "cylinder" ? Shape(Cylinder{L, R}) : Shape(Spheroid{L, R});
  } else if (shape == "sphere") {
    b.allow({"shape", "radius", "material", "density", "mass"});
    s = Sphere{b.get("radius", [](const json& v) { return positive(as_length(v), "radius"); })};
  } else {
    throw ConfigError(b.key("shape"), "expected cylinder, spheroid, sphere or atoms");
  }
  const int given = b.has("material") + b.has("density") + b.has("mass");
  if (given != 1) throw ConfigError(b.key("material"), "give exactly one of material, density, mass");
  if (b.has("mass")) return BodySpec::with_mass(s, b.get("mass", [](const json& v) { return positive(as_mass(v), "mass"); }));
  if (b.has("density"))
    return BodySpec::with_density(s, b.get("density", [](const json& v) { return positive(as_scalar(v), "density"); }));
  return BodySpec::with_density(s, b.get("material", [](const json& v) { return material_density(v.get<std::string>()); }));
}

QuadratureSpec parse_quadrature(const Node& q) {
  q.allow({"rel_tol", "abs_tol", "max_evals", "scheme", "u_max"});
  QuadratureSpec spec;
  if (q.has("rel_tol")) spec.rel_tol = q.get("rel_tol", as_scalar);
  if (q.has("abs_tol")) spec.abs_tol = q.get("abs_tol", as_scalar);
  if (q.has("max_evals")) spec.max_evals = q.get("max_evals", as_count);
  if (q.has("u_max")) spec.u_max = q.get("u_max", as_scalar);
  if (q.has("scheme")) {
    const std::string s = q.get("scheme", [](const json& v) { return v.get<std::string>(); });
    if (s == "tensor_spherical")
      spec.scheme = QuadratureScheme::TensorSpherical3D;
    else if (s == "adaptive_cubature")
      spec.scheme = QuadratureScheme::AdaptiveCubature;
    else
      throw ConfigError(q.key("scheme"), "expected tensor_spherical or adaptive_cubature");
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("quadrature", e.what());
  }
  return spec;
}

}  // namespace

CslParams CslSection::at(double r) const {
  if (!lambda_c) throw ConfigError("csl.lambda_c", "missing key");
  return CslParams(*lambda_c, r, m0);
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double parse_length(std::string_view s) {
  double scale = 1.0;
  if (strip_suffix(s, "nm"))
    scale = 1e-9;
  else if (strip_suffix(s, "um") || strip_suffix(s, "µm"))
    scale = 1e-6;
  else if (strip_suffix(s, "mm"))
    scale = 1e-3;
  else
    strip_suffix(s, "m");
  return parse_number(s, "length") * scale;
}

double parse_mass(std::string_view s) {
  if (s == "amu") return kConstants.amu;
  if (s.substr(0, 4) == "amu:") return parse_number(s.substr(4), "mass") * kConstants.amu;
  strip_suffix(s, "kg");
  return parse_number(s, "mass");
}

double parse_scalar(std::string_view s) {
  if (strip_suffix(s, "deg")) return parse_number(s, "angle") * std::numbers::pi / 180.0;
  if (strip_suffix(s, "pi")) {
    while (!s.empty() && (s.back() == '*' || s.back() == ' ')) s.remove_suffix(1);
    return (s.empty() ? 1.0 : parse_number(s, "number")) * std::numbers::pi;
  }
  return parse_number(s, "number");
}

RunConfig parse_config(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  const Node root(j, "");
  root.allow({"body", "csl", "quadrature", "formfactor", "locrate", "diffusion", "planar", "exclude"});

  RunConfig cfg;
  cfg.canonical = j.dump();
  cfg.hash = fnv1a64(cfg.canonical);

  if (root.has("body")) cfg.body = parse_body(root.child("body"));
  if (root.has("csl")) {
    const Node c = root.child("csl");
    c.allow({"lambda_c", "r_c", "m0"});
    if (c.has("lambda_c")) cfg.csl.lambda_c = c.get("lambda_c", [](const json& v) { return positive(as_scalar(v), "lambda_c"); });
    if (c.has("r_c")) cfg.csl.r_c = c.get("r_c", [](const json& v) { return positive(as_length(v), "r_c"); });
    if (c.has("m0")) cfg.csl.m0 = c.get("m0", [](const json& v) { return positive(as_mass(v), "m0"); });
  }
  if (root.has("quadrature")) cfg.quadrature = parse_quadrature(root.child("quadrature"));

  if (root.has("formfactor")) {
    const Node f = root.child("formfactor");
    f.allow({"rays", "k"});
    FormfactorSection s;
    const json& rays = f.raw("rays");
    if (!rays.is_array() || rays.empty()) throw ConfigError(f.key("rays"), "empty sweep");
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const Node r(rays[i], f.key("rays") + "[" + std::to_string(i) + "]");
      r.allow({"theta", "phi"});
      s.rays.push_back({r.get("theta", as_scalar), r.has("phi") ? r.get("phi", as_scalar) : 0.0});
    }
    s.k = sweep(f, "k", [](const json& v) {
      const double k = as_scalar(v);
      if (!(k >= 0.0)) throw std::invalid_argument("k must be non-negative");
      return k;
    });
    cfg.formfactor = std::move(s);
  }

  if (root.has("locrate")) {
    const Node l = root.child("locrate");
    l.allow({"alphas", "r_c"});
    cfg.locrate = LocrateSection{sweep(l, "alphas", as_scalar),
                                 sweep(l, "r_c", [](const json& v) { return positive(as_length(v), "r_c"); })};
  }

  if (root.has("diffusion")) {
    const Node d = root.child("diffusion");
    d.allow({"r_c"});
    cfg.diffusion = DiffusionSection{sweep(d, "r_c", [](const json& v) { return positive(as_length(v), "r_c"); })};
  }

  if (root.has("planar")) {
    const Node p = root.child("planar");
    p.allow({"sigma_alpha", "d_rot", "inertia", "times", "n_alpha", "m_max", "check_dt"});
    PlanarSection s;
    s.sigma_alpha = p.get("sigma_alpha", [](const json& v) { return positive(as_scalar(v), "sigma_alpha"); });
    s.d_rot = p.get("d_rot", [](const json& v) {
      const double d = as_scalar(v);
      if (!(d >= 0.0)) throw std::invalid_argument("d_rot must be non-negative");
      return d;
    });
    if (p.has("inertia")) s.inertia = p.get("inertia", [](const json& v) { return positive(as_scalar(v), "inertia"); });
    s.times = sweep(p, "times", [](const json& v) {
      const double t = as_scalar(v);
      if (!(t >= 0.0)) throw std::invalid_argument("times must be non-negative");
      return t;
    });
    if (p.has("n_alpha")) s.n_alpha = p.get("n_alpha", as_count);
    if (p.has("m_max")) s.m_max = static_cast<int>(p.get("m_max", as_count));
    if (p.has("check_dt")) s.check_dt = p.get("check_dt", [](const json& v) { return positive(as_scalar(v), "check_dt"); });
    cfg.planar = std::move(s);
  }

  if (root.has("exclude")) {
    const Node e = root.child("exclude");
    e.allow({"gamma_cm", "gamma_rot", "rel_error", "r_c", "search"});
    ExcludeSection s;
    s.gamma_cm = e.get("gamma_cm", [](const json& v) { return positive(as_scalar(v), "gamma_cm"); });
    s.gamma_rot = e.get("gamma_rot", [](const json& v) { return positive(as_scalar(v), "gamma_rot"); });
    if (e.has("rel_error")) {
      s.rel_error = e.get("rel_error", as_scalar);
      if (!(s.rel_error >= 0.0 && s.rel_error < 1.0)) throw ConfigError(e.key("rel_error"), "must lie in [0, 1)");
    }
    s.r_c = e.has("r_c") ? sweep(e, "r_c", [](const json& v) { return positive(as_length(v), "r_c"); })
                         : default_r_c_grid();
    if (e.has("search")) {
      const Node q = e.child("search");
      q.allow({"min", "max", "points"});
      if (q.has("min")) s.search_min = q.get("min", [](const json& v) { return positive(as_length(v), "min"); });
      if (q.has("max")) s.search_max = q.get("max", [](const json& v) { return positive(as_length(v), "max"); });
      if (q.has("points")) s.scan_points = q.get("points", as_count);
      if (!(s.search_max > s.search_min)) throw ConfigError(q.key("max"), "search needs min < max");
      if (s.scan_points < 2) throw ConfigError(q.key("points"), "need at least two scan points");
    }
    cfg.exclude = std::move(s);
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace cslrot

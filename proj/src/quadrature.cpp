#include "cslrot/quadrature.hpp"

namespace cslrot {

void QuadratureSpec::validate() const {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2))
    throw std::invalid_argument("QuadratureSpec: rel_tol must lie in (0, 1e-2]");
  if (!(abs_tol >= 0.0)) throw std::invalid_argument("QuadratureSpec: abs_tol must be non-negative");
  if (max_evals < 1000) throw std::invalid_argument("QuadratureSpec: max_evals must be at least 1000");
  if (!(u_max > 0.0)) throw std::invalid_argument("QuadratureSpec: u_max must be positive");
}

namespace {

QuadratureResult<double> scalar(const QuadratureResult<QuadValue<1>>& r) {
  return {r.value[0], r.error, r.evaluations};
}

}  // namespace

QuadratureResult<double> integrate_1d(const std::function<double(double)>& f, double a, double b,
                                      const QuadratureSpec& spec) {
  return scalar(integrate_1d<1>([&](double x) { return QuadValue<1>{f(x)}; }, a, b, spec));
}

QuadratureResult<double> integrate_radial_angular(const std::function<double(double, double, double)>& f,
                                                  double r_c, const QuadratureSpec& spec,
                                                  const AngularDomain& dom) {
  return scalar(integrate_radial_angular<1>(
      [&](double k, double t, double p) { return QuadValue<1>{f(k, t, p)}; }, r_c, spec, dom));
}

QuadratureResult<double> integrate_axisymmetric(const std::function<double(double, double)>& f,
                                                double r_c, const QuadratureSpec& spec) {
  return scalar(integrate_axisymmetric<1>([&](double k, double t) { return QuadValue<1>{f(k, t)}; },
                                          r_c, spec));
}

}  // namespace cslrot

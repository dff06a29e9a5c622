#include "cslrot/exclusion.hpp"

#include <doctest.h>

#include <cmath>

using namespace cslrot;

namespace {

BodySpec rod() { return BodySpec::with_density(Cylinder{100e-9, 5e-9}, 2329.0); }

}  // namespace

TEST_CASE("bound is linear in the heating rate") {
  const HeatingMeasurement a{1e-8, 1e-10, 0.0, rod()};
  const HeatingMeasurement b{2e-8, 2e-10, 0.0, rod()};
  for (auto ch : {Channel::Cm, Channel::Rot})
    CHECK(lambda_bound(3e-7, b, ch) == 2.0 * lambda_bound(3e-7, a, ch));
}

TEST_CASE("bound inverts the forward model") {
  const CslParams csl(3e-9, 2e-7);
  const auto m = forward_heating(rod(), csl);
  CHECK(lambda_bound(2e-7, m, Channel::Cm) == doctest::Approx(3e-9).epsilon(1e-13));
  CHECK(lambda_bound(2e-7, m, Channel::Rot) == doctest::Approx(3e-9).epsilon(1e-13));
}

TEST_CASE("spheres are insensitive in the rotational channel") {
  const HeatingMeasurement m{1e-8, 1e-10, 0.0, BodySpec::with_density(Sphere{50e-9}, 2329.0)};
  CHECK(lambda_bound(1e-7, m, Channel::Cm) > 0.0);
  CHECK_THROWS_AS(lambda_bound(1e-7, m, Channel::Rot), ChannelInsensitive);
  try {
    lambda_bound(1e-7, m, Channel::Rot);
  } catch (const ChannelInsensitive& e) {
    CHECK(std::string(e.what()).find("channel insensitive") == 0);
  }
}

TEST_CASE("curves are positive with bands around them") {
  const HeatingMeasurement m{1e-8, 1e-10, 0.2, rod()};
  const auto grid = log_grid(1e-9, 1e-4, 40);
  const auto c = exclusion_curve(m, Channel::Rot, grid);
  REQUIRE(c.lambda_bound.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::isfinite(c.lambda_bound[i]));
    CHECK(c.lambda_bound[i] > 0.0);
    CHECK(c.band_low[i] == doctest::Approx(0.8 * c.lambda_bound[i]));
    CHECK(c.band_high[i] == doctest::Approx(1.2 * c.lambda_bound[i]));
  }
  CHECK_THROWS_AS(exclusion_curve(m, Channel::Cm, std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("grids") {
  const auto g = default_r_c_grid();
  CHECK(g.size() == 200);
  CHECK(g.front() == 1e-9);
  CHECK(g.back() == 1e-4);
  CHECK(g[1] / g[0] == doctest::Approx(g[100] / g[99]));
  CHECK_THROWS_AS(log_grid(1.0, 0.5, 10), std::invalid_argument);
}

TEST_CASE("round trip recovers the collapse parameters") {
  for (auto [r0, l0] : {std::pair{3e-7, 1e-9}, std::pair{2e-6, 4e-11}, std::pair{8e-8, 1e-7}}) {
    const auto x = intersect(forward_heating(rod(), CslParams(l0, r0)));
    CHECK(x.point.r_c == doctest::Approx(r0).epsilon(1e-6));
    CHECK(x.point.lambda_c == doctest::Approx(l0).epsilon(1e-6));
    CHECK(x.region.r_c_min == x.region.r_c_max);
    CHECK(x.region.lambda_min == x.region.lambda_max);
  }
}

TEST_CASE("error rectangle spans the band crossings") {
  auto m = forward_heating(rod(), CslParams(1e-9, 3e-7), 0.1);
  const auto x = intersect(m);
  CHECK(x.region.r_c_min < x.point.r_c);
  CHECK(x.region.r_c_max > x.point.r_c);
  CHECK(x.region.lambda_min < x.point.lambda_c);
  CHECK(x.region.lambda_max > x.point.lambda_c);
  // Equal shifts of both bands leave r_c fixed and scale lambda by 1 +- rel_error.
  CHECK(x.region.lambda_min <= 0.9 * x.point.lambda_c * (1 + 1e-9));
  CHECK(x.region.lambda_max >= 1.1 * x.point.lambda_c * (1 - 1e-9));
}

TEST_CASE("no crossing on the search interval") {
  const auto m = forward_heating(rod(), CslParams(1e-9, 3e-7));
  IntersectOptions opt;
  opt.r_c_min = 1e-5;
  opt.r_c_max = 1e-4;
  opt.scan_points = 20;
  CHECK_THROWS_AS(intersect(m, opt), NoIntersection);
  try {
    intersect(m, opt);
  } catch (const NoIntersection& e) {
    CHECK(std::string(e.what()).find("no unique intersection") == 0);
  }
}

TEST_CASE("measurement validation") {
  CHECK_THROWS_AS(lambda_bound(1e-7, {0.0, 1.0, 0.0, rod()}, Channel::Cm), std::invalid_argument);
  CHECK_THROWS_AS(lambda_bound(1e-7, {1.0, 1.0, 1.0, rod()}, Channel::Cm), std::invalid_argument);
  CHECK_THROWS_AS(lambda_bound(-1.0, {1.0, 1.0, 0.0, rod()}, Channel::Cm), std::invalid_argument);
}

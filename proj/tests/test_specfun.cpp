#include "cslrot/oracles.hpp"
#include "cslrot/specfun.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace cslrot;
namespace sf = cslrot::specfun;

TEST_CASE("Bessel J against power series") {
  for (double x = 0.0; x <= 12.0; x += 0.37) {
    CHECK(std::abs(sf::bessel_j1(x) - oracle::series_j1(x)) <= 1e-13);
    CHECK(std::abs(sf::bessel_j_3half(x) - oracle::series_j_3half(x)) <= 1e-13);
  }
  for (double x : {1e-8, 1e-4, 0.5, 0.999, 1.0, 1.001}) {
    const double s = oracle::series_j_3half(x);
    CHECK(std::abs(sf::bessel_j_3half(x) - s) <= 1e-14 * std::max(s, 1e-300) + 1e-300);
  }
  CHECK(sf::bessel_j0(0.0) == 1.0);
  CHECK(sf::bessel_j1(-2.0) == doctest::Approx(-sf::bessel_j1(2.0)));
}

TEST_CASE("erf against series") {
  for (double x = -3.0; x <= 3.0; x += 0.25) CHECK(std::abs(sf::erf(x) - oracle::series_erf(x)) <= 1e-14);
}

TEST_CASE("scaled modified Bessel array sums to one and matches single orders") {
  for (double x : {1e-6, 0.01, 0.5, 3.0, 40.0, 500.0}) {
    std::vector<double> in(400);
    sf::bessel_i_scaled_array(x, in);
    double s = in[0];
    for (std::size_t n = 1; n < in.size(); ++n) s += 2.0 * in[n];
    CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
    for (int n : {0, 1, 5, 30}) {
      const double single = sf::bessel_i_scaled(n, x);
      CHECK(std::abs(in[n] - single) <= 1e-13 * std::max(single, 1e-290));
    }
  }
  std::vector<double> neg(5), pos(5);
  sf::bessel_i_scaled_array(-2.0, neg);
  sf::bessel_i_scaled_array(2.0, pos);
  for (int n = 0; n < 5; ++n) CHECK(neg[n] == doctest::Approx(n % 2 ? -pos[n] : pos[n]));
}

TEST_CASE("sinc and its derivative") {
  CHECK(sf::sinc(0.0) == 1.0);
  for (double x : {1e-6, 1e-3, 0.05, 0.09, 0.11, 1.0, 10.0}) {
    CHECK(sf::sinc(x) == doctest::Approx(std::sin(x) / x).epsilon(1e-14));
    const double h = 1e-5 * std::max(1.0, x);
    const double fd = (sf::sinc(x + h) - sf::sinc(x - h)) / (2 * h);
    CHECK(std::abs(sf::sinc_derivative(x) - fd) <= 1e-9);
  }
}

TEST_CASE("NaN arguments are rejected") {
  CHECK_THROWS_AS(sf::bessel_j1(std::nan("")), std::domain_error);
  CHECK_THROWS_AS(sf::bessel_j_3half(-1.0), std::domain_error);
  CHECK_THROWS_AS(sf::bessel_i_scaled(-1, 1.0), std::domain_error);
}

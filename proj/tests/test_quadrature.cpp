#include <cmath>
#include <numbers>

#include "doctest.h"
#include "exit_ibp/distributions.hpp"
#include "exit_ibp/quadrature.hpp"

using namespace exit_ibp;

TEST_CASE("adaptive Simpson on smooth integrands") {
  CHECK(adaptive_simpson([](double x) { return std::sin(x); }, 0.0, std::numbers::pi).value ==
        doctest::Approx(2.0).epsilon(1e-12));
  CHECK(adaptive_simpson([](double x) { return std::exp(-x * x); }, -8.0, 8.0).value ==
        doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("half-line integrals") {
  CHECK(integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0).value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(integrate_to_infinity([](double x) { return 1.0 / (1.0 + x * x); }, 0.0).value ==
        doctest::Approx(std::numbers::pi / 2).epsilon(1e-9));
}

TEST_CASE("quadrature error when the rule cannot converge") {
  QuadratureSpec spec;
  spec.max_depth = 3;
  spec.abs_tol = 1e-14;
  CHECK_THROWS_AS(adaptive_simpson([](double x) { return std::sqrt(std::abs(x - 0.3141)); }, 0.0, 1.0, spec),
                  QuadratureError);
}

TEST_CASE("results are stable when max_depth doubles") {
  QuadratureSpec deeper;
  deeper.max_depth = 80;
  auto f = [](double s) { return std::cos(std::numbers::pi * s / 2) * levy_density(1.0, s); };
  CHECK(std::abs(adaptive_simpson(f, 0.0, 1.0).value - adaptive_simpson(f, 0.0, 1.0, deeper).value) < 1e-8);
}

TEST_CASE("Gauss-Hermite rule integrates polynomials exactly against N(0,1)") {
  const GaussHermiteRule rule = gauss_hermite_rule(8);
  auto moment = [&](int k) {
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], k);
    return s;
  };
  CHECK(moment(0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(moment(1)) < 1e-14);
  CHECK(moment(2) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(moment(4) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(moment(10) == doctest::Approx(945.0).epsilon(1e-11));
  CHECK(moment(14) == doctest::Approx(135135.0).epsilon(1e-10));
}

// Reference values computed independently with scipy.integrate.quad.
TEST_CASE("frozen oracle constants for the Levy law with c = 1") {
  auto p = [](double s) { return levy_density(1.0, s); };
  CHECK(std::abs(adaptive_simpson(p, 0.0, 1.0).value - 0.31731050786291415) < 1e-10);
  const double cosine = adaptive_simpson(
      [&](double s) { return -std::numbers::pi / 2 * std::sin(std::numbers::pi * s / 2) * p(s); }, 0.0, 1.0).value;
  CHECK(std::abs(cosine - (-0.340076077758348)) < 1e-10);
  const double poly = adaptive_simpson([&](double s) { return 2.0 * (s - 1.0) * p(s); }, 0.0, 1.0).value;
  CHECK(std::abs(poly - (-0.301359133375083)) < 1e-10);
  // E[(tau ^ 1) - 1] = -int_0^1 (1 - s) p(s) ds.
  const double stopped = adaptive_simpson([&](double s) { return (s - 1.0) * p(s); }, 0.0, 1.0).value;
  CHECK(std::abs(stopped - (-0.150679566687542)) < 1e-10);
}

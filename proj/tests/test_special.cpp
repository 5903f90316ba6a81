#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "exit_ibp/special.hpp"

using namespace exit_ibp;

TEST_CASE("normal cdf reference values") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(2.0 * normal_cdf(-1.0) == doctest::Approx(0.31731050786291415).epsilon(1e-14));
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-14));
}

TEST_CASE("gaussian density") {
  CHECK(gaussian_density(1.0, 0.0) == doctest::Approx(1.0 / std::sqrt(2.0 * std::numbers::pi)));
  CHECK(gaussian_density(4.0, 2.0) == doctest::Approx(std::exp(-0.5) / std::sqrt(8.0 * std::numbers::pi)));
}

TEST_CASE("half-integer Bessel K closed forms") {
  for (double z : {0.1, 0.7, 1.0, 3.5, 20.0}) {
    const double k12 = std::sqrt(std::numbers::pi / (2.0 * z)) * std::exp(-z);
    CHECK(bessel_k_half(0.5, z) == doctest::Approx(k12).epsilon(1e-14));
    CHECK(bessel_k_half(-0.5, z) == doctest::Approx(k12).epsilon(1e-14));
    CHECK(bessel_k_half(1.5, z) == doctest::Approx(k12 * (1.0 + 1.0 / z)).epsilon(1e-14));
    CHECK(bessel_k_half(2.5, z) == doctest::Approx(k12 * (1.0 + 3.0 / z + 3.0 / (z * z))).epsilon(1e-13));
    // Recurrence K_{nu+1} = K_{nu-1} + (2 nu / z) K_nu.
    CHECK(bessel_k_half(3.5, z) ==
          doctest::Approx(bessel_k_half(1.5, z) + 5.0 / z * bessel_k_half(2.5, z)).epsilon(1e-13));
  }
}

TEST_CASE("Bessel K rejects bad arguments") {
  CHECK_THROWS_AS(bessel_k_half(0.5, 0.0), std::domain_error);
  CHECK_THROWS_AS(bessel_k_half(1.0, 1.0), std::domain_error);
}

TEST_CASE("Hermite polynomials match derivatives of the Gaussian density") {
  for (double t : {0.3, 1.0, 2.5}) {
    for (double x : {-1.7, -0.2, 0.0, 0.9, 2.2}) {
      const double h = 1e-3;
      const double g = gaussian_density(t, x);
      const double d1 = (gaussian_density(t, x + h) - gaussian_density(t, x - h)) / (2 * h);
      const double d2 = (gaussian_density(t, x + h) - 2 * g + gaussian_density(t, x - h)) / (h * h);
      CHECK(hermite_h(0, t, x) == 1.0);
      CHECK(hermite_h(1, t, x) * g == doctest::Approx(d1).epsilon(1e-5));
      CHECK(hermite_h(2, t, x) * g == doctest::Approx(d2).epsilon(1e-4));
      const double d3 = (hermite_h(2, t, x + h) * gaussian_density(t, x + h) -
                         hermite_h(2, t, x - h) * gaussian_density(t, x - h)) /
                        (2 * h);
      CHECK(hermite_h(3, t, x) * g == doctest::Approx(d3).epsilon(1e-5).scale(1.0));
      const double d4 = (hermite_h(3, t, x + h) * gaussian_density(t, x + h) -
                         hermite_h(3, t, x - h) * gaussian_density(t, x - h)) /
                        (2 * h);
      CHECK(hermite_h(4, t, x) * g == doctest::Approx(d4).epsilon(1e-5).scale(1.0));
    }
  }
  CHECK_THROWS_AS(hermite_h(5, 1.0, 0.0), std::domain_error);
  CHECK_THROWS_AS(hermite_h(1, 0.0, 0.0), std::domain_error);
}

#include <stdexcept>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "exit_ibp/chain.hpp"
#include "exit_ibp/distributions.hpp"
#include "exit_ibp/special.hpp"
#include "exit_ibp/weights.hpp"

using namespace exit_ibp;

namespace {

const ExitProblem kProblem{0.0, 1.0, 1.0};

ChainPath path_with_jumps(const DiffusionModel& m, int n, bool surviving) {
  RngStream rng(31, static_cast<std::uint64_t>(n));
  ChainPath p;
  for (;;) {
    if (sample_chain_gaussian(rng, m, 2.0, 60, p) && p.n == n && (!surviving || p.survived)) return p;
  }
}

}  // namespace

TEST_CASE("canonical integrals") {
  CHECK(canonical_integral(1, 1.0, 1.0, 0.25, 0.5) == doctest::Approx(2.0));
  CHECK(canonical_integral(2, 1.0, 1.0, 1.0, 0.0) == doctest::Approx(-1.0));
  CHECK_THROWS_AS(canonical_integral(3, 1.0, 1.0, 1.0, 0.0), std::invalid_argument);
  RngStream rng(32, 0);
  for (int k = 0; k < 100; ++k) {
    const double a = 0.2 + 2.0 * rng.uniform(), s = std::sqrt(a);
    const double dz = 0.05 + rng.uniform(), z = 4.0 * rng.uniform() - 2.0;
    CHECK(canonical_integral(2, a, s, dz, z) == doctest::Approx(hermite_h(2, a * dz, s * z)).epsilon(1e-12));
    CHECK(canonical_integral(1, a, s, dz, z) == doctest::Approx(-hermite_h(1, a * dz, s * z)).epsilon(1e-12));
  }
}

TEST_CASE("per-interval weight vanishes where it should") {
  const auto constant = DiffusionModel::constant(0.0, 1.3, kProblem);
  CHECK(theta_i(constant, 1.0, 1.4, 1, 0.3, 1.0) == 0.0);
  CHECK(theta_i(constant, 1.0, 0.2, 0, 0.7, 2.0) == 0.0);
  const auto tanh = DiffusionModel::from_preset("tanh", {}, kProblem);
  CHECK(theta_i(tanh, 1.0, -0.2, 1, 0.5, 1.0) == 0.0);
  CHECK(theta_i(tanh, 1.0, 0.0, 1, 0.5, 1.0) == 0.0);
}

TEST_CASE("per-interval weight for the tanh preset, by hand") {
  const auto m = DiffusionModel::from_preset("tanh", {}, kProblem);
  const double x_prev = 1.0, x_cur = 1.2, dz = 0.5, lambda = 1.0;
  const double tp = std::tanh(x_prev), tc = std::tanh(x_cur);
  const double a_prev = 1.0 + 0.5 * tp, a_cur = 1.0 + 0.5 * tc;
  const double s2 = 1.0 - tc * tc;
  const double z = (x_cur - x_prev) / std::sqrt(a_prev);
  const double i1 = z / (std::sqrt(a_prev) * dz);
  const double i2 = z * z / (a_prev * dz * dz) - 1.0 / (a_prev * dz);
  const double c1 = 0.1 * tc, c2 = 0.5 * (a_cur - a_prev);
  const double dc2 = 0.25 * s2, ddc2 = 0.5 * (-2.0 * 0.5 * s2 * tc), dc1 = 0.1 * s2;
  const double expected = 2.0 / lambda * (c2 * i2 + (c1 - 2.0 * dc2) * i1 + ddc2 - dc1);
  CHECK(theta_i(m, x_prev, x_cur, 1, dz, lambda) == doctest::Approx(expected).epsilon(1e-14));
  // rho = 0 flips the sign and reflects the anchor.
  const double anchor = -x_prev;
  const double z0 = (x_cur - anchor) / std::sqrt(a_prev);
  const double j1 = z0 / (std::sqrt(a_prev) * dz);
  const double j2 = z0 * z0 / (a_prev * dz * dz) - 1.0 / (a_prev * dz);
  const double expected0 = -2.0 / lambda * (c2 * j2 + (c1 - 2.0 * dc2) * j1 + ddc2 - dc1);
  CHECK(theta_i(m, x_prev, x_cur, 0, dz, lambda) == doctest::Approx(expected0).epsilon(1e-14));
}

TEST_CASE("final-state weight") {
  CHECK(theta_hat(DiffusionModel::constant(0.2, 1.7, kProblem), 3.0) == 1.0);
  auto zero = [](double) { return 0.0; };
  const auto custom = DiffusionModel::custom(zero, zero, [](double y) { return y <= 0.5 ? 2.0 : 1.0; }, zero, zero,
                                             1.0, 2.0, kProblem);
  CHECK(theta_hat(custom, 1.0) == 2.0);
  CHECK(theta_hat(DiffusionModel::from_preset("tanh", {}, kProblem), 0.0) == 1.0);
}

TEST_CASE("time-dual building blocks") {
  CHECK(gig_time_score(1.0, 1.0, 1.0, 1.0) == doctest::Approx(1.0));
  CHECK(time_dual(1.0, 0.0, 1.0, 1.0, 1.0) == doctest::Approx(0.0));
  CHECK(time_dual(2.0, 0.5, 0.5, 0.0, 1.0) == doctest::Approx(2.0 * 1.0 - 0.5));
  CHECK(i_hat_last(1.0, 1.0, 1.0) == doctest::Approx(1.0));
  CHECK(i_hat_last(1.0, 3.0, 1.0) == doctest::Approx(0.0));
  CHECK(time_dual_theta(DiffusionModel::constant(0.0, 1.0, kProblem), 1.0, 1.5, 1, 0.4, 1.0) == 0.0);
}

TEST_CASE("final-interval dual is the negative log-derivative of the Levy density") {
  RngStream rng(33, 0);
  for (int k = 0; k < 100; ++k) {
    const double a = 0.3 + 2.0 * rng.uniform();
    const double d2 = 0.01 + 3.0 * rng.uniform();
    const double s = 0.02 + 3.0 * rng.uniform();
    const double c2 = d2 / a;
    const double symbolic = 1.5 / s - c2 / (2.0 * s * s);
    CHECK(i_hat_last(a, d2, s) == doctest::Approx(symbolic).epsilon(1e-12));
    const double h = 1e-5 * s, c = std::sqrt(c2);
    const double fd = -(std::log(levy_density(c, s + h)) - std::log(levy_density(c, s - h))) / (2.0 * h);
    CHECK(std::abs(i_hat_last(a, d2, s) - fd) < 1e-6 * (1.0 + std::abs(fd)));
  }
}

TEST_CASE("weight time-derivative against finite differences") {
  const auto m = DiffusionModel::from_preset("tanh", {}, kProblem);
  RngStream rng(34, 0);
  for (int k = 0; k < 100; ++k) {
    const double xp = 0.1 + 2.9 * rng.uniform(), xc = 0.05 + 2.95 * rng.uniform();
    const int rho = rng.bit();
    const double tau = 0.05 + 1.95 * rng.uniform(), lambda = 0.5 + 1.5 * rng.uniform();
    const double h = 1e-6 * tau;
    const double fd = (theta_i(m, xp, xc, rho, tau + h, lambda) - theta_i(m, xp, xc, rho, tau - h, lambda)) / (2 * h);
    const double d = theta_i_dtau(m, xp, xc, rho, tau, lambda);
    CHECK(std::abs(fd - d) <= 1e-6 * std::abs(d));
  }
}

TEST_CASE("constant model weights") {
  const auto m = DiffusionModel::constant(0.0, 1.0, kProblem);
  const ChainPath p0 = path_with_jumps(m, 0, false);
  const WeightSet w0 = assemble_weights(p0, m, 2.0);
  REQUIRE(w0.theta_I.size() == 1);
  CHECK(w0.theta_I[0] == i_hat_last(1.0, p0.delta_sq[0], p0.tau_bar));
  CHECK(w0.gamma == 1.0);
  CHECK(w0.gamma_bar == 0.0);
  CHECK(w0.theta_hat == 1.0);
  for (int n = 1; n <= 3; ++n) {
    const ChainPath p = path_with_jumps(m, n, false);
    const WeightSet w = assemble_weights(p, m, 2.0);
    CHECK(w.gamma == 0.0);
    for (double t : w.theta) CHECK(t == 0.0);
    for (double t : w.theta_I) CHECK(t == 0.0);
    CHECK(w.M == doctest::Approx(malliavin_variance(p)));
  }
}

TEST_CASE("assembled derivative weights follow the documented multiplication order") {
  const auto m = DiffusionModel::from_preset("tanh", {}, kProblem);
  const ChainPath p = path_with_jumps(m, 2, true);
  const WeightSet w = assemble_weights(p, m, 2.0);
  REQUIRE(w.theta.size() == 2);
  REQUIRE(w.theta_I.size() == 3);
  const double t1 = w.theta[0], t2 = w.theta[1];
  CHECK(t1 == theta_i(m, p.states[0], p.states[1], p.rho[0], p.tau[0], 2.0));
  CHECK(w.i_time_theta[0] ==
        doctest::Approx(time_dual_theta(m, p.states[0], p.states[1], p.rho[0], p.tau[0], 2.0)).epsilon(1e-12));
  double e1 = w.theta_hat;
  e1 *= t2;
  e1 *= w.i_time_theta[0];
  CHECK(w.theta_I[0] == e1);
  double e2 = w.theta_hat;
  e2 *= w.i_time_theta[1];
  e2 *= t1;
  CHECK(w.theta_I[1] == e2);
  double e3 = w.theta_hat;
  e3 *= w.i_hat_last;
  e3 *= t1;
  e3 *= t2;
  CHECK(w.theta_I[2] == e3);
  CHECK(w.gamma == t1 * t2);
  CHECK(w.gamma_bar == doctest::Approx((m.a(0.0) - m.a(p.states[2])) / m.a(p.states[2]) * t1 * t2));
}

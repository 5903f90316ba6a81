#include "exit_ibp/identities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "exit_ibp/chain.hpp"
#include "exit_ibp/distributions.hpp"
#include "exit_ibp/quadrature.hpp"
#include "exit_ibp/rng.hpp"
#include "exit_ibp/special.hpp"
#include "exit_ibp/weights.hpp"

namespace exit_ibp {

double Polynomial::operator()(double x) const {
  double v = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
  return v;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return Polynomial({0.0});
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  if (c_.empty() || other.c_.empty()) return Polynomial();
  std::vector<double> p(c_.size() + other.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    for (std::size_t j = 0; j < other.c_.size(); ++j) p[i + j] += c_[i] * other.c_[j];
  }
  return Polynomial(std::move(p));
}

namespace {

double draw(RngStream& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

Polynomial random_polynomial(RngStream& rng, int degree) {
  std::vector<double> c(degree + 1);
  for (auto& v : c) v = draw(rng, -1.0, 1.0);
  return Polynomial(std::move(c));
}

IdentityCheck finish(std::string name, double max_error, double tolerance, std::string detail = {}) {
  IdentityCheck c;
  c.name = std::move(name);
  c.max_error = max_error;
  c.tolerance = tolerance;
  c.passed = max_error <= tolerance;
  c.detail = std::move(detail);
  return c;
}

// Smooth bump supported on (t1, t2) and its derivative.
struct Bump {
  double t1, t2;
  double value(double t) const {
    if (t <= t1 || t >= t2) return 0.0;
    return std::exp(-1.0 / ((t - t1) * (t2 - t)));
  }
  double derivative(double t) const {
    if (t <= t1 || t >= t2) return 0.0;
    const double u = (t - t1) * (t2 - t);
    return value(t) * ((t2 - t) - (t - t1)) / (u * u);
  }
};

DiffusionModel tanh_model(double L) { return DiffusionModel::affine_tanh(0.1, 1.0, 0.5, ExitProblem{L, 1.0, 1.0}); }

}  // namespace

IdentityCheck check_gaussian_duality(std::uint64_t seed, int instances) {
  const GaussHermiteRule rule = gauss_hermite_rule(12);
  RngStream rng(seed, 101);
  double worst = 0.0;
  for (int k = 0; k < instances; ++k) {
    const Polynomial f = random_polynomial(rng, 3);
    const Polynomial H = random_polynomial(rng, 3);
    const double x_prev = draw(rng, -2.0, 2.0);
    const double L = x_prev - draw(rng, 0.1, 2.0);
    const int rho = rng.bit() ? 1 : 0;
    const double dzeta = draw(rng, 0.1, 2.0);
    const double a = draw(rng, 0.5, 2.0);
    const double sigma = std::sqrt(a);
    const double anchor = rho ? x_prev : 2.0 * L - x_prev;
    const Polynomial f1 = f.derivative(), f2 = f1.derivative();
    const Polynomial H1 = H.derivative(), H2 = H1.derivative();

    for (int ell = 1; ell <= 2; ++ell) {
      double lhs = 0.0, rhs = 0.0;
      for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
        const double z = std::sqrt(dzeta) * rule.nodes[j];
        const double x = anchor + sigma * z;
        const double i1 = canonical_integral(1, a, sigma, dzeta, z);
        double dual;
        if (ell == 1) {
          lhs += rule.weights[j] * f1(x) * H(x);
          dual = H(x) * i1 - H1(x);
        } else {
          lhs += rule.weights[j] * f2(x) * H(x);
          dual = H(x) * canonical_integral(2, a, sigma, dzeta, z) - 2.0 * H1(x) * i1 + H2(x);
        }
        rhs += rule.weights[j] * f(x) * dual;
      }
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
  }
  return finish("gaussian duality", worst, 1e-8);
}

IdentityCheck check_extraction_formula(std::uint64_t seed, int instances) {
  RngStream rng(seed, 102);
  double worst = 0.0;
  for (int k = 0; k < instances; ++k) {
    const Polynomial H1 = random_polynomial(rng, 3);
    const Polynomial H2 = random_polynomial(rng, 3);
    const Polynomial P = H1 * H2;
    const double a = draw(rng, 0.5, 2.0);
    const double sigma = std::sqrt(a);
    const double dzeta = draw(rng, 0.1, 2.0);
    const double z = draw(rng, -2.0, 2.0);
    const double x = draw(rng, -2.0, 2.0);
    const double i1 = canonical_integral(1, a, sigma, dzeta, z);
    const double i2 = canonical_integral(2, a, sigma, dzeta, z);
    auto I1 = [&](const Polynomial& h) { return h(x) * i1 - h.derivative()(x); };
    auto I2 = [&](const Polynomial& h) {
      const Polynomial d1 = h.derivative();
      return h(x) * i2 - 2.0 * d1(x) * i1 + d1.derivative()(x);
    };
    const double direct = I2(P);
    const double extracted = I2(H1) * H2(x) - 2.0 * I1(H1) * H2.derivative()(x) + H1(x) * H2.derivative().derivative()(x);
    worst = std::max(worst, std::abs(direct - extracted) / std::max(1.0, std::abs(direct)));
  }
  return finish("extraction formula", worst, 1e-10);
}

IdentityCheck check_hermite_link(std::uint64_t seed, int instances) {
  RngStream rng(seed, 103);
  double worst = 0.0;
  for (int k = 0; k < instances; ++k) {
    const double a = draw(rng, 0.2, 3.0);
    const double sigma = std::sqrt(a);
    const double dzeta = draw(rng, 0.05, 2.0);
    const double z = draw(rng, -3.0, 3.0);
    for (int ell = 1; ell <= 2; ++ell) {
      const double lhs = canonical_integral(ell, a, sigma, dzeta, z);
      const double rhs = (ell % 2 ? -1.0 : 1.0) * hermite_h(ell, a * dzeta, sigma * z);
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
  }
  return finish("hermite link", worst, 1e-12);
}

IdentityCheck check_weight_duality() {
  // Barrier far below so that neither the reflection nor the indicator acts.
  const DiffusionModel model = tanh_model(-50.0);
  const double x_prev = 1.0, dzeta = 0.5, lambda = 1.0;
  const Coefficients prev = model.at(x_prev);
  const double sd = std::sqrt(prev.a * dzeta);
  QuadratureSpec spec;
  spec.abs_tol = 1e-12;
  RngStream rng(0, 104);
  double worst = 0.0;
  for (int k = 0; k < 5; ++k) {
    const Polynomial f = random_polynomial(rng, 3);
    const Polynomial f1 = f.derivative(), f2 = f1.derivative();
    auto density = [&](double y) { return gaussian_density(prev.a * dzeta, y - x_prev); };
    const double lhs = adaptive_simpson(
                           [&](double y) {
                             const Coefficients c = model.at(y);
                             return (0.5 * (c.a - prev.a) * f2(y) + c.b * f1(y)) * density(y);
                           },
                           x_prev - 14.0 * sd, x_prev + 14.0 * sd, spec)
                           .value;
    const double rhs = adaptive_simpson(
                           [&](double y) {
                             const double bracket = theta_i(model, x_prev, y, 1, dzeta, lambda) * lambda / 2.0;
                             return f(y) * bracket * density(y);
                           },
                           x_prev - 14.0 * sd, x_prev + 14.0 * sd, spec)
                           .value;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return finish("weight duality (tanh)", worst, 1e-8);
}

IdentityCheck check_time_duality(std::uint64_t seed, int instances) {
  const DiffusionModel model = tanh_model(0.0);
  RngStream rng(seed, 105);
  QuadratureSpec spec;
  spec.abs_tol = 1e-11;
  double worst = 0.0;
  for (int k = 0; k < instances; ++k) {
    const double x_prev = draw(rng, 0.2, 2.5);
    const double x_cur = draw(rng, 0.05, 2.5);
    const int rho = rng.bit() ? 1 : 0;
    const double lambda = draw(rng, 0.5, 2.0);
    const Coefficients prev = model.at(x_prev);
    const double anchor = rho ? x_prev : 2.0 * model.L() - x_prev;
    const double delta_sq = (x_cur - anchor) * (x_cur - anchor);
    const GigParams q{2.0 * lambda, delta_sq / prev.a, 0.5};
    const Bump f{draw(rng, 0.05, 0.5), draw(rng, 1.0, 3.0)};
    auto G = [&](double t) { return theta_i(model, x_prev, x_cur, rho, t, lambda); };
    auto dG = [&](double t) { return theta_i_dtau(model, x_prev, x_cur, rho, t, lambda); };
    const double lhs =
        adaptive_simpson([&](double t) { return f.derivative(t) * G(t) * gig_density(q, t); }, f.t1, f.t2, spec).value;
    const double rhs = adaptive_simpson(
                           [&](double t) {
                             const double dual = G(t) * gig_time_score(lambda, t, delta_sq, prev.a) - dG(t);
                             return f.value(t) * dual * gig_density(q, t);
                           },
                           f.t1, f.t2, spec)
                           .value;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return finish("time duality (GIG jump time)", worst, 1e-6);
}

IdentityCheck check_final_interval_duality(std::uint64_t seed, int instances) {
  RngStream rng(seed, 106);
  QuadratureSpec spec;
  spec.abs_tol = 1e-11;
  double worst = 0.0;
  for (int k = 0; k < instances; ++k) {
    const double a = draw(rng, 0.5, 2.0);
    const double delta_sq = draw(rng, 0.05, 4.0);
    const double c = std::sqrt(delta_sq / a);
    const Bump f{draw(rng, 0.01, 0.5), draw(rng, 1.0, 4.0)};
    const double lhs =
        adaptive_simpson([&](double s) { return f.derivative(s) * levy_density(c, s); }, f.t1, f.t2, spec).value;
    const double rhs = adaptive_simpson(
                           [&](double s) { return f.value(s) * i_hat_last(a, delta_sq, s) * levy_density(c, s); },
                           f.t1, f.t2, spec)
                           .value;
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return finish("final-interval duality (Levy)", worst, 1e-6);
}

IdentityCheck check_theta_time_derivative(std::uint64_t seed, int instances) {
  const DiffusionModel model = tanh_model(0.0);
  RngStream rng(seed, 107);
  double worst = 0.0;
  for (int k = 0; k < instances; ++k) {
    const double x_prev = draw(rng, 0.1, 3.0);
    const double x_cur = draw(rng, 0.05, 3.0);
    const int rho = rng.bit() ? 1 : 0;
    const double tau = draw(rng, 0.05, 2.0);
    const double lambda = draw(rng, 0.5, 2.0);
    const double h = 1e-6 * tau;
    const double fd = (theta_i(model, x_prev, x_cur, rho, tau + h, lambda) -
                       theta_i(model, x_prev, x_cur, rho, tau - h, lambda)) /
                      (2.0 * h);
    const double analytic = theta_i_dtau(model, x_prev, x_cur, rho, tau, lambda);
    worst = std::max(worst, std::abs(fd - analytic) / std::max(std::abs(analytic), 1e-300));
  }
  return finish("d theta / d tau vs finite difference", worst, 1e-6);
}

std::vector<IdentityCheck> run_identity_checks(std::uint64_t seed) {
  return {check_gaussian_duality(seed),       check_extraction_formula(seed),    check_hermite_link(seed),
          check_weight_duality(),             check_time_duality(seed),          check_final_interval_duality(seed),
          check_theta_time_derivative(seed)};
}

std::string DegenerationReport::table() const {
  std::ostringstream os;
  char line[200];
  std::snprintf(line, sizeof line, "%-22s %9s %12s %12s %12s %12s\n", "|Delta| bin", "count", "E|theta|",
                "ratio", "E|I(theta)|", "ratio");
  os << line;
  for (const auto& b : bins) {
    std::snprintf(line, sizeof line, "[%9.3g, %9.3g) %9lld %12.4g %12.4g %12.4g %12.4g\n", b.lo, b.hi,
                  static_cast<long long>(b.count), b.mean_abs_theta, b.theta_ratio, b.mean_abs_time_dual,
                  b.time_dual_ratio);
    os << line;
  }
  std::snprintf(line, sizeof line, "ratio spread: theta %.4g, time dual %.4g\n", theta_spread, time_dual_spread);
  os << line;
  return os.str();
}

DegenerationReport space_degeneration_diagnostics(const DiffusionModel& model, double lambda_poisson,
                                                  std::int64_t n_paths, std::uint64_t seed) {
  constexpr int kLowExp = -8, kHighExp = 3;
  DegenerationReport report;
  for (int e = kLowExp; e < kHighExp; ++e) {
    DegenerationBin b;
    b.lo = std::ldexp(1.0, e);
    b.hi = std::ldexp(1.0, e + 1);
    report.bins.push_back(b);
  }
  RngStream rng(seed, 0);
  ChainPath path;
  WeightSet w;
  for (std::int64_t p = 0; p < n_paths; ++p) {
    if (!sample_chain_gaussian(rng, model, lambda_poisson, 60, path)) continue;
    assemble_weights(path, model, lambda_poisson, w);
    for (int i = 1; i <= path.n; ++i) {
      if (!(path.states[i] > model.L())) continue;
      const double d = std::sqrt(path.delta_sq[i - 1]);
      const int e = static_cast<int>(std::floor(std::log2(d)));
      if (e < kLowExp || e >= kHighExp) continue;
      auto& b = report.bins[e - kLowExp];
      ++b.count;
      b.mean_abs_theta += std::abs(w.theta[i - 1]);
      b.mean_abs_time_dual += std::abs(w.i_time_theta[i - 1]);
    }
  }
  double t_lo = std::numeric_limits<double>::infinity(), t_hi = 0.0;
  double d_lo = std::numeric_limits<double>::infinity(), d_hi = 0.0;
  for (auto& b : report.bins) {
    if (b.count == 0) continue;
    b.mean_abs_theta /= static_cast<double>(b.count);
    b.mean_abs_time_dual /= static_cast<double>(b.count);
    const double mid = std::sqrt(b.lo * b.hi);
    b.theta_ratio = b.mean_abs_theta / (1.0 + std::pow(mid, 3));
    b.time_dual_ratio = b.mean_abs_time_dual / (1.0 + std::pow(mid, -2) + std::pow(mid, 5));
    if (b.count >= 100) {
      t_lo = std::min(t_lo, b.theta_ratio);
      t_hi = std::max(t_hi, b.theta_ratio);
      d_lo = std::min(d_lo, b.time_dual_ratio);
      d_hi = std::max(d_hi, b.time_dual_ratio);
    }
  }
  report.theta_spread = t_hi > 0.0 ? t_hi / t_lo : 0.0;
  report.time_dual_spread = d_hi > 0.0 ? d_hi / d_lo : 0.0;
  return report;
}

}  // namespace exit_ibp

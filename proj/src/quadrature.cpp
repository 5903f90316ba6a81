#include "exit_ibp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace exit_ibp {

namespace {

struct Panel {
  double lo, hi, f_lo, f_mid, f_hi, whole;
};

double refine(const std::function<double(double)>& f, const Panel& p, double tol, int depth,
              int max_depth, double& err) {
  const double mid = 0.5 * (p.lo + p.hi);
  const double left_mid = 0.5 * (p.lo + mid);
  const double right_mid = 0.5 * (mid + p.hi);
  const double f_lm = f(left_mid);
  const double f_rm = f(right_mid);
  const double h = (p.hi - p.lo) / 12.0;
  const double left = h * (p.f_lo + 4.0 * f_lm + p.f_mid);
  const double right = h * (p.f_mid + 4.0 * f_rm + p.f_hi);
  const double delta = left + right - p.whole;
  if (std::abs(delta) <= 15.0 * tol) {
    err += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  if (depth >= max_depth) {
    throw QuadratureError("adaptive_simpson: maximum depth reached on [" + std::to_string(p.lo) +
                          ", " + std::to_string(p.hi) + "]");
  }
  return refine(f, {p.lo, mid, p.f_lo, f_lm, p.f_mid, left}, tol / 2.0, depth + 1, max_depth, err) +
         refine(f, {mid, p.hi, p.f_mid, f_rm, p.f_hi, right}, tol / 2.0, depth + 1, max_depth, err);
}

}  // namespace

QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                                  const QuadratureSpec& spec) {
  QuadratureResult result;
  if (hi == lo) return result;
  const int panels = spec.initial_panels > 0 ? spec.initial_panels : 1;
  const double width = (hi - lo) / panels;
  const double tol = spec.abs_tol / panels;
  double f_lo = f(lo);
  for (int k = 0; k < panels; ++k) {
    const double a = lo + k * width;
    const double b = (k + 1 == panels) ? hi : a + width;
    const double m = 0.5 * (a + b);
    const double f_m = f(m);
    const double f_hi = f(b);
    const double whole = (b - a) / 6.0 * (f_lo + 4.0 * f_m + f_hi);
    result.value += refine(f, {a, b, f_lo, f_m, f_hi, whole}, tol, 0, spec.max_depth,
                           result.error_estimate);
    f_lo = f_hi;
  }
  return result;
}

QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double lo,
                                       const QuadratureSpec& spec) {
  // Exp-sinh rule: x = lo + exp(pi/2 sinh t) decays double exponentially at
  // both ends, so algebraic tails and endpoint singularities both converge.
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  constexpr double kTMax = 4.5;  // x spans lo + [2e-31, 5e30]
  constexpr int kMaxLevels = 14;
  auto term = [&](double t) {
    const double e = std::exp(kHalfPi * std::sinh(t));
    const double v = f(lo + e) * e * kHalfPi * std::cosh(t);
    if (!std::isfinite(v)) {
      throw QuadratureError("integrate_to_infinity: non-finite integrand at x = " + std::to_string(lo + e));
    }
    return v;
  };
  double h = 0.5;
  double sum = term(0.0);
  for (double t = h; t <= kTMax; t += h) sum += term(t) + term(-t);
  QuadratureResult result{h * sum, 0.0};
  for (int level = 1; level <= kMaxLevels; ++level) {
    h /= 2.0;
    for (double t = h; t <= kTMax; t += 2.0 * h) sum += term(t) + term(-t);
    const double next = h * sum;
    result.error_estimate = std::abs(next - result.value);
    result.value = next;
    if (level >= 3 && result.error_estimate <= std::max(spec.abs_tol, 1e-15 * std::abs(next))) return result;
  }
  throw QuadratureError("integrate_to_infinity: no convergence (last change " +
                        std::to_string(result.error_estimate) + ")");
}

GaussHermiteRule gauss_hermite_rule(int n) {
  // Newton iteration on orthonormal physicists' Hermite polynomials, then
  // rescaled from weight exp(-x^2) to the standard normal density.
  GaussHermiteRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const double pim4 = std::pow(std::numbers::pi, -0.25);
  std::vector<double> x(n), w(n);
  double z = 0.0;
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * x[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * x[1];
    } else {
      z = 2.0 * z - x[i - 2];
    }
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    x[i] = z;
    x[n - 1 - i] = -z;
    w[i] = w[n - 1 - i] = 2.0 / (pp * pp);
  }
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = std::numbers::sqrt2 * x[i];
    rule.weights[i] = w[i] / std::sqrt(std::numbers::pi);
  }
  return rule;
}

}  // namespace exit_ibp

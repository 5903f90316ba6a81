#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace exit_ibp {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  int max_depth = 40;
  /// The interval is first cut into this many equal panels, each refined
  /// adaptively with tolerance abs_tol / initial_panels.
  int initial_panels = 16;
};

class QuadratureError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Adaptive Simpson with Richardson correction. Throws QuadratureError if a
/// panel cannot meet its tolerance within max_depth bisections.
QuadratureResult adaptive_simpson(const std::function<double(double)>& f, double lo, double hi,
                                  const QuadratureSpec& spec = {});

/// Integral over [lo, infinity) by the exp-sinh rule, refined until two levels
/// agree to abs_tol. Throws QuadratureError on a non-finite integrand value.
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double lo,
                                       const QuadratureSpec& spec = {});

/// Gauss-Hermite rule for the standard normal weight: sum_i w_i h(x_i)
/// approximates E[h(N(0,1))], exact for polynomials of degree < 2n.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussHermiteRule gauss_hermite_rule(int n);

}  // namespace exit_ibp

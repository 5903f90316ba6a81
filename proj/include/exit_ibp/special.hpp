#pragma once

namespace exit_ibp {

/// Standard normal cumulative distribution function.
double normal_cdf(double x);

/// Density of N(0, variance) at x.
double gaussian_density(double variance, double x);

/// Modified Bessel function of the second kind K_nu(z) for half-integer
/// orders nu = k + 1/2 (k = 0, 1, 2, ...), by the terminating series
///   K_nu(z) = K_{1/2}(z) * sum_{j=0}^{k} (k + j)! / (j! (k - j)!) (2z)^{-j},
///   K_{1/2}(z) = sqrt(pi / (2z)) e^{-z}.
/// Negative half-integer orders use K_{-nu} = K_nu.
/// Throws std::domain_error if z <= 0 or nu is not a half-integer.
double bessel_k_half(double nu, double z);

/// H_ell(t, x) = g(t, x)^{-1} d^ell/dx^ell g(t, x) with g the N(0, t) density,
/// for 0 <= ell <= 4. Throws std::domain_error outside that range or if t <= 0.
double hermite_h(int ell, double t, double x);

}  // namespace exit_ibp

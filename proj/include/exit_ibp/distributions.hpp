#pragma once

#include "exit_ibp/rng.hpp"

namespace exit_ibp {

/// Parameters of the generalized inverse Gaussian law GIG(a, b, p), density
///   (a/b)^{p/2} / (2 K_p(sqrt(ab))) x^{p-1} exp(-(a x + b / x) / 2),  x > 0.
/// Only half-integer p is supported (the Bessel normalisation is closed form
/// there); sampling is implemented for p = 1/2.
struct GigParams {
  double a = 1.0;
  double b = 1.0;
  double p = 0.5;
};

/// Throws std::invalid_argument unless a > 0, b > 0 and p is a half-integer.
void validate(const GigParams& params);

double normal_sample(RngStream& rng, double mean, double variance);
double standard_normal(RngStream& rng);
double exponential_sample(RngStream& rng, double rate);

/// sign * Exp(rate sqrt(2 lambda)) with an independent fair sign, i.e. density
/// (sqrt(2 lambda) / 2) exp(-sqrt(2 lambda) |y|).
double symmetric_exponential_sample(RngStream& rng, double lambda_poisson);
double symmetric_exponential_density(double lambda_poisson, double y);

/// First passage time of a standard Brownian motion to distance c: c^2 / G^2.
double levy_sample(RngStream& rng, double c);
/// c / sqrt(2 pi s^3) exp(-c^2 / (2 s)).
double levy_density(double c, double s);
/// P(tau <= t) = erfc(c / sqrt(2 t)).
double levy_cdf(double c, double t);

/// Inverse Gaussian with given mean and shape, by the Michael-Schucany-Haas
/// transformation (one normal and one uniform, no rejection).
double inverse_gaussian_sample(RngStream& rng, double mean, double shape);

/// GIG(a, b, 1/2) as the reciprocal of InverseGaussian(mean sqrt(a/b), shape a).
double gig_sample(RngStream& rng, const GigParams& params);
double gig_density(const GigParams& params, double x);
/// E[X^k] = (b/a)^{k/2} K_{p+k}(sqrt(ab)) / K_p(sqrt(ab)), for any integer k.
double gig_moment(const GigParams& params, int k);
/// E[X^{-k}], k >= 1.
double gig_inverse_moment(const GigParams& params, int k);

}  // namespace exit_ibp

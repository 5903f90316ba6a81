#include "exit_ibp/distributions.hpp"

#include <boost/random/normal_distribution.hpp>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "exit_ibp/special.hpp"

namespace exit_ibp {

void validate(const GigParams& params) {
  if (!(params.a > 0.0) || !(params.b > 0.0)) {
    throw std::invalid_argument("GIG parameters a and b must be positive");
  }
  const double k = std::abs(params.p) - 0.5;
  if (k < -1e-12 || std::abs(k - std::round(k)) > 1e-12) {
    throw std::invalid_argument("GIG order p must be a half-integer");
  }
}

double standard_normal(RngStream& rng) {
  // Ziggurat; stateless, so a stream reproduces the same draws regardless of
  // how calls interleave with other samplers.
  return boost::random::normal_distribution<double>(0.0, 1.0)(rng);
}

double normal_sample(RngStream& rng, double mean, double variance) {
  return mean + std::sqrt(variance) * standard_normal(rng);
}

double exponential_sample(RngStream& rng, double rate) { return -std::log(rng.uniform()) / rate; }

double symmetric_exponential_sample(RngStream& rng, double lambda_poisson) {
  const double magnitude = exponential_sample(rng, std::sqrt(2.0 * lambda_poisson));
  return rng.bit() ? magnitude : -magnitude;
}

double symmetric_exponential_density(double lambda_poisson, double y) {
  const double rate = std::sqrt(2.0 * lambda_poisson);
  return 0.5 * rate * std::exp(-rate * std::abs(y));
}

double levy_sample(RngStream& rng, double c) {
  const double g = standard_normal(rng);
  return (c * c) / (g * g);
}

double levy_density(double c, double s) {
  if (!(s > 0.0)) return 0.0;
  return c / std::sqrt(2.0 * std::numbers::pi * s * s * s) * std::exp(-c * c / (2.0 * s));
}

double levy_cdf(double c, double t) {
  if (!(t > 0.0)) return 0.0;
  return std::erfc(c / std::sqrt(2.0 * t));
}

double inverse_gaussian_sample(RngStream& rng, double mean, double shape) {
  const double nu = standard_normal(rng);
  const double y = nu * nu;
  const double r = mean * y / (2.0 * shape);
  // Smaller root mean * (1 + r - sqrt(r^2 + 2r)), rationalised.
  const double x = mean / (1.0 + r + std::sqrt(r * r + 2.0 * r));
  const double u = rng.uniform();
  return (u <= mean / (mean + x)) ? x : mean * mean / x;
}

double gig_sample(RngStream& rng, const GigParams& params) {
  if (params.p != 0.5) throw std::invalid_argument("gig_sample supports p = 1/2 only");
  // X^{-1} ~ GIG(b, a, -1/2) = InverseGaussian(mean sqrt(a/b), shape a).
  return 1.0 / inverse_gaussian_sample(rng, std::sqrt(params.a / params.b), params.a);
}

double gig_density(const GigParams& params, double x) {
  if (!(x > 0.0)) return 0.0;
  const double omega = std::sqrt(params.a * params.b);
  const double norm = std::pow(params.a / params.b, params.p / 2.0) / (2.0 * bessel_k_half(params.p, omega));
  return norm * std::pow(x, params.p - 1.0) * std::exp(-(params.a * x + params.b / x) / 2.0);
}

double gig_moment(const GigParams& params, int k) {
  const double omega = std::sqrt(params.a * params.b);
  return std::pow(params.b / params.a, k / 2.0) * bessel_k_half(params.p + k, omega) /
         bessel_k_half(params.p, omega);
}

double gig_inverse_moment(const GigParams& params, int k) {
  if (k < 1) throw std::invalid_argument("gig_inverse_moment: k must be >= 1");
  return gig_moment(params, -k);
}

}  // namespace exit_ibp

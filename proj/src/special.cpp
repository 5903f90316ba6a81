#include "exit_ibp/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace exit_ibp {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double gaussian_density(double variance, double x) {
  return std::exp(-0.5 * x * x / variance) / std::sqrt(2.0 * std::numbers::pi * variance);
}

double bessel_k_half(double nu, double z) {
  if (!(z > 0.0)) throw std::domain_error("bessel_k_half: z must be positive");
  const double order = std::abs(nu);
  const double k_real = order - 0.5;
  const long k = std::lround(k_real);
  if (k < 0 || std::abs(k_real - static_cast<double>(k)) > 1e-12) {
    throw std::domain_error("bessel_k_half: order must be a half-integer");
  }
  // term_j = (k+j)! / (j! (k-j)!) (2z)^{-j}; ratio term_{j+1}/term_j =
  // (k+j+1)(k-j) / ((j+1) 2z).
  double term = 1.0;
  double sum = 1.0;
  for (long j = 0; j < k; ++j) {
    term *= static_cast<double>((k + j + 1) * (k - j)) / (static_cast<double>(j + 1) * 2.0 * z);
    sum += term;
  }
  return std::sqrt(std::numbers::pi / (2.0 * z)) * std::exp(-z) * sum;
}

double hermite_h(int ell, double t, double x) {
  if (!(t > 0.0)) throw std::domain_error("hermite_h: t must be positive");
  const double u = x / t;
  switch (ell) {
    case 0:
      return 1.0;
    case 1:
      return -u;
    case 2:
      return u * u - 1.0 / t;
    case 3:
      return -u * u * u + 3.0 * u / t;
    case 4:
      return u * u * u * u - 6.0 * u * u / t + 3.0 / (t * t);
    default:
      throw std::domain_error("hermite_h: order must be in [0, 4]");
  }
}

}  // namespace exit_ibp

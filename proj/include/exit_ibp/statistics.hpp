#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace exit_ibp {

/// Streaming moments (Welford/Pebay) with exact pairwise merge.
struct McStatistics {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  double min = 0.0;
  double max = 0.0;
  std::int64_t abort_count = 0;

  void add(double x);
  void merge(const McStatistics& other);

  double variance() const;  ///< unbiased sample variance
  double stderr_of_mean() const;
  /// Excess kurtosis n m4 / m2^2 - 3; 0 with fewer than two distinct values.
  double excess_kurtosis() const;
  double ci99_lo() const;
  double ci99_hi() const;
};

inline constexpr double kZ99 = 2.5758293035489004;  ///< two-sided 99% normal quantile

/// Median of the block means when the accumulators are split into `blocks`
/// contiguous groups (by position). Throws std::invalid_argument if blocks is
/// not in [1, parts.size()].
double median_of_means(std::span<const McStatistics> parts, int blocks);

/// Kolmogorov-Smirnov statistics.
double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);
double ks_two_sample_statistic(std::vector<double> a, std::vector<double> b);
/// Asymptotic critical values c(alpha) / sqrt(n) and c(alpha) sqrt((n+m)/(nm)),
/// c(alpha) = sqrt(-ln(alpha / 2) / 2).
double ks_critical_value(double alpha, std::size_t n);
double ks_two_sample_critical_value(double alpha, std::size_t n, std::size_t m);

}  // namespace exit_ibp

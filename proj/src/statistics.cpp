#include "exit_ibp/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace exit_ibp {

void McStatistics::add(double x) {
  if (count == 0) {
    min = max = x;
  } else {
    min = std::min(min, x);
    max = std::max(max, x);
  }
  const double n1 = static_cast<double>(count);
  ++count;
  const double n = static_cast<double>(count);
  const double delta = x - mean;
  const double delta_n = delta / n;
  const double delta_n2 = delta_n * delta_n;
  const double term1 = delta * delta_n * n1;
  mean += delta_n;
  m4 += term1 * delta_n2 * (n * n - 3.0 * n + 3.0) + 6.0 * delta_n2 * m2 - 4.0 * delta_n * m3;
  m3 += term1 * delta_n * (n - 2.0) - 3.0 * delta_n * m2;
  m2 += term1;
}

void McStatistics::merge(const McStatistics& other) {
  abort_count += other.abort_count;
  if (other.count == 0) return;
  if (count == 0) {
    const auto aborts = abort_count;
    *this = other;
    abort_count = aborts;
    return;
  }
  const double na = static_cast<double>(count);
  const double nb = static_cast<double>(other.count);
  const double n = na + nb;
  const double delta = other.mean - mean;
  const double d2 = delta * delta;
  const double new_m4 = m4 + other.m4 + d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
                        6.0 * d2 * (na * na * other.m2 + nb * nb * m2) / (n * n) +
                        4.0 * delta * (na * other.m3 - nb * m3) / n;
  const double new_m3 = m3 + other.m3 + d2 * delta * na * nb * (na - nb) / (n * n) +
                        3.0 * delta * (na * other.m2 - nb * m2) / n;
  m2 = m2 + other.m2 + d2 * na * nb / n;
  m3 = new_m3;
  m4 = new_m4;
  mean += delta * nb / n;
  count += other.count;
  min = std::min(min, other.min);
  max = std::max(max, other.max);
}

double McStatistics::variance() const { return count > 1 ? m2 / static_cast<double>(count - 1) : 0.0; }

double McStatistics::stderr_of_mean() const {
  return count > 1 ? std::sqrt(m2 / (static_cast<double>(count) * static_cast<double>(count - 1))) : 0.0;
}

double McStatistics::excess_kurtosis() const {
  if (count < 2 || m2 <= 0.0) return 0.0;
  return static_cast<double>(count) * m4 / (m2 * m2) - 3.0;
}

double McStatistics::ci99_lo() const { return mean - kZ99 * stderr_of_mean(); }
double McStatistics::ci99_hi() const { return mean + kZ99 * stderr_of_mean(); }

double median_of_means(std::span<const McStatistics> parts, int blocks) {
  if (blocks < 1 || static_cast<std::size_t>(blocks) > parts.size()) {
    throw std::invalid_argument("median_of_means: block count must be in [1, number of chunks]");
  }
  std::vector<double> means;
  means.reserve(blocks);
  const std::size_t total = parts.size();
  for (int k = 0; k < blocks; ++k) {
    const std::size_t lo = total * k / blocks;
    const std::size_t hi = total * (k + 1) / blocks;
    McStatistics block;
    for (std::size_t i = lo; i < hi; ++i) block.merge(parts[i]);
    means.push_back(block.mean);
  }
  std::sort(means.begin(), means.end());
  const std::size_t mid = means.size() / 2;
  return means.size() % 2 ? means[mid] : 0.5 * (means[mid - 1] + means[mid]);
}

}  // namespace exit_ibp

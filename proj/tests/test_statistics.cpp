#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "doctest.h"
#include "exit_ibp/rng.hpp"
#include "exit_ibp/statistics.hpp"

using namespace exit_ibp;

namespace {

McStatistics of(const std::vector<double>& x) {
  McStatistics s;
  for (double v : x) s.add(v);
  return s;
}

}  // namespace

TEST_CASE("moments of a small sample") {
  const McStatistics s = of({1.0, 2.0, 3.0, 4.0});
  CHECK(s.count == 4);
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.variance() == doctest::Approx(5.0 / 3.0));
  CHECK(s.stderr_of_mean() == doctest::Approx(std::sqrt(s.m2 / (4.0 * 3.0))));
  CHECK(s.min == 1.0);
  CHECK(s.max == 4.0);
  // n m4 / m2^2 - 3 with m2 = 5, m4 = 2 (1.5^4 + 0.5^4) = 10.25.
  CHECK(s.excess_kurtosis() == doctest::Approx(4.0 * 10.25 / 25.0 - 3.0));
  CHECK(s.ci99_lo() == doctest::Approx(2.5 - kZ99 * s.stderr_of_mean()));
  CHECK(s.ci99_hi() == doctest::Approx(2.5 + kZ99 * s.stderr_of_mean()));
}

TEST_CASE("degenerate samples") {
  CHECK(of({}).variance() == 0.0);
  CHECK(of({3.0}).stderr_of_mean() == 0.0);
  CHECK(of({2.0, 2.0, 2.0}).excess_kurtosis() == 0.0);
}

TEST_CASE("merging any permutation of chunks gives the same moments") {
  RngStream rng(41, 0);
  std::vector<McStatistics> chunks(12);
  McStatistics all;
  for (auto& c : chunks) {
    const int n = 1 + static_cast<int>(rng.uniform() * 500);
    for (int i = 0; i < n; ++i) {
      const double x = std::exp(2.0 * rng.uniform()) - 3.0;
      c.add(x);
      all.add(x);
    }
  }
  std::vector<int> order(chunks.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937 shuffle(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(order.begin(), order.end(), shuffle);
    McStatistics merged;
    for (int i : order) merged.merge(chunks[i]);
    CHECK(merged.count == all.count);
    CHECK(std::abs(merged.mean - all.mean) <= 1e-12 * std::abs(all.mean));
    CHECK(std::abs(merged.variance() - all.variance()) <= 1e-12 * all.variance());
    CHECK(merged.excess_kurtosis() == doctest::Approx(all.excess_kurtosis()).epsilon(1e-10));
    CHECK(merged.min == all.min);
    CHECK(merged.max == all.max);
  }
  // Associativity.
  McStatistics left = chunks[0], right = chunks[1];
  left.merge(chunks[1]);
  left.merge(chunks[2]);
  McStatistics tail = chunks[1];
  tail.merge(chunks[2]);
  right = chunks[0];
  right.merge(tail);
  CHECK(left.mean == doctest::Approx(right.mean).epsilon(1e-12));
  CHECK(left.m2 == doctest::Approx(right.m2).epsilon(1e-12));
}

TEST_CASE("merging with an empty accumulator") {
  McStatistics a = of({1.0, 5.0}), empty;
  a.merge(empty);
  CHECK(a.count == 2);
  empty.merge(a);
  CHECK(empty.mean == 3.0);
  CHECK(empty.min == 1.0);
}

TEST_CASE("abort counts add up") {
  McStatistics a, b;
  a.abort_count = 2;
  b.abort_count = 3;
  a.merge(b);
  CHECK(a.abort_count == 5);
}

TEST_CASE("median of means") {
  std::vector<McStatistics> parts = {of({1.0}), of({2.0}), of({100.0}), of({3.0}), of({4.0}), of({5.0})};
  CHECK(median_of_means(parts, 1) == doctest::Approx(115.0 / 6.0));
  CHECK(median_of_means(parts, 3) == doctest::Approx(4.5));
  CHECK(median_of_means(parts, 6) == doctest::Approx(3.5));
  CHECK_THROWS_AS(median_of_means(parts, 0), std::invalid_argument);
  CHECK_THROWS_AS(median_of_means(parts, 7), std::invalid_argument);
}

TEST_CASE("Kolmogorov-Smirnov statistics") {
  CHECK(std::sqrt(-std::log(0.005) / 2.0) == doctest::Approx(1.6276).epsilon(1e-4));
  CHECK(ks_critical_value(0.01, 10000) == doctest::Approx(0.016276).epsilon(1e-4));
  const double d = ks_statistic({0.1, 0.4, 0.7}, [](double x) { return x; });
  CHECK(d == doctest::Approx(0.3));
  CHECK(ks_two_sample_statistic({1, 2, 3}, {1, 2, 3}) == 0.0);
  CHECK(ks_two_sample_statistic({0, 0, 1, 1}, {0, 1, 1, 1}) == doctest::Approx(0.25));
  CHECK(ks_two_sample_statistic({1, 2}, {3, 4}) == doctest::Approx(1.0));
  CHECK(ks_two_sample_critical_value(0.01, 100, 100) == doctest::Approx(1.6276 * std::sqrt(0.02)).epsilon(1e-4));
}

#include <random>
#include <set>

#include "doctest.h"
#include "exit_ibp/rng.hpp"

using exit_ibp::RngStream;

static_assert(std::uniform_random_bit_generator<RngStream>);

TEST_CASE("philox known answer") {
  RngStream rng(0, 0);
  CHECK(rng() == 0xe169c58d6627e8d5ULL);
}

TEST_CASE("streams are reproducible from (seed, stream id)") {
  RngStream a(42, 7), b(42, 7);
  for (int i = 0; i < 1000; ++i) REQUIRE(a() == b());
  CHECK(a.position() == 1000);
}

TEST_CASE("different seeds or stream ids give different sequences") {
  std::set<std::uint64_t> first;
  for (std::uint64_t s = 0; s < 4; ++s) {
    for (std::uint64_t id = 0; id < 4; ++id) first.insert(RngStream(s, id)());
  }
  CHECK(first.size() == 16);
}

TEST_CASE("uniform stays in the open unit interval") {
  RngStream rng(3, 1);
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.005));
}

TEST_CASE("bit is a fair coin") {
  RngStream rng(5, 2);
  int ones = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) ones += rng.bit();
  CHECK(std::abs(ones - n / 2) < 5 * 158);
}

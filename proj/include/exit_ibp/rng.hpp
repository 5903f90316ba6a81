#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace exit_ibp {

/// Counter-based random stream (Philox4x32-10).
///
/// The 64-bit seed is the Philox key; the 128-bit counter is split into a
/// 64-bit stream id (high half) and a 64-bit position (low half). Streams with
/// different (seed, stream_id) therefore never share a counter block, and a
/// stream is reproduced bit-exactly from its pair alone.
///
/// Satisfies UniformRandomBitGenerator so it can drive <random>/Boost
/// distributions directly.
class RngStream {
public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept;

  /// Fair coin; returns 0 or 1.
  int bit() noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }
  /// Number of 64-bit words drawn so far.
  std::uint64_t position() const noexcept { return drawn_; }

private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  unsigned next_ = 2;
  std::uint64_t drawn_ = 0;
};

}  // namespace exit_ibp

#pragma once

#include <cstdint>

namespace hilbert {

/// SplitMix64 (Steele, Lea & Flood): a Weyl counter advanced by
/// 0x9E3779B97F4A7C15 and passed through a fixed 64-bit mixer. The whole
/// algorithm is the six lines below, so any language can reproduce a stream
/// bit-for-bit from its seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  /// Independent stream `index` of `seed`: the state starts at the first
  /// output of SplitMix64(seed ^ (index+1)*0x632BE59BD9B4E019).
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) noexcept {
    SplitMix64 g(seed ^ ((index + 1) * 0x632BE59BD9B4E019ULL));
    return SplitMix64(g.next());
  }

  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform on (0, 1]: (top 53 bits + 1) * 2^-53.
  double uniform_open_zero() noexcept {
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n), n > 0, by 128-bit multiply-shift.
  std::uint64_t below(std::uint64_t n) noexcept {
    __extension__ using u128 = unsigned __int128;
    return static_cast<std::uint64_t>((static_cast<u128>(next()) * n) >> 64);
  }

  bool bernoulli(double prob) noexcept { return uniform_open_zero() <= prob; }

 private:
  std::uint64_t state_;
};

}  // namespace hilbert

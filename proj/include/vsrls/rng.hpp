#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>

namespace vsrls {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014). Used to expand seeds and to
/// mix hashes into run seeds.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t value) noexcept {
  return splitmix64(value);
}

/// Deterministic random stream: xoshiro256** 1.0 (Blackman & Vigna), state
/// seeded by four successive SplitMix64 outputs of the 64-bit seed.
///
/// Every derived draw (bounded integers, reals, shuffles) is implemented here
/// rather than through <random> distributions, whose algorithms are
/// implementation-defined. The same seed produces the same sequence on every
/// platform.
class RngStream {
public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed) noexcept;

  [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next() noexcept;
  result_type operator()() noexcept { return next(); }
  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  /// Uniform on [0, bound). Lemire's multiply-shift with rejection, so it is
  /// exactly unbiased. bound must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

  /// Uniform on [lo, hi], inclusive.
  std::int64_t between(std::int64_t lo, std::int64_t hi) noexcept;

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() noexcept;

  /// Unbiased Fisher-Yates, last index downwards.
  template <typename T>
  void shuffle(std::span<T> items) noexcept {
    for (std::size_t i = items.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  friend bool operator==(const RngStream&, const RngStream&) = default;

private:
  std::array<std::uint64_t, 4> state_{};
  std::uint64_t seed_{};
};

} // namespace vsrls

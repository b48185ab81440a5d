#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <limits>
#include <random>

namespace beable {

/// Master seed plus stream index. Experiments give every row its own stream.
struct SeedSpec {
  std::uint64_t master = 0;
  std::uint64_t stream = 0;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// One step of the SplitMix64 sequence. Used for key derivation and seeding.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Stateless 64-bit mixer (SplitMix64 finalizer).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  std::uint64_t s = x;
  return splitmix64(s);
}

/**
 * Counter-based generator: the draws for sample `index` depend only on
 * (seed, index), never on which worker or chunk produced the sample.
 *
 * The core is xoshiro256++, keyed by hashing the triple
 * (master, stream, index) through SplitMix64.
 */
class SampleRng {
 public:
  using result_type = std::uint64_t;

  SampleRng(SeedSpec seed, std::uint64_t index) noexcept {
    std::uint64_t key = mix64(seed.master ^ mix64(seed.stream + 0x632be59bd9b4e019ULL));
    std::uint64_t sm = key ^ mix64(index ^ 0xd1b54a32d192ed03ULL);
    for (auto& word : s_) word = splitmix64(sm);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t result = std::rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() noexcept { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform on [a, b).
  double uniform(double a, double b) noexcept { return a + (b - a) * uniform01(); }

  /// Standard normal variate.
  double normal() { return normal_(*this); }

 private:
  std::array<std::uint64_t, 4> s_{};
  std::normal_distribution<double> normal_;
};

}  // namespace beable

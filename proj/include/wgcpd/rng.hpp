#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace wgcpd {

// Splittable counter-style RNG used everywhere randomness is needed.
//
// Stream derivation: a stream is identified by a master seed plus a list of
// 64-bit tags (purpose tag, replicate index, ...).  Each tag is folded in
// with the SplitMix64 finalizer, and the resulting value seeds the xoshiro
// state via four further SplitMix64 steps.  Two streams with different tag
// lists are independent for all practical purposes, and the mapping does not
// depend on thread scheduling, so parallel replicates are reproducible.

inline std::uint64_t splitmix64_step(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t s = seed ^ (0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
  s += tag;
  return splitmix64_step(s);
}

// xoshiro256++ (Blackman & Vigna), public-domain reference algorithm.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_step(sm);
  }

  static RngStream derive(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> tags) {
    std::uint64_t s = seed;
    for (std::uint64_t tag : tags) s = mix_seed(s, tag);
    return RngStream(s);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on (0, 1]; never returns 0 so logs are safe.
  double uniform01() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Standard normal via the Box-Muller pair; the second value is cached.
  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 6.283185307179586476925286766559 * u2;
    cached_ = radius * std::sin(angle);
    have_cached_ = true;
    return radius * std::cos(angle);
  }

  // Poisson by sequential inversion; intended for lambda <= 30.
  int poisson(double lambda) {
    const double target = uniform01();
    double p = std::exp(-lambda);
    double cumulative = p;
    int k = 0;
    while (cumulative < target && k < 1000) {
      ++k;
      p *= lambda / k;
      cumulative += p;
    }
    return k;
  }

  // Fisher-Yates shuffle of 0..n-1.
  std::vector<int> permutation(int n) {
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (int i = n - 1; i > 0; --i) {
      const int j = static_cast<int>(next_u64() % static_cast<std::uint64_t>(i + 1));
      std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
    return idx;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4] = {};
  double cached_ = 0.0;
  bool have_cached_ = false;
};

// Purpose tags for stream derivation (documented constants so reruns of the
// same build are bit-identical).
namespace rng_tag {
inline constexpr std::uint64_t kGenerate = 0x67656e6572617465ULL;    // "generate"
inline constexpr std::uint64_t kNullS1 = 0x6e756c6c5f733120ULL;      // "null_s1 "
inline constexpr std::uint64_t kNullS2 = 0x6e756c6c5f733220ULL;      // "null_s2 "
inline constexpr std::uint64_t kPermutation = 0x7065726d75746174ULL; // "permutat"
inline constexpr std::uint64_t kPValue = 0x7076616c75652020ULL;      // "pvalue  "
inline constexpr std::uint64_t kSegment = 0x7365676d656e7420ULL;     // "segment "
}  // namespace rng_tag

}  // namespace wgcpd

#pragma once

#include <cmath>
#include <cstdint>
#include <string_view>
#include <vector>

namespace canids {

// All randomness in the library flows through explicit 64-bit seeds and the
// generator below. Nothing uses std::random_device or the C library RNG, and
// no <random> distributions are involved, so equal seeds give bit-identical
// streams on every platform and standard library.

inline constexpr std::uint64_t kSplitMixGamma = 0x9e3779b97f4a7c15ull;

// One SplitMix64 output; advances the state.
constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  state += kSplitMixGamma;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Stateless mix of two words, for seed derivation chains.
constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) noexcept {
  std::uint64_t s = a ^ (b + kSplitMixGamma + (a << 6) + (a >> 2));
  return splitmix64(s);
}

// FNV-1a over a string tag, so stage names can enter seed derivations.
constexpr std::uint64_t fnv1a64(std::string_view text) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : text) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

// Stable seed derivation: master seed -> per-stage / per-index seeds.
// Documented contract: derive_seed(m, tag, a, b) == mix chain below, forever.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                    std::uint64_t a = 0,
                                    std::uint64_t b = 0) noexcept {
  return mix64(mix64(mix64(master, fnv1a64(tag)), a), b);
}

// Counter-based noise word: a pure function of (seed, i, j), independent of
// call order. Attack noise is drawn this way so results do not depend on how
// a dataset is batched.
constexpr std::uint64_t noise_u64(std::uint64_t seed, std::uint64_t i,
                                  std::uint64_t j) noexcept {
  return mix64(mix64(seed, i), j);
}

// Maps a 64-bit word to [0,1) using the top 53 bits.
constexpr double u64_to_unit(std::uint64_t w) noexcept {
  return static_cast<double>(w >> 11) * 0x1.0p-53;
}

// Sequential deterministic generator (SplitMix64 stream).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64(state_); }

  // [0,1)
  double next_unit() { return u64_to_unit(next_u64()); }

  // [lo,hi)
  double uniform(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  // Unbiased integer in [0,n), n >= 1. Rejection sampling on the top range.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t w = next_u64();
    while (w >= limit) w = next_u64();
    return w % n;
  }

  // Standard normal via Box-Muller (uses exactly two uniforms per pair;
  // caches the second value).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_unit();
    while (u1 <= 0.0) u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double two_pi_u2 = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(two_pi_u2);
    have_spare_ = true;
    return r * std::cos(two_pi_u2);
  }

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // k distinct indices sampled uniformly from [0,n) without replacement,
  // returned in draw order (partial Fisher-Yates).
  std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                      std::size_t k) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::size_t> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k && i < n; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(below(n - i));
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return out;
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace canids

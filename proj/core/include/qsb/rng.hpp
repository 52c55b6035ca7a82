#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace qsb {

/// splitmix64 finalizer. Used for seed mixing and stream derivation.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

/// Deterministic random stream. Wraps std::mt19937_64 (whose output sequence
/// is fixed by the standard) and adds unbiased bounded draws so that results
/// do not depend on the standard library's unspecified distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(mix64(seed)) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform in [0, bound). bound must be >= 1. Unbiased (rejection sampling).
  std::uint64_t uniform_u64(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = gen_();
      if (x >= threshold) return x % bound;
    }
  }

  /// Uniform in [0, 1) with 53 bits of precision.
  double uniform_double() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (deterministic; avoids the library's
  /// unspecified normal_distribution).
  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform_double();
    while (u1 <= 0.0) u1 = uniform_double();
    const double u2 = uniform_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

/// Seed for trial `trial` of experiment `tag` at parameters (n, b), derived
/// from the root seed. Streams are independent of trial ordering, so adding
/// trials never perturbs earlier ones.
inline std::uint64_t derive_stream_seed(std::uint64_t root_seed,
                                        std::string_view tag, std::uint64_t n,
                                        std::uint64_t b, std::uint64_t trial) {
  std::uint64_t h = mix64(root_seed ^ fnv1a64(tag));
  h = mix64(h ^ n);
  h = mix64(h ^ b);
  h = mix64(h ^ trial);
  return h;
}

}  // namespace qsb

#pragma once

#include <cstdint>
#include <limits>
#include <string_view>
#include <vector>

namespace seatalloc {

using CandidateId = std::uint32_t;
using CourseId = std::uint32_t;
using ListId = std::uint32_t;
using CategoryId = std::uint32_t;
using PoolId = std::uint32_t;

// Shared "absent" sentinel for ids and preference ranks. Ranks are 1-based;
// kNone compares as worse than any real rank (unassigned).
inline constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// Deterministic RNG: splitmix64-seeded xoshiro256**. All randomness in the
// project flows through this so identical seeds give identical bytes on any
// platform (std::uniform_int_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();

  // Uniform in [0, n). n == 0 returns 0.
  std::uint64_t below(std::uint64_t n);

  // Uniform in [lo, hi] inclusive.
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi);

  // Uniform in [0, 1).
  double unit();

  bool chance(double p) { return unit() < p; }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t s_[4];
};

// FNV-1a 64-bit, used by the determinism harness to fingerprint outputs.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ull);

}  // namespace seatalloc

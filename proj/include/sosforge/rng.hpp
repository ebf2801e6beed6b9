#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace sosforge {

/// Seeded stream with platform-independent derived draws
/// (the standard distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform in [0, n), n > 0, by rejection.
  std::uint64_t uniform_below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
    for (;;) {
      std::uint64_t r = eng_();
      if (r < limit) return r % n;
    }
  }

  bool bit() { return (eng_() >> 63) != 0; }

  /// Uniform k-subset of {1..m}, sorted.
  std::vector<int> subset(int m, int k) {
    std::vector<int> pool(m);
    for (int i = 0; i < m; ++i) pool[i] = i + 1;
    for (int i = 0; i < k; ++i) {
      auto j = i + static_cast<int>(uniform_below(static_cast<std::uint64_t>(m - i)));
      std::swap(pool[i], pool[j]);
    }
    std::vector<int> out(pool.begin(), pool.begin() + k);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace sosforge

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

namespace migmap::rng {

// Small deterministic generator (splitmix64). Used instead of <random> engines
// wherever reproducibility across standard library implementations matters.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform index in [0, bound); bound must be positive.
  std::size_t next_index(std::size_t bound) { return static_cast<std::size_t>(next() % bound); }

 private:
  std::uint64_t state_;
};

/// Fisher-Yates shuffle driven by SplitMix64; identical output on every platform.
template <typename T>
void shuffle(std::vector<T>& items, SplitMix64& gen) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::size_t j = gen.next_index(i);
    using std::swap;
    swap(items[i - 1], items[j]);
  }
}

}  // namespace migmap::rng

#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "lomse/params.hpp"

namespace lomse::test {

// Every triple that appears in the summary sweep.
inline const std::vector<std::array<int, 3>> kSweep{{3, 2, 2}, {3, 2, 4}, {3, 2, 6}, {5, 4, 2},
                                                    {5, 4, 4}, {5, 4, 6}, {7, 4, 2}, {15, 8, 2}};

/// Seeded generator of admissible (n,p,k): a family, its index l and an even degree.
class TripleGenerator {
 public:
  explicit TripleGenerator(std::uint64_t seed) : rng_(seed) {}

  std::array<int, 3> next(int max_l = 6, int max_k = 40) {
    std::uniform_int_distribution<int> fam(0, 2), ll(1, max_l), kk(1, max_k / 2);
    const int k = 2 * kk(rng_);
    switch (fam(rng_)) {
      case 0: {
        const int l = ll(rng_);
        return {2 * l + 1, 2 * l, k};
      }
      case 1: {
        const int l = ll(rng_);
        return {4 * l + 3, 4 * l, k};
      }
      default: return {15, 8, k};
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace lomse::test

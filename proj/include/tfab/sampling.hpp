#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "tfab/group_element.hpp"

namespace tfab {

// Seeded generators for property checks. Only the engine is taken from the
// standard library; the distributions are written out so that a seed gives
// the same stream on every platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n);                    // [0, n), n >= 1
  std::int64_t between(std::int64_t lo, std::int64_t hi);  // [lo, hi]
  bool coin() { return below(2) == 1; }

  // Any integer in [-bound, bound].
  BigInt integer(std::int64_t bound);
  // Reduced n/d with |n| <= max_num, 1 <= d <= max_den.
  Rational rational(std::int64_t max_num, std::int64_t max_den);
  // Nonzero variants.
  BigInt nonzero_integer(std::int64_t bound);
  Rational nonzero_rational(std::int64_t max_num, std::int64_t max_den);

  // Support drawn inside [1, max_index], between 1 and max_index entries.
  QVec rational_vector(Index max_index, std::int64_t max_num, std::int64_t max_den);
  ZVec integer_vector(Index max_index, std::int64_t bound);

  // (x0, x) in Z x Z^(N) with support <= max_index.
  GroupElement integer_element(Index max_index, std::int64_t bound);

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[below(v.size())];
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace tfab

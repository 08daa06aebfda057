#include "tfab/sampling.hpp"

namespace tfab {

std::uint64_t Sampler::below(std::uint64_t n) {
  // rejection keeps the result unbiased
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng_();
  } while (x >= limit);
  return x % n;
}

std::int64_t Sampler::between(std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

BigInt Sampler::integer(std::int64_t bound) { return BigInt(static_cast<long>(between(-bound, bound))); }

BigInt Sampler::nonzero_integer(std::int64_t bound) {
  std::int64_t v = between(1, bound);
  return BigInt(static_cast<long>(coin() ? v : -v));
}

Rational Sampler::rational(std::int64_t max_num, std::int64_t max_den) {
  return Rational(integer(max_num), BigInt(static_cast<long>(between(1, max_den))));
}

Rational Sampler::nonzero_rational(std::int64_t max_num, std::int64_t max_den) {
  return Rational(nonzero_integer(max_num), BigInt(static_cast<long>(between(1, max_den))));
}

QVec Sampler::rational_vector(Index max_index, std::int64_t max_num, std::int64_t max_den) {
  QVec v;
  const std::uint64_t entries = 1 + below(max_index);
  for (std::uint64_t t = 0; t < entries; ++t) v.set(1 + below(max_index), nonzero_rational(max_num, max_den));
  return v;
}

ZVec Sampler::integer_vector(Index max_index, std::int64_t bound) {
  ZVec v;
  const std::uint64_t entries = 1 + below(max_index);
  for (std::uint64_t t = 0; t < entries; ++t) v.set(1 + below(max_index), nonzero_integer(bound));
  return v;
}

GroupElement Sampler::integer_element(Index max_index, std::int64_t bound) {
  return GroupElement{Rational(integer(bound)), to_rational(integer_vector(max_index, bound))};
}

}  // namespace tfab

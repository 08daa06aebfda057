#pragma once

#include <cstdint>
#include <vector>

#include "tfab/rational.hpp"

namespace tfab {

// Deterministic trial division; exact for every 64-bit input.
bool is_prime(std::uint64_t n);

// 1-based: nth_prime(1) == 2. Backed by a lazily grown sieve bounded by
// limits().prime_cap; beyond it raises capacity_exceeded.
std::uint64_t nth_prime(std::uint64_t n);

// Inverse of nth_prime. p must be prime.
std::uint64_t prime_index(std::uint64_t p);

// Primes p <= bound in increasing order.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Factorization of |n| (n != 0) in increasing prime order. Prime factors above
// limits().prime_cap raise capacity_exceeded.
std::vector<PrimePower> factor(const BigInt& n);

}  // namespace tfab

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tfab/finvec.hpp"

namespace tfab {

// Versioned identity of the frozen enumeration rules. G depends on these
// choices, so every persisted artifact carries the fingerprint.
struct ConventionFingerprint {
  std::string version;
  std::string digest;

  std::string to_string() const { return version + ":" + digest; }
  friend bool operator==(const ConventionFingerprint&, const ConventionFingerprint&) = default;
};

const ConventionFingerprint& fingerprint();
const std::string& convention_rules();

// Anti-diagonal pairing N x N -> N (1-based): pair(i,j) = (i+j-2)(i+j-1)/2 + i.
BigInt pair(const BigInt& i, const BigInt& j);
std::pair<BigInt, BigInt> unpair(const BigInt& n);

// 0-based Cantor pairing used by the sequence code.
BigInt pair0(const BigInt& x, const BigInt& y);
std::pair<BigInt, BigInt> unpair0(const BigInt& n);

// Bijection between nonnegative integers and finite sequences of nonnegative
// integers: s() = 0, s(x::rest) = pair0(x, s(rest)) + 1.
std::vector<BigInt> decode_sequence(BigInt code);
BigInt encode_sequence(const std::vector<BigInt>& seq);

// Rationals ordered by (height, numerator, denominator), height =
// max(|num|, den). 1-based: enum_rat(1) = -1, enum_rat(2) = 0, enum_rat(3) = 1.
Rational enum_rat(const BigInt& n);
BigInt rat_index(const Rational& q);

// Integers in the same order restricted to Z: -1, 0, 1, -2, 2, ... (1-based).
BigInt enum_int(const BigInt& n);
BigInt int_index(const BigInt& z);

// The i-th finitely supported rational vector (1-based, duplicates allowed;
// non-canonical codes decode to the zero vector).
QVec enum_lambda(const BigInt& i);
// Smallest i with enum_lambda(i) == v.
BigInt lambda_index(const QVec& v);

// Same decoding over Z (no skipping): the vector owned by a sequence code, or
// the zero vector for non-canonical codes.
ZVec decode_intvec_code(const BigInt& code);
BigInt intvec_code(const ZVec& v);

// V(i): the i-th nonzero integer vector, skipping codes that decode to zero.
ZVec enum_intvec(std::uint64_t i);
// Inverse of enum_intvec; scanning is bounded by limits().intvec_scan_cap.
std::uint64_t intvec_index(const ZVec& v);

// The vector x with p in P_x: V(first(unpair(prime_index(p)))).
ZVec prime_partition_vector(std::uint64_t p);

// First `count` primes of the piece P_x, increasing.
std::vector<std::uint64_t> partition_members(const ZVec& x, std::uint64_t count);

}  // namespace tfab

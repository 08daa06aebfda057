#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "tfab/rational.hpp"

namespace tfab {

// p-adic valuation: either +infinity (for zero) or a finite integer. The
// infinite case is a distinct state; value() on it throws.
class Valuation {
 public:
  static Valuation infinite() { return Valuation(true, 0); }
  static Valuation finite(long v) { return Valuation(false, v); }

  bool is_infinite() const { return infinite_; }
  long value() const;

  friend bool operator==(const Valuation&, const Valuation&) = default;
  friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }
  // Compare against a finite bound; +infinity exceeds every bound.
  bool at_least(long bound) const { return infinite_ || value_ >= bound; }

  std::string to_string() const;

 private:
  Valuation(bool inf, long v) : infinite_(inf), value_(v) {}
  bool infinite_;
  long value_;
};

Valuation vp(const BigInt& n, std::uint64_t p);
Valuation vp(const Rational& q, std::uint64_t p);

// An element of Z/p^m.
struct Residue {
  BigInt value;    // in [0, modulus)
  BigInt modulus;  // p^m
  std::uint64_t prime = 0;
  unsigned exponent = 0;

  bool is_zero() const { return value == 0; }
  friend bool operator==(const Residue& a, const Residue& b) {
    return a.value == b.value && a.modulus == b.modulus;
  }
};

Residue make_residue(const BigInt& value, std::uint64_t p, unsigned m);

// The residue r mod p^m with vp(q - r) >= m. Requires vp(q, p) >= 0.
Residue reduce_mod(const Rational& q, std::uint64_t p, unsigned m);

Residue operator+(const Residue& a, const Residue& b);
Residue operator*(const Residue& a, const Residue& b);
Residue operator-(const Residue& a);

}  // namespace tfab

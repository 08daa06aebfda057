#pragma once

#include "tfab/finvec.hpp"

namespace tfab {

// A pair (x0, x) in Q x Q^(N). Membership in G is a separate predicate.
struct GroupElement {
  Rational x0;
  QVec x;

  bool is_zero() const { return x0.is_zero() && x.empty(); }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

GroupElement operator+(const GroupElement& a, const GroupElement& b);
GroupElement operator-(const GroupElement& a);
GroupElement operator-(const GroupElement& a, const GroupElement& b);
GroupElement operator*(const BigInt& n, const GroupElement& e);
GroupElement scale(const Rational& c, const GroupElement& e);

// lcm of the denominators of x0 and every component of x.
BigInt common_denominator(const GroupElement& e);

// Largest support index of x (0 when x is zero).
Index max_support(const GroupElement& e);

// Dense row (x0, x1, ..., xk).
std::vector<Rational> to_row(const GroupElement& e, Index k);
GroupElement from_row(const std::vector<Rational>& row);

}  // namespace tfab

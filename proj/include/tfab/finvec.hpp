#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "tfab/errors.hpp"
#include "tfab/padic.hpp"
#include "tfab/rational.hpp"

namespace tfab {

using Index = std::uint64_t;

namespace detail {
inline bool is_zero(const Rational& q) { return q.is_zero(); }
inline bool is_zero(const BigInt& n) { return n == 0; }
inline bool is_zero(const Residue& r) { return r.is_zero(); }
}  // namespace detail

// Finitely supported vector indexed by positive integers. Zero entries are
// never stored, so the key set is exactly the support; iteration is in
// increasing index order.
template <class Scalar>
class FinVec {
 public:
  using Map = std::map<Index, Scalar>;

  FinVec() = default;
  FinVec(std::initializer_list<std::pair<const Index, Scalar>> init) {
    for (const auto& [i, v] : init) set(i, v);
  }

  // Dense constructor: dense[0] is component 1.
  static FinVec from_dense(const std::vector<Scalar>& dense) {
    FinVec v;
    for (std::size_t i = 0; i < dense.size(); ++i) v.set(i + 1, dense[i]);
    return v;
  }

  void set(Index i, const Scalar& value) {
    if (i == 0) fail(Errc::invalid_argument, "vector indices start at 1");
    if (detail::is_zero(value)) {
      entries_.erase(i);
    } else {
      entries_.insert_or_assign(i, value);
    }
  }

  // Component i, or nullptr when i is outside the support.
  const Scalar* find(Index i) const {
    auto it = entries_.find(i);
    return it == entries_.end() ? nullptr : &it->second;
  }

  bool empty() const { return entries_.empty(); }
  std::size_t support_size() const { return entries_.size(); }
  Index max_index() const { return entries_.empty() ? 0 : entries_.rbegin()->first; }

  std::vector<Index> support() const {
    std::vector<Index> out;
    out.reserve(entries_.size());
    for (const auto& [i, v] : entries_) out.push_back(i);
    return out;
  }

  const Map& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  friend bool operator==(const FinVec& a, const FinVec& b) { return a.entries_ == b.entries_; }

 private:
  Map entries_;
};

using QVec = FinVec<Rational>;
using ZVec = FinVec<BigInt>;

// Residue-valued vector over Z/p^m. The modulus is carried by the vector so
// the zero vector still knows its ring.
struct ResVec {
  std::uint64_t prime = 0;
  unsigned exponent = 1;
  FinVec<BigInt> entries;  // values in [0, p^m)

  BigInt modulus() const { return pow_u64(prime, exponent); }
  friend bool operator==(const ResVec&, const ResVec&) = default;
};

QVec to_rational(const ZVec& v);

// Exact sum over the intersection of supports.
Rational inner(const QVec& a, const QVec& b);
Rational inner(const ZVec& a, const QVec& b);
BigInt inner(const ZVec& a, const ZVec& b);
Residue inner(const ResVec& a, const ResVec& b);

template <class Scalar>
FinVec<Scalar> truncate(const FinVec<Scalar>& v, Index k) {
  FinVec<Scalar> out;
  for (const auto& [i, x] : v) {
    if (i > k) break;
    out.set(i, x);
  }
  return out;
}

ResVec truncate(const ResVec& v, Index k);

QVec operator+(const QVec& a, const QVec& b);
QVec operator-(const QVec& a);
QVec operator-(const QVec& a, const QVec& b);
QVec operator*(const Rational& c, const QVec& v);
ZVec operator+(const ZVec& a, const ZVec& b);
ZVec operator-(const ZVec& a, const ZVec& b);
ZVec operator*(const BigInt& c, const ZVec& v);
ResVec operator+(const ResVec& a, const ResVec& b);

// Componentwise reduce_mod; an entry with vp < 0 raises not_p_adic_integer
// carrying the offending index.
ResVec reduce_vec(const QVec& v, std::uint64_t p, unsigned m);
ResVec reduce_vec(const ZVec& v, std::uint64_t p, unsigned m);

// Least common multiple of all component denominators (1 for the zero vector).
BigInt common_denominator(const QVec& v);

bool is_integral(const QVec& v);
ZVec to_integer(const QVec& v);  // requires is_integral

}  // namespace tfab

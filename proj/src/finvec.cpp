#include "tfab/finvec.hpp"

#include "tfab/group_element.hpp"

namespace tfab {

QVec to_rational(const ZVec& v) {
  QVec out;
  for (const auto& [i, x] : v) out.set(i, Rational(x));
  return out;
}

namespace {

template <class A, class B, class R, class Mul>
R sparse_inner(const FinVec<A>& a, const FinVec<B>& b, R acc, Mul mul) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      acc += mul(ia->second, ib->second);
      ++ia;
      ++ib;
    }
  }
  return acc;
}

template <class S>
FinVec<S> combine(const FinVec<S>& a, const FinVec<S>& b, int sign) {
  FinVec<S> out = a;
  for (const auto& [i, x] : b) {
    const S* cur = out.find(i);
    S base = cur ? *cur : S(0);
    if (sign > 0) {
      base += x;
    } else {
      base -= x;
    }
    out.set(i, base);
  }
  return out;
}

}  // namespace

Rational inner(const QVec& a, const QVec& b) {
  return sparse_inner(a, b, Rational(0), [](const Rational& x, const Rational& y) { return x * y; });
}

Rational inner(const ZVec& a, const QVec& b) {
  return sparse_inner(a, b, Rational(0),
                      [](const BigInt& x, const Rational& y) { return Rational(x) * y; });
}

BigInt inner(const ZVec& a, const ZVec& b) {
  return sparse_inner(a, b, BigInt(0), [](const BigInt& x, const BigInt& y) -> BigInt { return x * y; });
}

Residue inner(const ResVec& a, const ResVec& b) {
  if (a.prime != b.prime || a.exponent != b.exponent)
    fail(Errc::invalid_argument, "inner product of residue vectors over different rings");
  BigInt acc = sparse_inner(a.entries, b.entries, BigInt(0),
                            [](const BigInt& x, const BigInt& y) -> BigInt { return x * y; });
  return make_residue(acc, a.prime, a.exponent);
}

ResVec truncate(const ResVec& v, Index k) { return {v.prime, v.exponent, truncate(v.entries, k)}; }

QVec operator+(const QVec& a, const QVec& b) { return combine(a, b, +1); }
QVec operator-(const QVec& a, const QVec& b) { return combine(a, b, -1); }
QVec operator-(const QVec& a) { return combine(QVec{}, a, -1); }
ZVec operator+(const ZVec& a, const ZVec& b) { return combine(a, b, +1); }
ZVec operator-(const ZVec& a, const ZVec& b) { return combine(a, b, -1); }

QVec operator*(const Rational& c, const QVec& v) {
  QVec out;
  if (c.is_zero()) return out;
  for (const auto& [i, x] : v) out.set(i, c * x);
  return out;
}

ZVec operator*(const BigInt& c, const ZVec& v) {
  ZVec out;
  if (c == 0) return out;
  for (const auto& [i, x] : v) out.set(i, BigInt(c * x));
  return out;
}

ResVec operator+(const ResVec& a, const ResVec& b) {
  if (a.prime != b.prime || a.exponent != b.exponent)
    fail(Errc::invalid_argument, "sum of residue vectors over different rings");
  ResVec out{a.prime, a.exponent, {}};
  BigInt mod = a.modulus();
  ZVec sum = a.entries + b.entries;
  for (const auto& [i, x] : sum) {
    BigInt r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
    out.entries.set(i, r);
  }
  return out;
}

ResVec reduce_vec(const QVec& v, std::uint64_t p, unsigned m) {
  ResVec out{p, m, {}};
  for (const auto& [i, x] : v) {
    if (!vp(x, p).at_least(0))
      throw Error(Errc::not_p_adic_integer,
                  "component " + std::to_string(i) + " (" + x.to_string() + ") is not a " +
                      std::to_string(p) + "-adic integer",
                  i);
    out.entries.set(i, reduce_mod(x, p, m).value);
  }
  return out;
}

ResVec reduce_vec(const ZVec& v, std::uint64_t p, unsigned m) { return reduce_vec(to_rational(v), p, m); }

BigInt common_denominator(const QVec& v) {
  BigInt d = 1;
  for (const auto& [i, x] : v) mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), x.den().get_mpz_t());
  return d;
}

bool is_integral(const QVec& v) {
  for (const auto& [i, x] : v)
    if (!x.is_integer()) return false;
  return true;
}

ZVec to_integer(const QVec& v) {
  ZVec out;
  for (const auto& [i, x] : v) {
    if (!x.is_integer())
      throw Error(Errc::invalid_argument, "component " + std::to_string(i) + " is not an integer", i);
    out.set(i, x.num());
  }
  return out;
}

// --- GroupElement ---

GroupElement operator+(const GroupElement& a, const GroupElement& b) { return {a.x0 + b.x0, a.x + b.x}; }
GroupElement operator-(const GroupElement& a) { return {-a.x0, -a.x}; }
GroupElement operator-(const GroupElement& a, const GroupElement& b) { return {a.x0 - b.x0, a.x - b.x}; }
GroupElement operator*(const BigInt& n, const GroupElement& e) { return scale(Rational(n), e); }
GroupElement scale(const Rational& c, const GroupElement& e) { return {c * e.x0, c * e.x}; }

BigInt common_denominator(const GroupElement& e) {
  BigInt d = common_denominator(e.x);
  BigInt d0 = e.x0.den();
  mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), d0.get_mpz_t());
  return d;
}

Index max_support(const GroupElement& e) { return e.x.max_index(); }

std::vector<Rational> to_row(const GroupElement& e, Index k) {
  std::vector<Rational> row(k + 1);
  row[0] = e.x0;
  for (const auto& [i, v] : e.x) {
    if (i > k) fail(Errc::invalid_argument, "element support exceeds row width");
    row[i] = v;
  }
  return row;
}

GroupElement from_row(const std::vector<Rational>& row) {
  GroupElement e;
  if (row.empty()) return e;
  e.x0 = row[0];
  for (std::size_t i = 1; i < row.size(); ++i) e.x.set(i, row[i]);
  return e;
}

}  // namespace tfab

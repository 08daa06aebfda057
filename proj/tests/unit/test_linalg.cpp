#include <gtest/gtest.h>

#include <numeric>

#include "tfab/limits.hpp"
#include "tfab/linalg.hpp"
#include "tfab/sampling.hpp"

using namespace tfab;

namespace {

RatMatrix random_rat(Sampler& rng, std::size_t r, std::size_t c, int num = 6, int den = 4) {
  RatMatrix m(r, std::vector<Rational>(c));
  for (auto& row : m)
    for (auto& x : row) x = rng.rational(num, den);
  return m;
}

IntMatrix random_int(Sampler& rng, std::size_t r, std::size_t c, int bound = 9) {
  IntMatrix m(r, std::vector<BigInt>(c));
  for (auto& row : m)
    for (auto& x : row) x = rng.integer(bound);
  return m;
}

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix out;
  for (const auto& row : m) out.emplace_back(row.begin(), row.end());
  return out;
}

RatMatrix mul(const RatMatrix& a, const RatMatrix& b) {
  RatMatrix out(a.size(), std::vector<Rational>(b[0].size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b[0].size(); ++j)
      for (std::size_t t = 0; t < b.size(); ++t) out[i][j] += a[i][t] * b[t][j];
  return out;
}

// Leibniz expansion.
Rational leibniz(const RatMatrix& m) {
  std::vector<std::size_t> perm(m.size());
  std::iota(perm.begin(), perm.end(), 0);
  Rational total;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
    Rational term = inversions % 2 ? Rational(-1) : Rational(1);
    for (std::size_t i = 0; i < perm.size(); ++i) term *= m[i][perm[i]];
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

// Rank over F_p by counting solutions of c * m = 0 exhaustively.
std::size_t null_dim_mod(const IntMatrix& m, std::uint64_t p) {
  std::size_t rows = m.size(), cols = m[0].size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < rows; ++i) total *= p;
  std::uint64_t hits = 0;
  for (std::uint64_t t = 0; t < total; ++t) {
    std::vector<std::uint64_t> c(rows);
    std::uint64_t u = t;
    for (auto& x : c) x = u % p, u /= p;
    bool zero = true;
    for (std::size_t j = 0; j < cols && zero; ++j) {
      BigInt s = 0;
      for (std::size_t i = 0; i < rows; ++i) s += m[i][j] * static_cast<unsigned long>(c[i]);
      zero = mpz_divisible_ui_p(s.get_mpz_t(), p) != 0;
    }
    hits += zero;
  }
  std::size_t d = 0;
  while (total > 1 && hits > 1) hits /= p, ++d;
  return d;
}

}  // namespace

TEST(Linalg, BareissMatchesLeibniz) {
  Sampler rng(61);
  for (int t = 0; t < 200; ++t) {
    std::size_t n = 1 + rng.below(5);
    IntMatrix m = random_int(rng, n, n);
    EXPECT_EQ(Rational(determinant(m)), leibniz(to_rat(m)));
    RatMatrix q = random_rat(rng, n, n);
    EXPECT_EQ(determinant(q), leibniz(q));
  }
  EXPECT_EQ(determinant(IntMatrix{{0, 1}, {1, 0}}), -1);
  EXPECT_EQ(determinant(IntMatrix{{2, 4}, {1, 2}}), 0);
}

TEST(Linalg, InversesAgree) {
  Sampler rng(62);
  int singular = 0;
  for (int t = 0; t < 150; ++t) {
    std::size_t n = 1 + rng.below(4);
    RatMatrix m = random_rat(rng, n, n, 2, 2);
    auto a = inverse(m), b = inverse_by_adjugate(m);
    ASSERT_EQ(a.has_value(), b.has_value());
    ASSERT_EQ(a.has_value(), !leibniz(m).is_zero());
    if (!a) {
      ++singular;
      continue;
    }
    EXPECT_EQ(*a, *b);
    RatMatrix id(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    EXPECT_EQ(mul(m, *a), id);
  }
  EXPECT_GT(singular, 0);
}

TEST(Linalg, RrefShape) {
  Sampler rng(63);
  for (int t = 0; t < 100; ++t) {
    RatMatrix m = random_rat(rng, 1 + rng.below(4), 1 + rng.below(5), 3, 2);
    if (rng.coin() && m.size() > 1) m[1] = m[0];
    Echelon e = rref(m);
    ASSERT_EQ(e.rows.size(), e.pivots.size());
    EXPECT_TRUE(std::is_sorted(e.pivots.begin(), e.pivots.end()));
    for (std::size_t r = 0; r < e.rows.size(); ++r)
      for (std::size_t s = 0; s < e.rows.size(); ++s)
        EXPECT_EQ(e.rows[s][e.pivots[r]], Rational(r == s ? 1 : 0));
    EXPECT_EQ(rank(m), e.rows.size());
    EXPECT_EQ(rank(e.rows), e.rows.size());
  }
}

TEST(Linalg, LeftNullspace) {
  Sampler rng(64);
  for (int t = 0; t < 100; ++t) {
    std::size_t r = 1 + rng.below(5), c = 1 + rng.below(4);
    RatMatrix m = random_rat(rng, r, c, 2, 2);
    RatMatrix n = left_nullspace(m);
    EXPECT_EQ(n.size(), r - rank(m));
    if (n.empty()) continue;
    EXPECT_EQ(rank(n), n.size());
    RatMatrix prod = mul(n, m);
    for (const auto& row : prod)
      for (const auto& x : row) EXPECT_TRUE(x.is_zero());
  }
}

TEST(Linalg, LeftNullspaceModP) {
  Sampler rng(65);
  for (std::uint64_t p : {2, 3, 5}) {
    for (int t = 0; t < 40; ++t) {
      std::size_t r = 1 + rng.below(4), c = 1 + rng.below(4);
      IntMatrix m = random_int(rng, r, c, 6);
      auto basis = left_nullspace_mod(m, p);
      EXPECT_EQ(basis.size(), null_dim_mod(m, p));
      for (const auto& v : basis) {
        ASSERT_EQ(v.size(), r);
        for (std::size_t j = 0; j < c; ++j) {
          BigInt s = 0;
          for (std::size_t i = 0; i < r; ++i) s += m[i][j] * static_cast<unsigned long>(v[i]);
          EXPECT_TRUE(mpz_divisible_ui_p(s.get_mpz_t(), p));
        }
      }
    }
  }
}

TEST(Linalg, HermiteNormalForm) {
  Sampler rng(66);
  for (int t = 0; t < 100; ++t) {
    std::size_t r = 1 + rng.below(4), c = 1 + rng.below(4);
    IntMatrix m = random_int(rng, r, c);
    IntMatrix h = hnf(m);
    EXPECT_EQ(h.size(), rank(to_rat(m)));
    std::size_t last = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      std::size_t piv = 0;
      while (piv < c && h[i][piv] == 0) ++piv;
      ASSERT_LT(piv, c);
      if (i > 0) EXPECT_GT(piv, last);
      last = piv;
      EXPECT_GT(h[i][piv], 0);
      for (std::size_t u = 0; u < i; ++u) {
        EXPECT_GE(h[u][piv], 0);
        EXPECT_LT(h[u][piv], h[i][piv]);
      }
      for (std::size_t u = i + 1; u < h.size(); ++u) EXPECT_EQ(h[u][piv], 0);
    }
    EXPECT_EQ(hnf(h), h);
    // appending integer combinations does not move the lattice
    IntMatrix more = m;
    std::vector<BigInt> combo(c);
    for (const auto& row : m) {
      BigInt k = rng.integer(5);
      for (std::size_t j = 0; j < c; ++j) combo[j] += k * row[j];
    }
    more.push_back(combo);
    EXPECT_EQ(hnf(more), h);
    // unimodular row operations do not move it either
    if (r > 1) {
      IntMatrix u = m;
      BigInt k = rng.integer(7);
      for (std::size_t j = 0; j < c; ++j) u[0][j] += k * u[1][j];
      std::swap(u[0], u[1]);
      EXPECT_EQ(hnf(u), h);
    }
  }
}

TEST(Linalg, HnfDeterminantForSquare) {
  Sampler rng(67);
  for (int t = 0; t < 60; ++t) {
    IntMatrix m = random_int(rng, 3, 3);
    BigInt d = determinant(m);
    if (d == 0) continue;
    IntMatrix h = hnf(m);
    BigInt prod = 1;
    for (std::size_t i = 0; i < 3; ++i) prod *= h[i][i];
    EXPECT_EQ(prod, abs(d));
  }
}

TEST(Linalg, MaximalMinorGcd) {
  Sampler rng(68);
  for (int t = 0; t < 60; ++t) {
    IntMatrix m = random_int(rng, 2, 4);
    if (rank(to_rat(m)) < 2) continue;
    BigInt g = 0;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a + 1; b < 4; ++b) {
        BigInt minor = m[0][a] * m[1][b] - m[0][b] * m[1][a];
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), minor.get_mpz_t());
      }
    EXPECT_EQ(maximal_minor_gcd(m), g);
  }
}

TEST(Linalg, LatticeBasisOfRationalRows) {
  RatMatrix rows{{Rational(BigInt(1), BigInt(2)), Rational(0)}, {Rational(1), Rational(0)}};
  RatMatrix b = lattice_basis(rows);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_EQ(b[0][0], Rational(BigInt(1), BigInt(2)));
  EXPECT_EQ(common_denominator(rows), 2);
  EXPECT_EQ(scale_to_integer(rows, BigInt(2)), (IntMatrix{{1, 0}, {2, 0}}));
}

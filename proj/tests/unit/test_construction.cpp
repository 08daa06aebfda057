#include <gtest/gtest.h>

#include <set>

#include "../support/oracles.hpp"
#include "tfab/limits.hpp"
#include "tfab/construction.hpp"
#include "tfab/linalg.hpp"
#include "tfab/primes.hpp"
#include "tfab/sampling.hpp"

using namespace tfab;

namespace {

std::vector<std::uint64_t> dense(const ZVec& v, std::size_t l) {
  std::vector<std::uint64_t> out(l, 0);
  for (const auto& [j, x] : v) out[j - 1] = x.get_ui();
  return out;
}

ResVec to_res(const std::vector<std::uint64_t>& r, std::uint64_t p) {
  ResVec v{p, 1, {}};
  for (std::size_t j = 0; j < r.size(); ++j) v.entries.set(j + 1, BigInt(static_cast<unsigned long>(r[j])));
  return v;
}

std::set<std::vector<std::uint64_t>> oracle_residues(std::uint64_t p, std::size_t w, unsigned m) {
  oracle::Context c = oracle::context(p);
  std::uint64_t pm = 1;
  for (unsigned t = 0; t < m; ++t) pm *= p;
  std::set<std::vector<std::uint64_t>> out;
  for (const auto& phi : oracle::phi_prefix(c, oracle::covering_block_count(c, m))) {
    std::vector<std::uint64_t> r(w, 0);
    for (const auto& [j, v] : phi.v)
      if (j <= w) r[j - 1] = oracle::mod(v, pm);
    out.insert(r);
  }
  return out;
}

}  // namespace

TEST(Context, MatchesOracleForFirstPrimes) {
  for (std::uint64_t n = 1; n <= 30; ++n) {
    std::uint64_t p = nth_prime(n);
    oracle::Context o = oracle::context(p);
    PrimeContext c = build_context(p);
    ASSERT_EQ(c.p, p);
    std::map<Index, std::int64_t> x;
    for (const auto& [j, v] : c.xvec) x[j] = v.get_si();
    EXPECT_EQ(x, o.x) << p;
    EXPECT_EQ(c.l, o.l) << p;
    EXPECT_EQ(c.xmod, o.xmod) << p;
    EXPECT_EQ(c.pivot, o.pivot) << p;
    EXPECT_EQ(c.relevant, o.relevant) << p;
    EXPECT_EQ(c.a, o.a) << p;
    if (p <= 13) EXPECT_EQ(m_size(c), oracle::m_size(o)) << p;
    EXPECT_EQ(m_size(c), pow_u64(p, o.l - (o.pivot ? 1 : 0))) << p;
  }
}

TEST(Context, SmallPrimeValues) {
  PrimeContext c2 = build_context(2);
  EXPECT_TRUE(c2.relevant.empty());
  EXPECT_EQ(c2.l, 3u);
  EXPECT_EQ(c2.a, c2.reduction_is_zero() ? 0u : 1u);
  PrimeContext c5 = build_context(5);
  EXPECT_EQ(c5.l, 6u);
  EXPECT_EQ(c5.relevant, (std::vector<std::uint64_t>{1, 2, 3}));
  EXPECT_EQ(m_size(c5), 3125);
}

TEST(Context, ForbiddenValuesRecomputed) {
  for (std::uint64_t p : {5, 7, 11, 13, 17}) {
    PrimeContext c = build_context(p);
    ASSERT_EQ(c.forbidden.size(), c.relevant.size());
    for (std::size_t t = 0; t < c.relevant.size(); ++t) {
      QVec lam = oracle::lambda(c.relevant[t]);
      std::uint64_t s = 0;
      for (const auto& [j, q] : lam)
        if (const BigInt* xj = c.xvec.find(j)) s = (s + oracle::rat_mod(q, p) * oracle::mod(xj->get_si(), p)) % p;
      EXPECT_EQ(c.forbidden[t], (p - s) % p);
      if (!c.reduction_is_zero()) EXPECT_NE(c.a, c.forbidden[t]);
    }
    if (!c.reduction_is_zero()) {
      EXPECT_NE(c.a, 0u);
      for (std::uint64_t v = 1; v < c.a; ++v)
        EXPECT_NE(std::count(c.forbidden.begin(), c.forbidden.end(), v), 0) << "a is not least";
    }
  }
}

TEST(Context, CacheIsStableAndDeterministic) {
  auto a = context(3), b = context(3);
  EXPECT_EQ(a.get(), b.get());
  PrimeContext fresh = build_context(3);
  EXPECT_EQ(fresh.xvec, a->xvec);
  EXPECT_EQ(fresh.a, a->a);
  EXPECT_EQ(fresh.relevant, a->relevant);
}

TEST(Context, NonPrimeRejected) { EXPECT_THROW(build_context(9), Error); }

TEST(MSet, ContainsMatchesInnerProduct) {
  Sampler rng(41);
  for (std::uint64_t p : {2, 3, 5, 7, 11}) {
    auto c = context(p);
    for (int t = 0; t < 100; ++t) {
      std::vector<std::uint64_t> r(c->l);
      for (auto& x : r) x = rng.below(p);
      std::uint64_t s = 0;
      for (std::size_t j = 0; j < r.size(); ++j) s = (s + r[j] * c->xmod[j]) % p;
      EXPECT_EQ(m_contains(*c, to_res(r, p)), s == c->a);
    }
    if (c->a != 0) EXPECT_FALSE(m_contains(*c, ResVec{p, 1, {}}));
  }
}

TEST(MSet, ZeroReductionAcceptsEverything) {
  PrimeContext c;
  c.p = 3;
  c.l = 4;
  c.xmod.assign(4, 0);
  c.a = 0;
  Sampler rng(42);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::uint64_t> r(4);
    for (auto& x : r) x = rng.below(3);
    EXPECT_TRUE(m_contains(c, to_res(r, 3)));
  }
  EXPECT_EQ(m_size(c), 81);
}

TEST(MSet, SupportOutsideWindowRejected) {
  auto c = context(2);
  ResVec v{2, 1, {}};
  v.entries.set(c->l + 1, BigInt(1));
  EXPECT_THROW(m_contains(*c, v), Error);
}

TEST(MSet, FirstElementSolvesPivot) {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    auto c = context(p);
    std::vector<std::uint64_t> m1 = m_element(*c, BigInt(1));
    for (Index j = 1; j <= c->l; ++j) {
      if (j == c->pivot)
        EXPECT_EQ(m1[j - 1], c->a * oracle::inv_mod(c->xmod[j - 1], p) % p);
      else
        EXPECT_EQ(m1[j - 1], 0u);
    }
  }
}

TEST(MSet, EnumerationMatchesOracle) {
  for (std::uint64_t p : {2, 3, 5}) {
    auto c = context(p);
    oracle::Context o = oracle::context(p);
    std::uint64_t size = to_u64(m_size(*c));
    std::set<std::vector<std::uint64_t>> seen;
    for (std::uint64_t n = 1; n <= size; ++n) {
      std::vector<std::uint64_t> m = m_element(*c, BigInt(static_cast<unsigned long>(n)));
      ASSERT_EQ(m, oracle::m_element(o, n));
      ASSERT_TRUE(m_contains(*c, m_enumerate(*c, BigInt(static_cast<unsigned long>(n)))));
      seen.insert(m);
    }
    EXPECT_EQ(seen.size(), size);
    EXPECT_THROW(m_element(*c, BigInt(static_cast<unsigned long>(size + 1))), Error);
    EXPECT_THROW(m_element(*c, BigInt(0)), Error);
  }
}

TEST(MSet, ExhaustiveFilterOrder) {
  // pivot is coordinate 1 for these primes, so filtering the full space in
  // the same lexicographic order reproduces the enumeration order
  for (std::uint64_t p : {2, 3}) {
    auto c = context(p);
    ASSERT_EQ(c->pivot, 1u);
    std::vector<std::vector<std::uint64_t>> filtered;
    std::uint64_t total = 1;
    for (std::uint64_t j = 0; j < c->l; ++j) total *= p;
    for (std::uint64_t t = 0; t < total; ++t) {
      std::vector<std::uint64_t> r(c->l);
      std::uint64_t u = t;
      for (auto& x : r) x = u % p, u /= p;
      if (m_contains(*c, to_res(r, p))) filtered.push_back(r);
    }
    ASSERT_EQ(filtered.size(), to_u64(m_size(*c)));
    for (std::size_t n = 0; n < filtered.size(); ++n)
      EXPECT_EQ(m_element(*c, BigInt(static_cast<unsigned long>(n + 1))), filtered[n]);
  }
}

TEST(Stream, CyclesThroughM) {
  auto c = context(3);
  std::uint64_t size = to_u64(m_size(*c));
  for (std::uint64_t n = 1; n <= 3 * size; n += 7)
    EXPECT_EQ(stream_item(*c, BigInt(static_cast<unsigned long>(n))),
              m_element(*c, BigInt(static_cast<unsigned long>(1 + (n - 1) % size))));
}

TEST(PhiBlock, PerturbationExponent) {
  EXPECT_EQ(perturbation_exponent(2, 3), 1u);
  for (std::uint64_t p : {2, 3, 5, 7})
    for (std::uint64_t k = 1; k <= 50; ++k) {
      unsigned s = perturbation_exponent(p, k);
      EXPECT_GT(pow_u64(p, s + 1), k * (p - 1));
      if (s > 0) EXPECT_LE(pow_u64(p, s), k * (p - 1));
    }
  EXPECT_EQ(block_first_item(1), 1);
  EXPECT_EQ(block_first_item(2), 3);
  EXPECT_EQ(block_first_item(3), 6);
}

TEST(PhiBlock, MatchesOraclePrefix) {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    auto c = context(p);
    auto prefix = oracle::phi_prefix(oracle::context(p), 8);
    std::size_t at = 0;
    for (std::uint64_t k = 1; k <= 8; ++k) {
      PhiBlock b = phi_block(*c, k);
      ASSERT_EQ(b.k, k);
      ASSERT_EQ(b.vectors.size(), k + 1);
      EXPECT_EQ(b.perturbation, pow_u64(p, b.s + 1));
      for (const ZVec& v : b.vectors) {
        ASSERT_EQ(prefix[at].block, k);
        ZVec expect;
        for (auto [j, x] : prefix[at].v) expect.set(j, BigInt(static_cast<long>(x)));
        EXPECT_EQ(v, expect) << "p=" << p << " k=" << k;
        ++at;
      }
    }
  }
}

TEST(PhiBlock, InvariantsHold) {
  for (std::uint64_t p : {2, 3, 5}) {
    auto c = context(p);
    for (std::uint64_t k = 1; k <= 6; ++k) {
      PhiBlock b = phi_block(*c, k);
      IntMatrix diff(k, std::vector<BigInt>(k));
      for (std::uint64_t j = 1; j <= k; ++j)
        for (Index col = 1; col <= k; ++col) {
          const BigInt* a = b.vectors[j].find(col);
          const BigInt* z = b.vectors[0].find(col);
          diff[j - 1][col - 1] = (a ? *a : BigInt(0)) - (z ? *z : BigInt(0));
        }
      EXPECT_NE(determinant(diff), 0) << "p=" << p << " k=" << k;
      for (const ZVec& v : b.vectors) {
        ResVec r = reduce_vec(v, p, 1);
        EXPECT_TRUE(m_contains(*c, truncate(r, c->l)));
      }
    }
  }
}

TEST(ResidueSet, VisibleBlocks) {
  EXPECT_EQ(last_visible_block(2, 1), 0u);
  for (std::uint64_t p : {2, 3, 5})
    for (unsigned m = 1; m <= 4; ++m) {
      std::uint64_t last = last_visible_block(p, m);
      BigInt pm = pow_u64(p, m);
      for (std::uint64_t k = 1; k <= last + 3; ++k) {
        bool visible = pow_u64(p, perturbation_exponent(p, k) + 1) < pm;
        EXPECT_EQ(visible, k <= last) << p << " " << m << " " << k;
      }
    }
}

TEST(ResidueSet, ExponentOneIsHyperplaneOnly) {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (Index w = 0; w <= 5; ++w) {
      ResidueSet s = residue_set(*context(p), w, 1);
      EXPECT_TRUE(s.block_vectors.empty());
    }
  }
}

TEST(ResidueSet, EmptyWindow) {
  for (unsigned m = 1; m <= 3; ++m) {
    auto all = residue_set(*context(2), 0, m).materialize();
    ASSERT_EQ(all.size(), 1u);
    EXPECT_TRUE(all[0].empty());
  }
}

TEST(ResidueSet, MatchesExplicitPhiResidues) {
  for (std::uint64_t p : {2, 3, 5}) {
    for (Index w = 0; w <= 3; ++w) {
      for (unsigned m = 1; m <= 2; ++m) {
        auto expect = oracle_residues(p, w, m);
        ResidueSet s = residue_set(*context(p), w, m);
        auto got = s.materialize();
        EXPECT_EQ(std::set<std::vector<std::uint64_t>>(got.begin(), got.end()), expect)
            << "p=" << p << " w=" << w << " m=" << m;
        for (const auto& r : expect) EXPECT_TRUE(s.contains(r));
      }
    }
  }
}

TEST(ResidueSet, WideWindowAgainstOracle) {
  // windows past l pick up perturbed coordinates only through visible blocks
  for (Index w = 4; w <= 6; ++w) {
    auto expect = oracle_residues(2, w, 3);
    auto got = residue_set(*context(2), w, 3).materialize();
    EXPECT_EQ(std::set<std::vector<std::uint64_t>>(got.begin(), got.end()), expect) << w;
  }
}

TEST(ResidueSet, ContainsRejectsOutsiders) {
  ResidueSet s = residue_set(*context(3), 3, 2);
  auto all = s.materialize();
  std::set<std::vector<std::uint64_t>> in(all.begin(), all.end());
  for (std::uint64_t t = 0; t < 729; ++t) {
    std::vector<std::uint64_t> r{t % 9, (t / 9) % 9, t / 81};
    EXPECT_EQ(s.contains(r), in.count(r) == 1);
  }
}

TEST(ResidueSet, CapacityEnforced) {
  Limits l = limits();
  l.residue_cap = 100;
  ScopedLimits scope(l);
  ResidueSet s = residue_set(*context(11), 5, 1);
  try {
    s.materialize();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::capacity_exceeded);
  }
}

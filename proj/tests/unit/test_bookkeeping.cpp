#include <gtest/gtest.h>

#include <set>

#include "../support/oracles.hpp"
#include "tfab/limits.hpp"
#include "tfab/bookkeeping.hpp"
#include "tfab/primes.hpp"
#include "tfab/sampling.hpp"

using namespace tfab;

namespace {

BigInt B(unsigned long v) { return BigInt(v); }

ZVec zvec(const std::map<Index, std::int64_t>& m) {
  ZVec v;
  for (auto [i, x] : m) v.set(i, BigInt(static_cast<long>(x)));
  return v;
}

}  // namespace

TEST(Pairing, Examples) {
  EXPECT_EQ(pair(B(1), B(1)), 1);
  EXPECT_EQ(pair(B(1), B(2)), 2);
  EXPECT_EQ(pair(B(2), B(1)), 3);
  auto [i, j] = unpair(B(10));
  EXPECT_EQ(pair(i, j), 10);
}

TEST(Pairing, ExhaustiveBijection) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    auto [i, j] = unpair(B(n));
    ASSERT_GE(i, 1);
    ASSERT_GE(j, 1);
    ASSERT_EQ(pair(i, j), n);
    auto [oi, oj] = oracle::unpair1(n);
    ASSERT_EQ(i, oi);
    ASSERT_EQ(j, oj);
  }
  for (std::uint64_t i = 1; i <= 100; ++i)
    for (std::uint64_t j = 1; j <= 100; ++j) {
      std::uint64_t n = to_u64(pair(B(i), B(j)));
      EXPECT_TRUE(seen.insert(n).second);
      EXPECT_EQ(n, oracle::pair1(i, j));
    }
}

TEST(Pairing, ZeroBasedAndSequences) {
  for (std::uint64_t n = 0; n <= 10000; ++n) {
    auto [x, y] = unpair0(B(n));
    auto [ox, oy] = oracle::unpair0(n);
    ASSERT_EQ(x, ox);
    ASSERT_EQ(y, oy);
    ASSERT_EQ(pair0(x, y), n);
    std::vector<BigInt> seq = decode_sequence(B(n));
    std::vector<std::uint64_t> oseq = oracle::decode_sequence(n);
    ASSERT_EQ(seq.size(), oseq.size());
    for (std::size_t t = 0; t < seq.size(); ++t) ASSERT_EQ(seq[t], oseq[t]);
    ASSERT_EQ(encode_sequence(seq), n);
  }
  EXPECT_TRUE(decode_sequence(B(0)).empty());
}

TEST(EnumRat, Examples) {
  EXPECT_EQ(enum_rat(B(1)), Rational(-1));
  EXPECT_EQ(enum_rat(B(2)), Rational(0));
  EXPECT_EQ(enum_rat(B(3)), Rational(1));
}

TEST(EnumRat, MatchesBruteForceOrdering) {
  auto rats = oracle::rationals_by_height(40);
  for (std::size_t n = 1; n <= rats.size(); ++n) {
    Rational r = enum_rat(B(n));
    ASSERT_EQ(r, oracle::to_rational(rats[n - 1])) << n;
    ASSERT_EQ(rat_index(r), n);
  }
}

TEST(EnumRat, LargeIndicesRoundTrip) {
  Sampler rng(31);
  for (int t = 0; t < 200; ++t) {
    BigInt n = B(1 + rng.below(1ULL << 40));
    EXPECT_EQ(rat_index(enum_rat(n)), n);
  }
}

TEST(EnumInt, MatchesRestrictedOrder) {
  auto ints = oracle::integers_in_order(100);
  for (std::size_t n = 1; n <= ints.size(); ++n) {
    ASSERT_EQ(enum_int(B(n)), BigInt(static_cast<long>(ints[n - 1])));
    ASSERT_EQ(int_index(BigInt(static_cast<long>(ints[n - 1]))), n);
  }
}

TEST(EnumLambda, Examples) {
  EXPECT_TRUE(enum_lambda(B(1)).empty());
  EXPECT_EQ(lambda_index(QVec{}), 1);
  EXPECT_LE(lambda_index(enum_lambda(B(7))), 7);
}

TEST(EnumLambda, MatchesIndependentDecoder) {
  for (std::uint64_t i = 1; i <= 3000; ++i) ASSERT_EQ(enum_lambda(B(i)), oracle::lambda(i)) << i;
}

TEST(EnumLambda, IndexIsLeastPreimage) {
  for (std::uint64_t i = 1; i <= 3000; ++i) {
    QVec v = enum_lambda(B(i));
    BigInt idx = lambda_index(v);
    ASSERT_LE(idx, i);
    ASSERT_EQ(enum_lambda(idx), v);
    // nothing smaller decodes to v
    for (std::uint64_t j = 1; j < idx && i <= 300; ++j) ASSERT_NE(enum_lambda(B(j)), v);
  }
}

TEST(EnumLambda, RoundTripRandomVectors) {
  Sampler rng(32);
  for (int t = 0; t < 100; ++t) {
    QVec v = rng.rational_vector(4, 6, 6);
    EXPECT_EQ(enum_lambda(lambda_index(v)), v);
  }
}

TEST(EnumLambda, CoversSmallVectors) {
  // every vector with support in [1,3] and heights <= 3 has a decoding index
  auto rats = oracle::rationals_by_height(3);
  BigInt largest = 0;
  for (const auto& a : rats)
    for (const auto& b : rats)
      for (const auto& c : rats) {
        QVec v = QVec::from_dense({oracle::to_rational(a), oracle::to_rational(b), oracle::to_rational(c)});
        BigInt i = lambda_index(v);
        ASSERT_EQ(enum_lambda(i), v);
        largest = std::max(largest, i);
      }
  EXPECT_GT(largest, 1);
}

TEST(IntVec, MatchesIndependentDecoder) {
  auto expect = oracle::first_intvecs(400);
  for (std::uint64_t i = 1; i <= 400; ++i) {
    ASSERT_EQ(enum_intvec(i), zvec(expect[i - 1])) << i;
    ASSERT_EQ(intvec_index(enum_intvec(i)), i);
  }
  EXPECT_EQ(enum_intvec(1), (ZVec{{1, BigInt(-1)}}));
}

TEST(Partition, FirstPrimes) {
  EXPECT_EQ(prime_partition_vector(2), enum_intvec(1));
  std::map<std::uint64_t, int> hits;
  auto primes = oracle::primes_below(1300);
  ASSERT_GE(primes.size(), 200u);
  for (std::size_t n = 1; n <= 200; ++n) {
    std::uint64_t p = primes[n - 1];
    auto [i, j] = oracle::unpair1(n);
    ZVec v = prime_partition_vector(p);
    EXPECT_EQ(v, zvec(oracle::first_intvecs(i).back())) << p;
    for (std::uint64_t c = 1; c <= 3; ++c)
      if (v == enum_intvec(c)) ++hits[c];
  }
  for (std::uint64_t c = 1; c <= 3; ++c) EXPECT_GE(hits[c], 2) << c;
}

TEST(Partition, SameClassSameVector) {
  auto primes = oracle::primes_below(5000);
  std::map<std::uint64_t, ZVec> by_class;
  for (std::size_t n = 1; n <= primes.size(); ++n) {
    std::uint64_t cls = oracle::unpair1(n).first;
    ZVec v = prime_partition_vector(primes[n - 1]);
    auto [it, fresh] = by_class.emplace(cls, v);
    if (!fresh) EXPECT_EQ(it->second, v);
  }
}

TEST(Partition, Members) {
  std::vector<std::uint64_t> a = partition_members(enum_intvec(1), 20);
  std::vector<std::uint64_t> b = partition_members(enum_intvec(2), 20);
  ASSERT_EQ(a.size(), 20u);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  EXPECT_EQ(std::set<std::uint64_t>(a.begin(), a.end()).size(), 20u);
  for (auto p : a) EXPECT_EQ(prime_partition_vector(p), enum_intvec(1));
  for (auto p : b) EXPECT_EQ(prime_partition_vector(p), enum_intvec(2));
  for (auto p : a) EXPECT_EQ(std::count(b.begin(), b.end(), p), 0);
  EXPECT_EQ((std::vector<std::uint64_t>(a.begin(), a.begin() + 3)), (std::vector<std::uint64_t>{2, 3, 7}));
}

TEST(Partition, MembersRespectPrimeCap) {
  Limits l = limits();
  l.prime_cap = 200;
  ScopedLimits scope(l);
  EXPECT_THROW(partition_members(enum_intvec(30), 5), Error);
}

TEST(Fingerprint, DigestIsFnvOfRules) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : convention_rules()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  EXPECT_EQ(fingerprint().digest, buf);
  EXPECT_EQ(fingerprint().version, "tfab-conventions-1");
  EXPECT_EQ(fingerprint().to_string(), "tfab-conventions-1:" + std::string(buf));
}

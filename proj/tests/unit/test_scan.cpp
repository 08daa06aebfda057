#include <gtest/gtest.h>

#include "tfab/limits.hpp"
#include "tfab/group.hpp"
#include "tfab/sampling.hpp"
#include "tfab/scan.hpp"

using namespace tfab;

namespace {

struct Case {
  ResidueSet set;
  AffineForm form;
};

// x with denominators exactly p^m somewhere and x0 with denominator p^j, j <= m.
Case random_case(Sampler& rng, std::uint64_t p, Index w, unsigned m) {
  GroupElement e;
  BigInt pm = pow_u64(p, m);
  e.x.set(w, Rational(BigInt(rng.nonzero_integer(40) * p + 1), pm));
  for (Index j = 1; j < w; ++j) e.x.set(j, Rational(rng.integer(40), pm));
  e.x0 = Rational(rng.integer(40), pow_u64(p, rng.below(m + 1)));
  return {residue_set(*context(p), w, m), *condition_form(e, p, m)};
}

std::uint64_t brute_count(const Case& c) {
  std::uint64_t n = 0;
  std::uint64_t hs = to_u64(c.set.hyper_size());
  for (std::uint64_t t = 0; t < hs; ++t) n += !c.form.holds(c.set.hyper_element(t).data());
  for (const auto& b : c.set.block_vectors) n += !c.form.holds(b.data());
  return n;
}

}  // namespace

TEST(Scan, SerialParallelAffineAgree) {
  Sampler rng(51);
  int violations = 0, clean = 0;
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (Index w = 1; w <= 4; ++w) {
      for (unsigned m = 1; m <= 3; ++m) {
        for (int t = 0; t < 6; ++t) {
          Case c = random_case(rng, p, w, m);
          auto s = first_violation_serial(c.set, c.form);
          auto q = first_violation_parallel(c.set, c.form);
          ASSERT_EQ(s.has_value(), q.has_value());
          if (s) {
            EXPECT_EQ(s->position, q->position);
            EXPECT_EQ(s->residue, q->residue);
            EXPECT_FALSE(c.form.holds(s->residue.data()));
            ++violations;
          } else {
            ++clean;
          }
          std::uint64_t n = brute_count(c);
          EXPECT_EQ(count_violations_serial(c.set, c.form), n);
          EXPECT_EQ(count_violations_parallel(c.set, c.form), n);
          EXPECT_EQ(s.has_value(), n > 0);
          if (m == 1) {
            auto a = first_violation_affine(c.set, c.form);
            ASSERT_EQ(a.has_value(), s.has_value());
            if (a) {
              EXPECT_EQ(a->position, s->position);
              EXPECT_EQ(a->residue, s->residue);
            }
          }
        }
      }
    }
  }
  EXPECT_GT(violations, 0);
  EXPECT_GT(clean, 0);
}

TEST(Scan, FirstViolationIsEarliest) {
  Sampler rng(52);
  for (int t = 0; t < 40; ++t) {
    Case c = random_case(rng, 3, 3, 2);
    auto s = first_violation_serial(c.set, c.form);
    if (!s) continue;
    std::uint64_t hs = to_u64(c.set.hyper_size());
    for (std::uint64_t u = 0; u < std::min(s->position, hs); ++u)
      EXPECT_TRUE(c.form.holds(c.set.hyper_element(u).data()));
  }
}

TEST(Scan, ShapeMismatchRejected) {
  ResidueSet set = residue_set(*context(3), 2, 1);
  AffineForm f{3, 0, {1, 1, 1}};
  EXPECT_THROW(first_violation_serial(set, f), Error);
}

TEST(Scan, CapacityEnforced) {
  Limits l = limits();
  l.residue_cap = 1000;
  ScopedLimits scope(l);
  ResidueSet set = residue_set(*context(13), 6, 2);
  AffineForm f{169, 0, std::vector<std::uint64_t>(6, 1)};
  EXPECT_THROW(first_violation_serial(set, f), Error);
  EXPECT_THROW(count_violations_parallel(set, f), Error);
}

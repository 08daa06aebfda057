#include "tfab/bookkeeping.hpp"

#include <algorithm>
#include <cstdio>
#include <mutex>
#include <numeric>
#include <shared_mutex>

#include "tfab/errors.hpp"
#include "tfab/limits.hpp"
#include "tfab/primes.hpp"

namespace tfab {

// --- fingerprint ---

const std::string& convention_rules() {
  static const std::string rules =
      "pair(i,j)=(i+j-2)(i+j-1)/2+i on N>=1;"
      "pair0(x,y)=(x+y)(x+y+1)/2+x on N>=0;"
      "seq: s()=0, s(x::r)=pair0(x,s(r))+1;"
      "rat order: key (max(|n|,d), n, d) over reduced n/d, d>=1, 1-based;"
      "int order: rat order restricted to integers;"
      "lambda(i): decode seq(i-1), entries via 0-based rat order, last entry 0 -> zero vector;"
      "intvec V(i): i-th seq code (ascending) decoding over Z to a nonzero vector;"
      "prime piece: p = nth_prime(n), (i,j) = unpair(n), vector V(i);"
      "context: l = 1 + max(p, max supp x), relevant i in [1, p-2], a = least legal residue;"
      "M order: pivot = max supp [x], free coords coordinate 1 fastest;"
      "Phi stream: block k takes items sum_{j<k}(j+1)+1 .. sum_{j<=k}(j+1), item n = M[(n-1) mod |M|];"
      "lifts in {0..p-1}, vector j>=1 of block k gets + p^(s+1) e_j, s least with p^(s+1) > k(p-1).";
  return rules;
}

const ConventionFingerprint& fingerprint() {
  static const ConventionFingerprint fp = [] {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64
    for (unsigned char c : convention_rules()) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return ConventionFingerprint{"tfab-conventions-1", buf};
  }();
  return fp;
}

// --- pairing ---

namespace {

BigInt triangle(const BigInt& t) { return t * (t + 1) / 2; }

// Largest t >= 0 with t(t+1)/2 <= n.
BigInt diagonal(const BigInt& n) {
  BigInt s;
  mpz_sqrt(s.get_mpz_t(), BigInt(8 * n + 1).get_mpz_t());
  BigInt t = (s - 1) / 2;
  while (triangle(t) > n) --t;
  while (triangle(t + 1) <= n) ++t;
  return t;
}

}  // namespace

BigInt pair(const BigInt& i, const BigInt& j) {
  if (i < 1 || j < 1) fail(Errc::invalid_argument, "pair arguments must be >= 1");
  return (i + j - 2) * (i + j - 1) / 2 + i;
}

std::pair<BigInt, BigInt> unpair(const BigInt& n) {
  if (n < 1) fail(Errc::invalid_argument, "unpair argument must be >= 1");
  auto [x, y] = unpair0(n - 1);
  return {x + 1, y + 1};
}

BigInt pair0(const BigInt& x, const BigInt& y) { return triangle(x + y) + x; }

std::pair<BigInt, BigInt> unpair0(const BigInt& n) {
  if (n < 0) fail(Errc::invalid_argument, "unpair0 argument must be >= 0");
  BigInt t = diagonal(n);
  BigInt x = n - triangle(t);
  return {x, t - x};
}

std::vector<BigInt> decode_sequence(BigInt code) {
  if (code < 0) fail(Errc::invalid_argument, "sequence codes are nonnegative");
  std::vector<BigInt> out;
  while (code > 0) {
    auto [x, rest] = unpair0(code - 1);
    out.push_back(x);
    code = rest;
  }
  return out;
}

BigInt encode_sequence(const std::vector<BigInt>& seq) {
  BigInt s = 0;
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) s = pair0(*it, s) + 1;
  return s;
}

// --- rationals ---

namespace {

constexpr std::uint64_t kMaxHeight = 1u << 22;

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

// Cumulative counts of reduced fractions by height: before[h] = number of
// fractions with height < h.
class HeightTable {
 public:
  // Height of the 0-based position n, plus the count of all lower heights.
  std::pair<std::uint64_t, std::uint64_t> locate(const BigInt& n) {
    for (;;) {
      {
        std::shared_lock lock(mu_);
        if (!before_.empty() && BigInt(static_cast<unsigned long>(before_.back())) > n) {
          std::uint64_t pos = to_u64(n);
          auto it = std::upper_bound(before_.begin(), before_.end(), pos);
          std::uint64_t h = static_cast<std::uint64_t>(it - before_.begin()) - 1;
          return {h, before_[h]};
        }
      }
      std::unique_lock lock(mu_);
      grow_locked(before_.empty() ? 1024 : before_.size() * 2);
    }
  }

  std::uint64_t before(std::uint64_t h) {
    {
      std::shared_lock lock(mu_);
      if (h < before_.size()) return before_[h];
    }
    std::unique_lock lock(mu_);
    grow_locked(std::max<std::uint64_t>(h + 1, before_.size() * 2));
    return before_[h];
  }

 private:
  void grow_locked(std::uint64_t size) {
    if (size <= before_.size()) return;
    if (size > kMaxHeight) fail(Errc::capacity_exceeded, "rational height beyond enumeration cap");
    // Euler phi via sieve.
    std::vector<std::uint64_t> phi(size);
    std::iota(phi.begin(), phi.end(), 0);
    for (std::uint64_t i = 2; i < size; ++i) {
      if (phi[i] != i) continue;
      for (std::uint64_t j = i; j < size; j += i) phi[j] -= phi[j] / i;
    }
    before_.assign(size, 0);
    // heights start at 1; before_[0] = before_[1] = 0
    for (std::uint64_t h = 1; h + 1 < size; ++h) {
      std::uint64_t count = h == 1 ? 3 : 4 * phi[h];
      before_[h + 1] = before_[h] + count;
    }
  }

  std::shared_mutex mu_;
  std::vector<std::uint64_t> before_;
};

HeightTable& heights() {
  static HeightTable t;
  return t;
}

// Fractions of height h in order, visited until visit returns true.
template <class Visit>
void walk_height(std::uint64_t h, Visit visit) {
  if (h == 1) {
    for (long n : {-1L, 0L, 1L})
      if (visit(static_cast<std::int64_t>(n), std::uint64_t{1})) return;
    return;
  }
  auto hh = static_cast<std::int64_t>(h);
  for (std::int64_t n = -hh; n <= hh; ++n) {
    auto an = static_cast<std::uint64_t>(n < 0 ? -n : n);
    if (an == h) {
      for (std::uint64_t d = 1; d < h; ++d)
        if (gcd_u64(h, d) == 1 && visit(n, d)) return;
    } else if (gcd_u64(an, h) == 1) {
      if (visit(n, h)) return;
    }
  }
}

Rational rat_at0(const BigInt& n0) {
  auto [h, base] = heights().locate(n0);
  std::uint64_t offset = to_u64(n0) - base;
  std::uint64_t seen = 0;
  Rational out;
  walk_height(h, [&](std::int64_t n, std::uint64_t d) {
    if (seen++ == offset) {
      out = Rational(BigInt(static_cast<long>(n)), BigInt(static_cast<unsigned long>(d)));
      return true;
    }
    return false;
  });
  return out;
}

BigInt rat_index0(const Rational& q) {
  BigInt an = abs(q.num());
  BigInt hb = std::max(an, q.den());
  if (!hb.fits_ulong_p() || hb.get_ui() >= kMaxHeight)
    fail(Errc::capacity_exceeded, "rational height beyond enumeration cap");
  std::uint64_t h = hb.get_ui();
  std::int64_t tn = q.num().get_si();
  std::uint64_t td = q.den().get_ui();
  std::uint64_t seen = 0;
  bool found = false;
  walk_height(h, [&](std::int64_t n, std::uint64_t d) {
    if (n == tn && d == td) {
      found = true;
      return true;
    }
    ++seen;
    return false;
  });
  if (!found) fail(Errc::invalid_argument, "rational not found in its height block");
  return BigInt(static_cast<unsigned long>(heights().before(h) + seen));
}

BigInt int_at0(const BigInt& n) {
  if (n == 0) return -1;
  if (n == 1) return 0;
  if (n == 2) return 1;
  BigInt t = (n + 1) / 2;
  return n % 2 == 1 ? BigInt(-t) : t;
}

BigInt int_index0(const BigInt& z) {
  if (z == -1) return 0;
  if (z == 0) return 1;
  if (z == 1) return 2;
  return z < 0 ? BigInt(-2 * z - 1) : BigInt(2 * z);
}

}  // namespace

Rational enum_rat(const BigInt& n) {
  if (n < 1) fail(Errc::invalid_argument, "enum_rat index must be >= 1");
  return rat_at0(n - 1);
}

BigInt rat_index(const Rational& q) { return rat_index0(q) + 1; }

BigInt enum_int(const BigInt& n) {
  if (n < 1) fail(Errc::invalid_argument, "enum_int index must be >= 1");
  return int_at0(n - 1);
}

BigInt int_index(const BigInt& z) { return int_index0(z) + 1; }

// --- lambda ---

QVec enum_lambda(const BigInt& i) {
  if (i < 1) fail(Errc::invalid_argument, "lambda indices start at 1");
  std::vector<BigInt> seq = decode_sequence(i - 1);
  QVec v;
  if (seq.empty()) return v;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    Rational q = rat_at0(seq[j]);
    if (j + 1 == seq.size() && q.is_zero()) return QVec{};
    v.set(j + 1, q);
  }
  return v;
}

BigInt lambda_index(const QVec& v) {
  if (v.empty()) return 1;
  std::vector<BigInt> seq(v.max_index());
  for (Index j = 1; j <= v.max_index(); ++j) {
    const Rational* q = v.find(j);
    seq[j - 1] = rat_index0(q ? *q : Rational(0));
  }
  return encode_sequence(seq) + 1;
}

// --- integer vectors ---

ZVec decode_intvec_code(const BigInt& code) {
  std::vector<BigInt> seq = decode_sequence(code);
  ZVec v;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    BigInt z = int_at0(seq[j]);
    if (j + 1 == seq.size() && z == 0) return ZVec{};
    v.set(j + 1, z);
  }
  return v;
}

BigInt intvec_code(const ZVec& v) {
  if (v.empty()) return 0;
  std::vector<BigInt> seq(v.max_index());
  for (Index j = 1; j <= v.max_index(); ++j) {
    const BigInt* z = v.find(j);
    seq[j - 1] = int_index0(z ? *z : BigInt(0));
  }
  return encode_sequence(seq);
}

namespace {

// Ascending list of sequence codes that decode to nonzero integer vectors.
class IntvecCodes {
 public:
  std::uint64_t code_of(std::uint64_t i) {
    {
      std::shared_lock lock(mu_);
      if (i <= codes_.size()) return codes_[i - 1];
    }
    std::unique_lock lock(mu_);
    while (codes_.size() < i) step_locked();
    return codes_[i - 1];
  }

  std::uint64_t index_of(std::uint64_t code) {
    {
      std::shared_lock lock(mu_);
      if (next_ > code) return lookup(code);
    }
    std::unique_lock lock(mu_);
    while (next_ <= code) step_locked();
    return lookup(code);
  }

 private:
  std::uint64_t lookup(std::uint64_t code) const {
    auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
    if (it == codes_.end() || *it != code) fail(Errc::invalid_argument, "code decodes to the zero vector");
    return static_cast<std::uint64_t>(it - codes_.begin()) + 1;
  }

  void step_locked() {
    if (next_ > limits().intvec_scan_cap)
      fail(Errc::capacity_exceeded,
           "integer-vector scan passed intvec_scan_cap " + std::to_string(limits().intvec_scan_cap));
    BigInt c(static_cast<unsigned long>(next_));
    if (!decode_intvec_code(c).empty()) codes_.push_back(next_);
    ++next_;
  }

  std::shared_mutex mu_;
  std::vector<std::uint64_t> codes_;
  std::uint64_t next_ = 0;
};

IntvecCodes& intvec_codes() {
  static IntvecCodes t;
  return t;
}

}  // namespace

ZVec enum_intvec(std::uint64_t i) {
  if (i == 0) fail(Errc::invalid_argument, "integer-vector indices start at 1");
  return decode_intvec_code(BigInt(static_cast<unsigned long>(intvec_codes().code_of(i))));
}

std::uint64_t intvec_index(const ZVec& v) {
  if (v.empty()) fail(Errc::invalid_argument, "the zero vector has no V-index");
  BigInt code = intvec_code(v);
  if (!code.fits_ulong_p() || code.get_ui() > limits().intvec_scan_cap)
    fail(Errc::capacity_exceeded, "integer-vector code " + code.get_str() + " exceeds intvec_scan_cap");
  return intvec_codes().index_of(code.get_ui());
}

ZVec prime_partition_vector(std::uint64_t p) {
  if (!is_prime(p)) fail(Errc::invalid_argument, std::to_string(p) + " is not prime");
  std::uint64_t n = prime_index(p);
  auto [i, j] = unpair(BigInt(static_cast<unsigned long>(n)));
  return enum_intvec(to_u64(i));
}

std::vector<std::uint64_t> partition_members(const ZVec& x, std::uint64_t count) {
  if (count == 0) fail(Errc::invalid_argument, "count must be positive");
  BigInt i(static_cast<unsigned long>(intvec_index(x)));
  std::vector<std::uint64_t> out;
  out.reserve(count);
  for (std::uint64_t j = 1; j <= count; ++j) {
    BigInt n = pair(i, BigInt(static_cast<unsigned long>(j)));
    if (!fits_u64(n)) fail(Errc::capacity_exceeded, "prime index overflow");
    out.push_back(nth_prime(to_u64(n)));
  }
  return out;
}

}  // namespace tfab

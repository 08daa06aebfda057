#include "tfab/construction.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <tuple>

#include "tfab/bookkeeping.hpp"
#include "tfab/errors.hpp"
#include "tfab/limits.hpp"
#include "tfab/primes.hpp"

namespace tfab {

namespace {

// Decoded lambda_i with the lcm of its denominators, grown on demand.
// std::deque keeps references stable.
struct LambdaInfo {
  QVec lam;
  BigInt den;
};

class LambdaMemo {
 public:
  const LambdaInfo& get(std::uint64_t i) {
    {
      std::shared_lock lock(mu_);
      if (i <= table_.size()) return table_[i - 1];
    }
    std::unique_lock lock(mu_);
    while (table_.size() < i) {
      QVec lam = enum_lambda(BigInt(static_cast<unsigned long>(table_.size() + 1)));
      BigInt den = common_denominator(lam);
      table_.push_back(LambdaInfo{std::move(lam), std::move(den)});
    }
    return table_[i - 1];
  }

 private:
  std::shared_mutex mu_;
  std::deque<LambdaInfo> table_;
};

LambdaMemo& lambdas() {
  static LambdaMemo m;
  return m;
}

std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t p) {
  std::int64_t r0 = static_cast<std::int64_t>(p), r1 = static_cast<std::int64_t>(a % p);
  std::int64_t t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  if (r0 != 1) fail(Errc::invalid_argument, "no inverse mod p");
  return static_cast<std::uint64_t>(t0 < 0 ? t0 + static_cast<std::int64_t>(p) : t0);
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

// <-lambda, x> mod p for p-integral lambda, in word arithmetic.
std::uint64_t neg_inner_mod(const QVec& lam, const ZVec& x, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (const auto& [j, xj] : x) {
    const Rational* q = lam.find(j);
    if (q == nullptr) continue;
    std::uint64_t num = mpz_fdiv_ui(q->num().get_mpz_t(), p);
    std::uint64_t den = mpz_fdiv_ui(q->den().get_mpz_t(), p);
    std::uint64_t xr = mpz_fdiv_ui(xj.get_mpz_t(), p);
    acc = (acc + mul_mod(mul_mod(num, mod_inverse(den, p), p), xr, p)) % p;
  }
  return (p - acc) % p;
}

}  // namespace

PrimeContext build_context(std::uint64_t p) {
  if (!is_prime(p)) fail(Errc::invalid_argument, std::to_string(p) + " is not prime");
  if (p > limits().prime_cap) fail(Errc::capacity_exceeded, "prime above prime_cap");
  PrimeContext ctx;
  ctx.p = p;
  ctx.xvec = prime_partition_vector(p);
  ctx.l = 1 + std::max<std::uint64_t>(p, ctx.xvec.max_index());

  ctx.xmod.assign(ctx.l, 0);
  ResVec xr = reduce_vec(ctx.xvec, p, 1);
  for (const auto& [j, v] : xr.entries) ctx.xmod[j - 1] = v.get_ui();
  ctx.pivot = xr.entries.max_index();
  if (ctx.pivot != 0) ctx.pivot_inv = mod_inverse(ctx.xmod[ctx.pivot - 1], p);

  for (std::uint64_t i = 1; i + 1 < p; ++i) {
    const LambdaInfo& info = lambdas().get(i);
    if (mpz_divisible_ui_p(info.den.get_mpz_t(), p)) continue;
    ctx.relevant.push_back(i);
    ctx.forbidden.push_back(neg_inner_mod(info.lam, ctx.xvec, p));
  }

  if (ctx.pivot == 0) {
    ctx.a = 0;
  } else {
    std::set<std::uint64_t> bad(ctx.forbidden.begin(), ctx.forbidden.end());
    ctx.a = 0;
    for (std::uint64_t c = 1; c < p; ++c) {
      if (!bad.count(c)) {
        ctx.a = c;
        break;
      }
    }
    if (ctx.a == 0) fail(Errc::invalid_argument, "no legal hyperplane constant");  // unreachable
  }
  return ctx;
}

std::shared_ptr<const PrimeContext> context(std::uint64_t p) {
  static std::shared_mutex mu;
  static std::map<std::uint64_t, std::shared_ptr<const PrimeContext>> cache;
  {
    std::shared_lock lock(mu);
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const PrimeContext>(build_context(p));
  std::unique_lock lock(mu);
  auto [it, inserted] = cache.emplace(p, std::move(built));
  return it->second;
}

BigInt m_size(const PrimeContext& ctx) {
  return pow_u64(ctx.p, ctx.reduction_is_zero() ? ctx.l : ctx.l - 1);
}

bool m_contains(const PrimeContext& ctx, const ResVec& v) {
  if (v.prime != ctx.p || v.exponent != 1)
    fail(Errc::invalid_argument, "vector is not over Z/p for this context");
  if (v.entries.max_index() > ctx.l)
    fail(Errc::invalid_argument, "support outside [1, l]");
  if (ctx.reduction_is_zero()) return true;
  unsigned __int128 acc = 0;
  for (const auto& [j, r] : v.entries) acc += static_cast<unsigned __int128>(r.get_ui()) * ctx.xmod[j - 1];
  return static_cast<std::uint64_t>(acc % ctx.p) == ctx.a;
}

std::vector<std::uint64_t> m_element(const PrimeContext& ctx, const BigInt& n) {
  if (n < 1 || n > m_size(ctx)) fail(Errc::invalid_argument, "M index out of range");
  const std::uint64_t p = ctx.p;
  std::vector<std::uint64_t> out(ctx.l, 0);
  BigInt rest = n - 1;
  for (Index j = 1; j <= ctx.l && rest > 0; ++j) {
    if (j == ctx.pivot) continue;
    out[j - 1] = mpz_fdiv_q_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
  }
  if (ctx.pivot != 0) {
    unsigned __int128 acc = 0;
    for (Index j = 1; j <= ctx.l; ++j)
      if (j != ctx.pivot) acc += static_cast<unsigned __int128>(out[j - 1]) * ctx.xmod[j - 1];
    std::uint64_t partial = static_cast<std::uint64_t>(acc % p);
    std::uint64_t need = (ctx.a + p - partial) % p;
    out[ctx.pivot - 1] =
        static_cast<std::uint64_t>(static_cast<unsigned __int128>(need) * ctx.pivot_inv % p);
  }
  return out;
}

ResVec m_enumerate(const PrimeContext& ctx, const BigInt& n) {
  std::vector<std::uint64_t> dense = m_element(ctx, n);
  ResVec v{ctx.p, 1, {}};
  for (std::size_t j = 0; j < dense.size(); ++j)
    if (dense[j] != 0) v.entries.set(j + 1, BigInt(static_cast<unsigned long>(dense[j])));
  return v;
}

std::vector<std::uint64_t> stream_item(const PrimeContext& ctx, const BigInt& n) {
  if (n < 1) fail(Errc::invalid_argument, "stream positions start at 1");
  BigInt pos;
  BigInt size = m_size(ctx);
  BigInt shifted = n - 1;
  mpz_fdiv_r(pos.get_mpz_t(), shifted.get_mpz_t(), size.get_mpz_t());
  return m_element(ctx, pos + 1);
}

unsigned perturbation_exponent(std::uint64_t p, std::uint64_t k) {
  BigInt bound = BigInt(static_cast<unsigned long>(k)) * static_cast<unsigned long>(p - 1);
  unsigned s = 0;
  BigInt pw(static_cast<unsigned long>(p));
  while (pw <= bound) {
    pw *= static_cast<unsigned long>(p);
    ++s;
  }
  return s;
}

BigInt block_first_item(std::uint64_t k) {
  BigInt kk(static_cast<unsigned long>(k));
  return (kk - 1) * (kk + 2) / 2 + 1;
}

PhiBlock phi_block(const PrimeContext& ctx, std::uint64_t k) {
  if (k == 0) fail(Errc::invalid_argument, "block index must be >= 1");
  if (k > limits().residue_cap) fail(Errc::capacity_exceeded, "block dimension above residue_cap");
  PhiBlock block;
  block.k = k;
  block.s = perturbation_exponent(ctx.p, k);
  block.perturbation = pow_u64(ctx.p, block.s + 1);
  block.first_item = block_first_item(k);
  for (std::uint64_t j = 0; j <= k; ++j) {
    std::vector<std::uint64_t> lift = stream_item(ctx, block.first_item + static_cast<unsigned long>(j));
    ZVec v;
    for (std::size_t c = 0; c < lift.size(); ++c)
      if (lift[c] != 0) v.set(c + 1, BigInt(static_cast<unsigned long>(lift[c])));
    if (j >= 1) {
      const BigInt* cur = v.find(j);
      v.set(j, (cur ? *cur : BigInt(0)) + block.perturbation);
    }
    block.vectors.push_back(std::move(v));
  }
  return block;
}

std::uint64_t last_visible_block(std::uint64_t p, unsigned m) {
  if (m <= 1) return 0;
  // visible iff s(k) + 1 < m iff k(p-1) < p^(m-1)
  BigInt top = pow_u64(p, m - 1) - 1;
  BigInt k = top / static_cast<unsigned long>(p - 1);
  return to_u64(k);
}

// --- ResidueSet ---

BigInt ResidueSet::hyper_size() const { return pow_u64(prime, free_coords.size()); }

void ResidueSet::hyper_element(std::uint64_t t, std::uint64_t* out) const {
  std::fill(out, out + window, 0);
  for (Index j : free_coords) {
    out[j - 1] = t % prime;
    t /= prime;
  }
  if (pivot != 0) {
    unsigned __int128 acc = 0;
    for (Index j : free_coords) acc += static_cast<unsigned __int128>(out[j - 1]) * coeff[j - 1];
    std::uint64_t partial = static_cast<std::uint64_t>(acc % prime);
    std::uint64_t need = (a + prime - partial) % prime;
    out[pivot - 1] = static_cast<std::uint64_t>(static_cast<unsigned __int128>(need) * pivot_inv % prime);
  }
}

std::vector<std::uint64_t> ResidueSet::hyper_element(std::uint64_t t) const {
  std::vector<std::uint64_t> out(window);
  hyper_element(t, out.data());
  return out;
}

bool ResidueSet::contains(const std::vector<std::uint64_t>& r) const {
  if (r.size() != window) return false;
  for (const auto& b : block_vectors)
    if (b == r) return true;
  std::vector<bool> is_free(window + 1, false);
  for (Index j : free_coords) is_free[j] = true;
  for (Index j = 1; j <= window; ++j) {
    if (r[j - 1] >= prime && j != pivot) return false;
    if (!is_free[j] && j != pivot && r[j - 1] != 0) return false;
  }
  if (pivot == 0) return true;
  if (r[pivot - 1] >= prime) return false;
  unsigned __int128 acc = 0;
  for (Index j = 1; j <= window; ++j) acc += static_cast<unsigned __int128>(r[j - 1]) * coeff[j - 1];
  return static_cast<std::uint64_t>(acc % prime) == a;
}

std::vector<std::vector<std::uint64_t>> ResidueSet::materialize() const {
  BigInt hs = hyper_size();
  BigInt total = hs + static_cast<unsigned long>(block_vectors.size());
  if (total > static_cast<unsigned long>(limits().residue_cap))
    fail(Errc::capacity_exceeded, "residue set of size " + total.get_str() + " exceeds residue_cap");
  std::set<std::vector<std::uint64_t>> seen;
  std::uint64_t n = to_u64(hs);
  for (std::uint64_t t = 0; t < n; ++t) seen.insert(hyper_element(t));
  for (const auto& b : block_vectors) seen.insert(b);
  return {seen.begin(), seen.end()};
}

ResidueSet residue_set(const PrimeContext& ctx, Index w, unsigned m) {
  if (m == 0) fail(Errc::invalid_argument, "residue exponent must be positive");
  const std::uint64_t p = ctx.p;
  BigInt mod = pow_u64(p, m);
  if (mpz_sizeinbase(mod.get_mpz_t(), 2) > 62)
    fail(Errc::capacity_exceeded, "modulus p^m = " + mod.get_str() + " beyond 62 bits");
  ResidueSet s;
  s.prime = p;
  s.exponent = m;
  s.window = w;
  s.modulus = to_u64(mod);
  s.a = ctx.a;
  s.coeff.assign(w, 0);
  for (Index j = 1; j <= w && j <= ctx.l; ++j) s.coeff[j - 1] = ctx.xmod[j - 1];
  const bool constrained = ctx.pivot != 0 && ctx.pivot <= w;
  if (constrained) {
    s.pivot = ctx.pivot;
    s.pivot_inv = ctx.pivot_inv;
  }
  for (Index j = 1; j <= w && j <= ctx.l; ++j)
    if (j != s.pivot) s.free_coords.push_back(j);

  const std::uint64_t last = last_visible_block(p, m);
  std::uint64_t extra = 0;
  for (std::uint64_t k = 1; k <= last; ++k) {
    extra += std::min<std::uint64_t>(k, w);
    if (extra > limits().residue_cap)
      fail(Errc::capacity_exceeded, "visible block vectors exceed residue_cap");
  }
  for (std::uint64_t k = 1; k <= last; ++k) {
    unsigned sk = perturbation_exponent(p, k);
    std::uint64_t bump = to_u64(pow_u64(p, sk + 1));
    BigInt first = block_first_item(k);
    for (std::uint64_t j = 1; j <= std::min<std::uint64_t>(k, w); ++j) {
      std::vector<std::uint64_t> lift = stream_item(ctx, first + static_cast<unsigned long>(j));
      std::vector<std::uint64_t> r(w, 0);
      for (Index c = 1; c <= w && c <= lift.size(); ++c) r[c - 1] = lift[c - 1];
      r[j - 1] = (r[j - 1] + bump) % s.modulus;
      s.block_vectors.push_back(std::move(r));
    }
  }
  return s;
}

}  // namespace tfab

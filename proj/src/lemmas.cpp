#include "tfab/lemmas.hpp"

#include <set>

#include "tfab/bookkeeping.hpp"
#include "tfab/construction.hpp"
#include "tfab/errors.hpp"
#include "tfab/json_io.hpp"
#include "tfab/limits.hpp"
#include "tfab/linalg.hpp"
#include "tfab/primes.hpp"
#include "tfab/sampling.hpp"
#include "tfab/theorems.hpp"

namespace tfab {

using nlohmann::json;

namespace {

constexpr std::pair<Lemma, const char*> kNames[] = {
    {Lemma::m_props, "m-props"},
    {Lemma::phi_props, "phi-props"},
    {Lemma::int_inclusion, "int-inclusion"},
    {Lemma::l_purity, "L-purity"},
    {Lemma::div_infinitude, "div-infinitude"},
    {Lemma::purification_disjoint, "purification-disjoint"},
};

// Row echelon basis over F_p, grown one vector at a time.
class ModSpan {
 public:
  explicit ModSpan(std::uint64_t p) : p_(p) {}

  // True when v was independent of the rows so far.
  bool add(std::vector<std::uint64_t> v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::uint64_t c = v[pivots_[r]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        v[j] = (v[j] + (p_ - c) * rows_[r][j]) % p_;
    }
    std::size_t piv = 0;
    while (piv < v.size() && v[piv] == 0) ++piv;
    if (piv == v.size()) return false;
    const std::uint64_t inv = inverse(v[piv]);
    for (auto& x : v) x = x * inv % p_;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::uint64_t c = rows_[r][piv];
      if (c == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) rows_[r][j] = (rows_[r][j] + (p_ - c) * v[j]) % p_;
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(piv);
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  std::uint64_t inverse(std::uint64_t a) const {
    for (std::uint64_t b = 1; b < p_; ++b)
      if (a * b % p_ == 1) return b;
    throw std::logic_error("no inverse mod p");
  }

  std::uint64_t p_;
  std::vector<std::vector<std::uint64_t>> rows_;
  std::vector<std::size_t> pivots_;
};

std::vector<std::uint64_t> dense_mod(const QVec& v, std::uint64_t p, std::uint64_t k) {
  std::vector<std::uint64_t> out(k, 0);
  for (const auto& [j, q] : v)
    if (j <= k) out[j - 1] = reduce_mod(q, p, 1).value.get_ui();
  return out;
}

std::vector<std::uint64_t> dense_mod(const ResVec& v, std::uint64_t k) {
  std::vector<std::uint64_t> out(k, 0);
  for (const auto& [j, r] : v.entries)
    if (j <= k) out[j - 1] = r.get_ui();
  return out;
}

class Report {
 public:
  explicit Report(Lemma l) { rep_.lemma = lemma_name(l); }

  // Records one check; the first failure becomes the counterexample.
  bool expect(bool ok, const std::string& what, json data = nullptr) {
    ++rep_.checks;
    if (!ok && rep_.pass) {
      rep_.pass = false;
      rep_.counterexample = {{"check", what}, {"data", std::move(data)}};
    }
    return ok;
  }

  json& details() { return rep_.details; }
  LemmaReport take() { return std::move(rep_); }

 private:
  LemmaReport rep_;
};

std::vector<std::uint64_t> primes_or(const std::optional<std::uint64_t>& p, std::vector<std::uint64_t> dflt) {
  if (!p) return dflt;
  if (!is_prime(*p)) fail(Errc::invalid_argument, std::to_string(*p) + " is not prime");
  return {*p};
}

// Independent recomputation of the relevant set, the forbidden values and a.
void check_a_legality(const PrimeContext& ctx, Report& rep) {
  const std::uint64_t p = ctx.p;
  const QVec x = to_rational(prime_partition_vector(p));
  std::vector<std::uint64_t> relevant, forbidden;
  for (std::uint64_t i = 1; i + 1 < p; ++i) {
    QVec lam = enum_lambda(BigInt(static_cast<unsigned long>(i)));
    bool integral = true;
    for (const auto& [j, q] : lam) integral = integral && vp(q, p).at_least(0);
    if (!integral) continue;
    relevant.push_back(i);
    Rational ip = inner(-lam, x);
    forbidden.push_back(reduce_mod(ip, p, 1).value.get_ui());
  }
  json where = {{"p", p}};
  rep.expect(relevant == ctx.relevant, "relevant indices", where);
  rep.expect(forbidden == ctx.forbidden, "forbidden values", where);
  const bool x_zero = dense_mod(x, p, x.max_index()) == std::vector<std::uint64_t>(x.max_index(), 0);
  if (x_zero) {
    rep.expect(ctx.a == 0, "a = 0 when [x] = 0", where);
    return;
  }
  std::set<std::uint64_t> bad(forbidden.begin(), forbidden.end());
  rep.expect(ctx.a != 0, "a nonzero", where);
  rep.expect(!bad.count(ctx.a), "a avoids every forbidden value", where);
  std::uint64_t least = 1;
  while (bad.count(least)) ++least;
  rep.expect(ctx.a == least, "a is the least legal residue", where);
}

LemmaReport m_props(const LemmaParams& params) {
  Report rep(Lemma::m_props);
  const std::uint64_t kmax = params.kmax.value_or(4);
  json per_prime = json::array();
  for (std::uint64_t p : primes_or(params.p, {2, 3, 5, 7})) {
    const PrimeContext ctx = build_context(p);
    check_a_legality(ctx, rep);
    const QVec x = to_rational(prime_partition_vector(p));
    const BigInt size = m_size(ctx);
    json kinfo = json::array();
    for (std::uint64_t k = 1; k <= std::min(ctx.l, kmax); ++k) {
      // base set M and each relevant translate [lambda_i] + M
      std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> shifts{{0, std::vector<std::uint64_t>(k, 0)}};
      for (std::uint64_t i : ctx.relevant) shifts.push_back({i, dense_mod(enum_lambda(BigInt(static_cast<unsigned long>(i))), p, k)});
      json translates = json::array();
      for (const auto& [i, shift] : shifts) {
        ModSpan span(p);
        BigInt used = 0;
        bool values_ok = true;
        for (BigInt n = 1; n <= size && span.rank() < k; ++n) {
          if (n > static_cast<unsigned long>(limits().residue_cap))
            fail(Errc::capacity_exceeded, "M enumeration passed residue_cap");
          ResVec m = m_enumerate(ctx, n);
          used = n;
          // the hyperplane value, recomputed from x directly
          values_ok = values_ok && reduce_mod(inner(to_rational(m.entries), x), p, 1).value == ctx.a;
          std::vector<std::uint64_t> v = dense_mod(m, k);
          for (std::size_t j = 0; j < k; ++j) v[j] = (v[j] + shift[j]) % p;
          span.add(std::move(v));
        }
        json where = {{"p", p}, {"k", k}, {"translate_index", i}};
        rep.expect(span.rank() == k, "truncations of M span (Z/p)^k", where);
        rep.expect(values_ok, "<m, [x]> = a on enumerated elements", where);
        translates.push_back({{"translate_index", i}, {"elements_used", used.get_str()}});
      }
      kinfo.push_back({{"k", k}, {"translates", translates}});
    }
    per_prime.push_back({{"p", p}, {"l", ctx.l}, {"a", ctx.a}, {"relevant", ctx.relevant}, {"k", kinfo}});
  }
  rep.details()["primes"] = per_prime;
  return rep.take();
}

std::vector<Rational> truncated_row(const ZVec& phi, const QVec& lambda, std::uint64_t k) {
  std::vector<Rational> row(k);
  for (const auto& [j, v] : phi)
    if (j <= k) row[j - 1] += Rational(v);
  for (const auto& [j, q] : lambda)
    if (j <= k) row[j - 1] += q;
  return row;
}

LemmaReport phi_props(const LemmaParams& params) {
  Report rep(Lemma::phi_props);
  const std::uint64_t kmax = params.kmax.value_or(6);
  const std::uint64_t lambdas = params.samples.value_or(20);
  Sampler rng(params.seed);
  json per_prime = json::array();
  for (std::uint64_t p : primes_or(params.p, {2, 3, 5})) {
    const auto ctx = context(p);
    const QVec x = to_rational(ctx->xvec);
    json blocks = json::array();
    for (std::uint64_t k = 1; k <= kmax; ++k) {
      const PhiBlock block = phi_block(*ctx, k);
      json where = {{"p", p}, {"k", k}};
      rep.expect(block.vectors.size() == k + 1, "block has k+1 vectors", where);
      const BigInt bound = BigInt(static_cast<unsigned long>(k * (p - 1)));
      rep.expect(pow_u64(p, block.s + 1) > bound && (block.s == 0 || pow_u64(p, block.s) <= bound),
                 "s is least with p^(s+1) > k(p-1)", where);
      IntMatrix diff(k, std::vector<BigInt>(k));
      for (std::size_t j = 1; j <= k; ++j)
        for (std::size_t c = 1; c <= k; ++c) {
          const BigInt* a = block.vectors[j].find(c);
          const BigInt* b = block.vectors[0].find(c);
          diff[j - 1][c - 1] = (a ? *a : BigInt(0)) - (b ? *b : BigInt(0));
        }
      const BigInt det = determinant(diff);
      rep.expect(det != 0, "difference matrix nonsingular", where);
      for (const auto& v : block.vectors) {
        ResVec r = reduce_vec(v, p, 1);
        const bool inside = r.entries.max_index() <= ctx->l;
        rep.expect(inside && m_contains(*ctx, r), "reduction mod p lies in M", where);
        rep.expect(reduce_mod(inner(v, x), p, 1).value == ctx->a, "<[phi], [x]> = a", where);
      }
      for (std::uint64_t t = 0; t < lambdas; ++t) {
        QVec lam = rng.rational_vector(k + 1, 9, 9);
        RatMatrix rows;
        for (const auto& v : block.vectors) rows.push_back(truncated_row(v, lam, k));
        json at = where;
        at["lambda"] = io::to_json(lam);
        rep.expect(rank(rows) == k, "translated truncations span Q^k", at);
      }
      blocks.push_back({{"k", k}, {"s", block.s}, {"determinant", det.get_str()}});
    }
    // Reductions of the Phi vectors themselves, block after block, span (Z/p)^k
    // for k <= min(p, l), also after each relevant translate.
    json spans = json::array();
    const BigInt cycle = m_size(*ctx);
    for (std::uint64_t k = 1; k <= std::min({p, ctx->l, kmax}); ++k) {
      std::vector<std::pair<std::uint64_t, std::vector<std::uint64_t>>> shifts{{0, std::vector<std::uint64_t>(k, 0)}};
      for (std::uint64_t i : ctx->relevant)
        shifts.push_back({i, dense_mod(enum_lambda(BigInt(static_cast<unsigned long>(i))), p, k)});
      for (const auto& [i, shift] : shifts) {
        ModSpan span(p);
        BigInt seen = 0;
        for (std::uint64_t b = 1; span.rank() < k && seen <= cycle; ++b) {
          for (const auto& v : phi_block(*ctx, b).vectors) {
            ++seen;
            std::vector<std::uint64_t> r = dense_mod(reduce_vec(v, p, 1), k);
            for (std::size_t j = 0; j < k; ++j) r[j] = (r[j] + shift[j]) % p;
            span.add(std::move(r));
          }
        }
        rep.expect(span.rank() == k, "reductions of Phi truncated to k span (Z/p)^k",
                   {{"p", p}, {"k", k}, {"translate_index", i}});
        spans.push_back({{"k", k}, {"translate_index", i}, {"vectors_used", seen.get_str()}});
      }
    }
    per_prime.push_back({{"p", p}, {"blocks", blocks}, {"reduction_spans", spans}});
  }
  rep.details()["primes"] = per_prime;
  rep.details()["lambdas_per_block"] = lambdas;
  return rep.take();
}

LemmaReport int_inclusion(const LemmaParams& params) {
  Report rep(Lemma::int_inclusion);
  const std::uint64_t n = params.samples.value_or(100);
  Sampler rng(params.seed);
  for (std::uint64_t t = 0; t < n; ++t) {
    GroupElement e = rng.integer_element(5, 1000);
    rep.expect(is_member(e), "integer element is a member", io::to_json(e));
  }
  for (std::uint64_t t = 0; t < n; ++t) {
    Rational q;
    do {
      q = rng.rational(1000, 60);
    } while (q.is_integer());
    GroupElement e{q, {}};
    rep.expect(!is_member(e) && !in_L(e), "non-integer (x0, 0) is not a member", io::to_json(e));
  }
  rep.details() = {{"integer_samples", n}, {"non_integer_samples", n}};
  return rep.take();
}

LemmaReport l_purity(const LemmaParams& params) {
  Report rep(Lemma::l_purity);
  const std::uint64_t n = params.samples.value_or(100);
  Sampler rng(params.seed);
  const std::vector<long> multipliers{2, 3, 5};
  std::uint64_t premise = 0;
  for (std::uint64_t t = 0; t < n; ++t) {
    const long m = rng.pick(multipliers);
    GroupElement g;
    switch (rng.below(3)) {
      case 0:  // n g in L by construction
        g = GroupElement{Rational(rng.integer(500), BigInt(m)), {}};
        break;
      case 1:
        g = GroupElement{Rational(rng.integer(500), BigInt(m)), to_rational(rng.integer_vector(3, 20))};
        break;
      default:
        g = GroupElement{rng.rational(50, 6), rng.rational_vector(3, 10, 6)};
    }
    const bool holds = is_member(g) && in_L(BigInt(m) * g);
    if (holds) ++premise;
    rep.expect(!holds || in_L(g), "member g with n g in L lies in L",
               {{"g", io::to_json(g)}, {"n", m}});
  }
  rep.details() = {{"probes", n}, {"premise_held", premise}};
  return rep.take();
}

LemmaReport div_infinitude(const LemmaParams& params) {
  Report rep(Lemma::div_infinitude);
  GroupElement e;
  if (params.element) {
    e = *params.element;
  } else {
    Sampler rng(params.seed);
    e = GroupElement{Rational(rng.integer(100)), to_rational(enum_intvec(1 + rng.below(40)))};
  }
  if (!is_member(e)) fail(Errc::not_in_group, "element is not in G");
  const BigInt d = common_denominator(e);
  const ZVec y = to_integer(Rational(d) * e.x);
  if (y.empty()) fail(Errc::no_quotient_content, "element lies in L; its class in G/L is zero");

  std::vector<std::uint64_t> primes;
  for (std::uint64_t want = params.n; primes.size() < params.n; want *= 2) {
    primes.clear();
    for (std::uint64_t p : partition_members(y, want))
      if (!mpz_divisible_ui_p(d.get_mpz_t(), p) && primes.size() < params.n) primes.push_back(p);
  }
  json witnesses = json::array();
  for (std::uint64_t p : primes) {
    DivWitness w = div_witness(e, p);
    CheckResult c = verify_witness(e, w);
    json where = io::to_json(w, e);
    rep.expect(c.ok, "witness verifies", where);
    // recheck the defining identity without the verifier
    rep.expect(in_L(e - BigInt(static_cast<unsigned long>(p)) * w.eta(e)), "e - p eta in L", where);
    rep.expect(is_member(w.eta(e)), "eta in G", where);
    witnesses.push_back(std::move(where));
  }
  std::set<std::uint64_t> distinct(primes.begin(), primes.end());
  rep.expect(distinct.size() == params.n, "distinct primes");
  rep.details() = {{"element", io::to_json(e)}, {"cleared_vector", io::to_json(y)},
                   {"d", d.get_str()}, {"primes", primes}, {"witnesses", witnesses}};
  return rep.take();
}

// Members with nontrivial denominators: z = (-a/p, y/p) for small class vectors.
std::vector<GroupElement> fractional_members() {
  std::vector<GroupElement> out;
  for (std::uint64_t i = 1; i <= 6; ++i) {
    const ZVec y = enum_intvec(i);
    const GroupElement e{Rational(0), to_rational(y)};
    for (std::uint64_t p : partition_members(y, 2)) out.push_back(div_witness(e, p).z);
  }
  return out;
}

LemmaReport purification_disjoint(const LemmaParams& params) {
  Report rep(Lemma::purification_disjoint);
  const std::uint64_t n = params.samples.value_or(100);
  Sampler rng(params.seed);
  const std::vector<GroupElement> pool = fractional_members();
  auto draw = [&] {
    std::vector<GroupElement> gens;
    const std::uint64_t count = 1 + rng.below(2);
    for (std::uint64_t c = 0; c < count; ++c) {
      GroupElement g = rng.coin() ? rng.pick(pool) : rng.integer_element(3, 4);
      gens.push_back(BigInt(static_cast<long>(rng.between(1, 3))) * g);
    }
    return gens;
  };
  auto closure = [](const std::vector<GroupElement>& gens) {
    CertifyOutcome o = certify_free(gens);
    if (o.status == CertifyStatus::complete) return o.certificate->basis;
    return purify(gens).basis;
  };
  std::uint64_t tested = 0, grew = 0;
  for (std::uint64_t t = 0; t < n; ++t) {
    std::vector<GroupElement> a = draw(), b = draw();
    if (!spans_disjoint(a, b)) continue;
    ++tested;
    std::vector<GroupElement> pa = closure(a), pb = closure(b);
    if (!z_span_contains(a, pa) || !z_span_contains(b, pb)) ++grew;
    rep.expect(spans_disjoint(pa, pb), "purifications of disjoint subgroups are disjoint",
               {{"a", io::to_json(a)}, {"b", io::to_json(b)}});
    rep.expect(z_span_contains(pa, a) && z_span_contains(pb, b), "purification contains the subgroup",
               {{"a", io::to_json(a)}, {"b", io::to_json(b)}});
  }
  rep.details() = {{"pairs_drawn", n}, {"disjoint_pairs", tested}, {"pairs_with_growth", grew}};
  return rep.take();
}

}  // namespace

const char* lemma_name(Lemma l) {
  for (const auto& [k, name] : kNames)
    if (k == l) return name;
  return "?";
}

std::optional<Lemma> lemma_from_name(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (name == n) return k;
  return std::nullopt;
}

LemmaReport check_lemma(Lemma which, const LemmaParams& params) {
  switch (which) {
    case Lemma::m_props: return m_props(params);
    case Lemma::phi_props: return phi_props(params);
    case Lemma::int_inclusion: return int_inclusion(params);
    case Lemma::l_purity: return l_purity(params);
    case Lemma::div_infinitude: return div_infinitude(params);
    case Lemma::purification_disjoint: return purification_disjoint(params);
  }
  fail(Errc::invalid_argument, "unknown lemma");
}

}  // namespace tfab

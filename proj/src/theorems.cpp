#include "tfab/theorems.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "tfab/construction.hpp"
#include "tfab/errors.hpp"
#include "tfab/limits.hpp"
#include "tfab/primes.hpp"

namespace tfab {

// --- divisibility witnesses ---

GroupElement DivWitness::eta(const GroupElement& e) const {
  if (!bezout) return z;
  return bezout->first * z + bezout->second * e;
}

namespace {

ZVec cleared_vector(const GroupElement& e, const BigInt& d) { return to_integer(Rational(d) * e.x); }

}  // namespace

DivWitness div_witness(const GroupElement& e, std::uint64_t p) {
  MembershipVerdict v = member(e);
  if (!v.member) fail(Errc::not_in_group, "element is not in G: " + v.reason);
  DivWitness w;
  w.d = common_denominator(e);
  ZVec y = cleared_vector(e, w.d);
  if (y.empty()) fail(Errc::no_quotient_content, "element lies in L; its class in G/L is zero");
  if (!is_prime(p)) fail(Errc::wrong_prime, std::to_string(p) + " is not prime");
  if (mpz_divisible_ui_p(w.d.get_mpz_t(), p))
    fail(Errc::wrong_prime, std::to_string(p) + " divides the cleared denominator " + w.d.get_str());
  if (prime_partition_vector(p) != y)
    fail(Errc::wrong_prime, std::to_string(p) + " is not in the partition piece of the cleared vector");
  w.p = p;
  w.a_int = static_cast<unsigned long>(context(p)->a);
  Rational inv_p(BigInt(1), BigInt(static_cast<unsigned long>(p)));
  w.z = GroupElement{-Rational(w.a_int) * inv_p, inv_p * to_rational(y)};
  if (w.d > 1) {
    BigInt g, alpha, beta;
    BigInt pp(static_cast<unsigned long>(p));
    mpz_gcdext(g.get_mpz_t(), alpha.get_mpz_t(), beta.get_mpz_t(), w.d.get_mpz_t(), pp.get_mpz_t());
    w.bezout = std::make_pair(alpha, beta);
  }
  return w;
}

CheckResult verify_witness(const GroupElement& e, const DivWitness& w) {
  auto no = [](std::string why) { return CheckResult{false, std::move(why)}; };
  if (!(w.fp == fingerprint())) return no("fingerprint mismatch: " + w.fp.to_string());
  if (!is_prime(w.p)) return no("p is not prime");
  BigInt d = common_denominator(e);
  if (d != w.d) return no("recorded d differs from the common denominator " + d.get_str());
  BigInt pp(static_cast<unsigned long>(w.p));
  Rational p_rat(pp);
  if (w.z.x0 != -Rational(w.a_int) / p_rat) return no("z.x0 is not -a/p");
  MembershipVerdict mv = member(w.z);
  if (!mv.member) return no("z is not in G: " + mv.reason);
  GroupElement cleared = d * e;
  if (!in_L(w.p * BigInt(1) * w.z - cleared)) return no("p z - d e is not in L");
  if (d > 1) {
    if (!w.bezout) return no("missing Bezout data for d > 1");
    BigInt g;
    mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), pp.get_mpz_t());
    if (g != 1) return no("gcd(d, p) != 1");
    if (w.bezout->first * d + w.bezout->second * pp != 1) return no("Bezout identity fails");
  }
  if (!in_L(e - BigInt(static_cast<unsigned long>(w.p)) * w.eta(e))) return no("e - p eta is not in L");
  return {true, "witness verified"};
}

// --- freeness ---

std::optional<std::pair<GroupElement, std::vector<BigInt>>> find_L_element(
    const std::vector<GroupElement>& gens) {
  const Index k = max_support(gens);
  RatMatrix xs;
  for (const auto& g : gens) {
    std::vector<Rational> row(k);
    for (const auto& [j, v] : g.x) row[j - 1] = v;
    xs.push_back(std::move(row));
  }
  RatMatrix null = gens.empty() ? RatMatrix{} : left_nullspace(xs);
  for (const auto& c : null) {
    Rational s;
    for (std::size_t i = 0; i < gens.size(); ++i) s += c[i] * gens[i].x0;
    if (s.is_zero()) continue;
    RatMatrix one{c};
    BigInt den = common_denominator(one);
    std::vector<BigInt> coef = scale_to_integer(one, den)[0];
    BigInt g = 0;
    for (const auto& v : coef) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    GroupElement elem;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      coef[i] /= g;
      elem = elem + coef[i] * gens[i];
    }
    if (elem.x0 < Rational(0)) {
      for (auto& v : coef) v = -v;
      elem = -elem;
    }
    return std::make_pair(elem, coef);
  }
  return std::nullopt;
}

namespace {

std::optional<QVec> solve_on_columns(const RatMatrix& a, const std::vector<Rational>& b,
                                     const std::vector<std::size_t>& cols) {
  RatMatrix aug;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::vector<Rational> row;
    for (auto c : cols) row.push_back(a[i][c]);
    row.push_back(b[i]);
    aug.push_back(std::move(row));
  }
  Echelon e = rref(aug);
  QVec lam;
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    if (e.pivots[r] == cols.size()) return std::nullopt;  // inconsistent
    lam.set(cols[e.pivots[r]] + 1, e.rows[r].back());
  }
  return lam;
}

}  // namespace

std::optional<QVec> solve_lambda(const std::vector<GroupElement>& gens, Index k) {
  RatMatrix a;
  std::vector<Rational> b;
  for (const auto& g : gens) {
    std::vector<Rational> row(k);
    for (const auto& [j, v] : g.x) {
      if (j > k) fail(Errc::invalid_argument, "generator support exceeds k");
      row[j - 1] = v;
    }
    a.push_back(std::move(row));
    b.push_back(g.x0);
  }
  std::vector<std::size_t> all(k);
  for (std::size_t c = 0; c < k; ++c) all[c] = c;
  std::optional<QVec> base = solve_on_columns(a, b, all);
  if (!base) return std::nullopt;
  const std::size_t r = a.empty() ? 0 : rank(a);
  if (k > 12 || r == 0) return base;

  // Basic solutions over every column basis; keep the one with least index.
  QVec best = *base;
  BigInt best_index = lambda_index(best);
  std::vector<std::size_t> pick(r);
  for (std::size_t i = 0; i < r; ++i) pick[i] = i;
  for (;;) {
    RatMatrix sub;
    for (const auto& row : a) {
      std::vector<Rational> s;
      for (auto c : pick) s.push_back(row[c]);
      sub.push_back(std::move(s));
    }
    if (rank(sub) == r) {
      if (auto cand = solve_on_columns(a, b, pick)) {
        try {
          BigInt idx = lambda_index(*cand);
          if (idx < best_index) {
            best_index = idx;
            best = *cand;
          }
        } catch (const Error& err) {
          if (err.code() != Errc::capacity_exceeded) throw;
        }
      }
    }
    std::size_t i = r;
    while (i > 0 && pick[i - 1] == k - r + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < r; ++j) pick[j] = pick[j - 1] + 1;
  }
  if (r == k) return best;

  // Underdetermined: a non-basic solution can have a far smaller index, so
  // scan the small indices directly.
  const std::uint64_t cap = limits().bad_prime_cap;
  const std::uint64_t scan = best_index > cap ? cap : to_u64(best_index) - 1;
  for (std::uint64_t i = 1; i <= scan; ++i) {
    QVec cand = enum_lambda(BigInt(static_cast<unsigned long>(i)));
    if (cand.max_index() > k) continue;
    bool fits = true;
    for (std::size_t g = 0; g < gens.size() && fits; ++g) fits = inner(cand, gens[g].x) == gens[g].x0;
    if (fits) return cand;
  }
  return best;
}

namespace {

std::vector<std::uint64_t> denominator_primes(const QVec& v) {
  std::set<std::uint64_t> ps;
  for (const auto& [j, q] : v)
    if (q.den() > 1)
      for (const auto& f : factor(q.den())) ps.insert(f.prime);
  return {ps.begin(), ps.end()};
}

unsigned neg_valuation_bound(const std::vector<Rational>& entries, std::uint64_t p) {
  long worst = 0;
  for (const auto& q : entries) {
    Valuation v = vp(q, p);
    if (!v.is_infinite()) worst = std::min(worst, v.value());
  }
  return static_cast<unsigned>(-worst);
}

std::vector<Rational> flatten(const RatMatrix& m) {
  std::vector<Rational> out;
  for (const auto& row : m) out.insert(out.end(), row.begin(), row.end());
  return out;
}

std::vector<Rational> values(const QVec& v) {
  std::vector<Rational> out;
  for (const auto& [j, q] : v) out.push_back(q);
  return out;
}

std::vector<Rational> translate_row(const ZVec& phi, const QVec& lambda, std::uint64_t k) {
  std::vector<Rational> row(k);
  for (const auto& [j, v] : phi)
    if (j <= k) row[j - 1] += Rational(v);
  for (const auto& [j, v] : lambda)
    if (j <= k) row[j - 1] += v;
  return row;
}

BadPrimeRecord bad_prime_record(std::uint64_t p, std::uint64_t k, const QVec& lambda) {
  std::shared_ptr<const PrimeContext> ctx = context(p);
  PhiBlock block = phi_block(*ctx, k);
  BadPrimeRecord rec;
  rec.p = p;
  rec.block_k = k;
  rec.block_s = block.s;
  RatMatrix chosen;
  for (std::size_t j = 0; j < block.vectors.size() && chosen.size() < k; ++j) {
    RatMatrix trial = chosen;
    trial.push_back(translate_row(block.vectors[j], lambda, k));
    if (rank(trial) == trial.size()) {
      chosen = std::move(trial);
      rec.selected.push_back(j);
    }
  }
  if (chosen.size() != k)
    throw std::logic_error("translated block truncations do not span; block invariant violated");
  std::optional<RatMatrix> inv = inverse(chosen);
  if (!inv) throw std::logic_error("selected translate matrix is singular");
  rec.z = std::move(chosen);
  rec.m = neg_valuation_bound(flatten(*inv), p);
  rec.r = neg_valuation_bound(values(lambda), p);
  return rec;
}

}  // namespace

std::vector<std::uint64_t> bad_primes(std::uint64_t k, const BigInt& index_i, const QVec& lambda) {
  // bad: p < k, or p - 1 <= i, or p divides a denominator of lambda
  BigInt bound = std::max<BigInt>(BigInt(static_cast<unsigned long>(k)) - 1, index_i + 1);
  if (bound > static_cast<unsigned long>(limits().bad_prime_cap))
    fail(Errc::capacity_exceeded, "bad primes extend to " + bound.get_str() + ", above bad_prime_cap " +
                                      std::to_string(limits().bad_prime_cap));
  std::set<std::uint64_t> out;
  for (std::uint64_t p : primes_up_to(to_u64(bound))) out.insert(p);
  for (std::uint64_t p : denominator_primes(lambda)) out.insert(p);
  return {out.begin(), out.end()};
}

CertifyOutcome certify_free(const std::vector<GroupElement>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    MembershipVerdict v = member(gens[i]);
    if (!v.member) fail(Errc::not_in_group, "generator " + std::to_string(i) + " is not in G: " + v.reason);
  }
  CertifyOutcome out;
  if (auto hit = find_L_element(gens)) {
    out.status = CertifyStatus::not_applicable;
    out.l_witness = hit->first;
    out.l_witness_coefficients = hit->second;
    out.reason = "the generated subgroup meets L in " + hit->first.x0.to_string() + " x {0}";
    return out;
  }
  try {
    FreenessCertificate cert;
    cert.k = std::max<Index>(1, max_support(gens));
    std::optional<QVec> lam = solve_lambda(gens, cert.k);
    if (!lam) throw std::logic_error("span disjoint from L but x0 = <lambda, x> is unsolvable");
    cert.lambda = *lam;
    cert.index_i = lambda_index(cert.lambda);
    cert.lambda_denominator_primes = denominator_primes(cert.lambda);
    for (std::uint64_t p : bad_primes(cert.k, cert.index_i, cert.lambda)) {
      BadPrimeRecord rec = bad_prime_record(p, cert.k, cert.lambda);
      cert.D *= pow_u64(p, rec.m + rec.r);
      cert.bad_primes.push_back(std::move(rec));
    }
    if (!within_bound(gens, cert.D))
      throw std::logic_error("generators escape the certified bound (1/D)(Z x Z^k)");
    PurifyOptions opts;
    opts.bound = cert.D;
    cert.basis = purify(gens, opts).basis;
    out.status = CertifyStatus::complete;
    out.reason = "finite rank subgroup disjoint from L; contained in (1/D)(Z x Z^k)";
    out.certificate = std::move(cert);
  } catch (const Error& err) {
    if (err.code() != Errc::capacity_exceeded) throw;
    out.status = CertifyStatus::incomplete;
    out.reason = std::string("certificate-incomplete: ") + err.what();
  }
  return out;
}

CheckResult verify_certificate(const std::vector<GroupElement>& gens, const FreenessCertificate& cert) {
  auto no = [](std::string why) { return CheckResult{false, std::move(why)}; };
  if (!(cert.fp == fingerprint())) return no("fingerprint mismatch: " + cert.fp.to_string());
  const std::uint64_t k = cert.k;
  if (k < 1 || max_support(gens) > k) return no("k does not cover the generators' support");
  if (cert.lambda.max_index() > k) return no("lambda support exceeds k");
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].x0 != inner(cert.lambda, gens[i].x))
      return no("generator " + std::to_string(i) + " violates x0 = <lambda, x>");
    if (!is_member(gens[i])) return no("generator " + std::to_string(i) + " is not in G");
  }
  if (cert.index_i < 1 || !(enum_lambda(cert.index_i) == cert.lambda))
    return no("enum_lambda(index_i) != lambda");
  if (cert.lambda_denominator_primes != denominator_primes(cert.lambda))
    return no("lambda denominator primes mismatch");

  std::vector<std::uint64_t> expected = bad_primes(k, cert.index_i, cert.lambda);
  if (expected.size() != cert.bad_primes.size()) return no("bad-prime list is not the set of non-good primes");
  BigInt product = 1;
  for (std::size_t b = 0; b < expected.size(); ++b) {
    const BadPrimeRecord& rec = cert.bad_primes[b];
    const std::string tag = "bad prime " + std::to_string(rec.p) + ": ";
    if (rec.p != expected[b]) return no("bad-prime list is not the set of non-good primes");
    if (rec.block_k != k) return no(tag + "block index differs from k");
    PhiBlock block = phi_block(*context(rec.p), k);
    if (rec.block_s != block.s) return no(tag + "perturbation exponent mismatch");
    if (rec.selected.size() != k || rec.z.size() != k) return no(tag + "Z is not k x k");
    std::set<std::size_t> distinct(rec.selected.begin(), rec.selected.end());
    if (distinct.size() != k || *distinct.rbegin() > k) return no(tag + "invalid row selection");
    for (std::size_t r = 0; r < k; ++r)
      if (rec.z[r] != translate_row(block.vectors[rec.selected[r]], cert.lambda, k))
        return no(tag + "Z row " + std::to_string(r) + " is not a truncated translate");
    std::optional<RatMatrix> inv = inverse_by_adjugate(rec.z);
    if (!inv) return no(tag + "Z is singular");
    for (const auto& q : flatten(*inv))
      if (!vp(q, rec.p).at_least(-static_cast<long>(rec.m))) return no(tag + "p^m Z^-1 is not p-integral");
    if (rec.r != neg_valuation_bound(values(cert.lambda), rec.p)) return no(tag + "r mismatch");
    product *= pow_u64(rec.p, rec.m + rec.r);
  }
  if (product != cert.D) return no("D is not the product of p^(m+r) over bad primes");
  if (!within_bound(gens, cert.D)) return no("a generator lies outside (1/D)(Z x Z^k)");
  if (!within_bound(cert.basis, cert.D)) return no("a basis element lies outside (1/D)(Z x Z^k)");
  for (std::size_t i = 0; i < cert.basis.size(); ++i) {
    const GroupElement& b = cert.basis[i];
    if (b.x.max_index() > k) return no("basis element exceeds k");
    if (b.x0 != inner(cert.lambda, b.x)) return no("basis element violates x0 = <lambda, x>");
    if (!is_member(b)) return no("basis element " + std::to_string(i) + " is not in G");
  }
  RatMatrix rb = rows_of(cert.basis, k);
  RatMatrix rg = rows_of(gens, k);
  RatMatrix both = rb;
  both.insert(both.end(), rg.begin(), rg.end());
  const std::size_t rank_b = rb.empty() ? 0 : rank(rb);
  if (rank_b != cert.basis.size()) return no("basis is not linearly independent");
  const std::size_t rank_g = rg.empty() ? 0 : rank(rg);
  if (rank_g != rank_b || (both.empty() ? 0 : rank(both)) != rank_b)
    return no("basis does not span the same rational space");
  if (!z_span_contains(cert.basis, gens)) return no("generators are not integer combinations of the basis");
  return {true, "certificate verified"};
}

GroupElement common_L_multiple(const GroupElement& e1, const GroupElement& e2) {
  if (!in_L(e1) || !in_L(e2)) fail(Errc::invalid_argument, "both elements must lie in L");
  if (e1.is_zero() || e2.is_zero()) fail(Errc::invalid_argument, "both elements must be nonzero");
  BigInt l;
  BigInt n1 = e1.x0.num();
  BigInt n2 = e2.x0.num();
  mpz_lcm(l.get_mpz_t(), n1.get_mpz_t(), n2.get_mpz_t());
  return GroupElement{Rational(l), {}};
}

}  // namespace tfab

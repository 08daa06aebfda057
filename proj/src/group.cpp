#include "tfab/group.hpp"

#include <algorithm>
#include <set>

#include "tfab/construction.hpp"
#include "tfab/errors.hpp"
#include "tfab/limits.hpp"
#include "tfab/linalg.hpp"
#include "tfab/primes.hpp"

namespace tfab {

namespace {

std::uint64_t residue_u64(const Rational& q, std::uint64_t p, unsigned m) {
  return reduce_mod(q, p, m).value.get_ui();
}

ResVec to_resvec(const std::vector<std::uint64_t>& r, std::uint64_t p, unsigned m) {
  ResVec v{p, m, {}};
  for (std::size_t j = 0; j < r.size(); ++j)
    if (r[j] != 0) v.entries.set(j + 1, BigInt(static_cast<unsigned long>(r[j])));
  return v;
}

}  // namespace

std::optional<AffineForm> condition_form(const GroupElement& e, std::uint64_t p, unsigned m) {
  const Index w = e.x.max_index();
  AffineForm f;
  f.modulus = to_u64(pow_u64(p, m));
  f.coeffs.assign(w, 0);
  Rational scale(pow_u64(p, m));
  Rational cx0 = scale * e.x0;
  if (!vp(cx0, p).at_least(0)) return std::nullopt;
  f.constant = residue_u64(cx0, p, m);
  for (const auto& [j, v] : e.x) f.coeffs[j - 1] = residue_u64(scale * v, p, m);
  return f;
}

MembershipVerdict member(const GroupElement& e, ScanPolicy policy) {
  MembershipVerdict verdict;
  BigInt d = common_denominator(e);
  if (d == 1) {
    verdict.reason = "all components are integers";
    return verdict;
  }
  const Index w = e.x.max_index();
  for (const PrimePower& pp : factor(d)) {
    const std::uint64_t p = pp.prime;
    long min_v = 0;
    for (const auto& [j, v] : e.x) min_v = std::min(min_v, vp(v, p).value());
    const auto m = static_cast<unsigned>(-min_v);
    if (m == 0) {
      // x is p-integral, so the condition reduces to x0 in Z_p.
      verdict.member = false;
      verdict.failing_prime = p;
      std::vector<std::uint64_t> first =
          w == 0 ? std::vector<std::uint64_t>{} : residue_set(*context(p), w, 1).hyper_element(0);
      verdict.failing_residue = to_resvec(first, p, 1);
      verdict.reason = e.x.empty()
                           ? "x is zero and x0 = " + e.x0.to_string() +
                                 " is not an integer; elements of G with x = 0 form L = Z x {0}"
                           : "x is " + std::to_string(p) + "-integral but x0 has denominator divisible by " +
                                 std::to_string(p);
      return verdict;
    }
    ResidueSet set = residue_set(*context(p), w, m);
    std::optional<AffineForm> form = condition_form(e, p, m);
    std::optional<Violation> bad;
    if (!form) {
      bad = Violation{0, set.hyper_element(0)};
    } else if (m == 1) {
      bad = first_violation_affine(set, *form);
    } else if (policy == ScanPolicy::parallel) {
      bad = first_violation_parallel(set, *form);
    } else {
      bad = first_violation_serial(set, *form);
    }
    if (bad) {
      verdict.member = false;
      verdict.failing_prime = p;
      verdict.failing_residue = to_resvec(bad->residue, p, m);
      verdict.reason = "x0 + <phi, x> leaves Z_" + std::to_string(p) + " for a vector of Phi(" +
                       std::to_string(p) + ") with the reported window residue mod " +
                       std::to_string(p) + "^" + std::to_string(m);
      return verdict;
    }
  }
  verdict.reason = "every p-adic condition holds";
  return verdict;
}

bool is_member(const GroupElement& e) { return member(e).member; }

bool in_L(const GroupElement& e) { return e.x.empty() && e.x0.is_integer(); }

Index max_support(const std::vector<GroupElement>& gens) {
  Index k = 0;
  for (const auto& g : gens) k = std::max(k, g.x.max_index());
  return k;
}

std::vector<std::vector<Rational>> rows_of(const std::vector<GroupElement>& gens, Index k) {
  std::vector<std::vector<Rational>> rows;
  rows.reserve(gens.size());
  for (const auto& g : gens) rows.push_back(to_row(g, k));
  return rows;
}

bool spans_disjoint(const std::vector<GroupElement>& a, const std::vector<GroupElement>& b) {
  Index k = std::max(max_support(a), max_support(b));
  RatMatrix ra = rows_of(a, k);
  RatMatrix rb = rows_of(b, k);
  RatMatrix both = ra;
  both.insert(both.end(), rb.begin(), rb.end());
  return rank(ra) + rank(rb) == rank(both);
}

bool within_bound(const std::vector<GroupElement>& elems, const BigInt& d) {
  Rational dd(d);
  for (const auto& e : elems) {
    if (!(dd * e.x0).is_integer()) return false;
    for (const auto& [j, v] : e.x)
      if (!(dd * v).is_integer()) return false;
  }
  return true;
}

bool z_span_contains(const std::vector<GroupElement>& b, const std::vector<GroupElement>& a) {
  Index k = std::max(max_support(a), max_support(b));
  RatMatrix rb = rows_of(b, k);
  RatMatrix all = rb;
  RatMatrix ra = rows_of(a, k);
  all.insert(all.end(), ra.begin(), ra.end());
  if (rb.empty()) return rank(ra) == 0;
  return lattice_basis(all) == lattice_basis(rb);
}

namespace {

std::vector<GroupElement> to_elements(const RatMatrix& rows) {
  std::vector<GroupElement> out;
  for (const auto& r : rows) out.push_back(from_row(r));
  return out;
}

GroupElement combination(const RatMatrix& basis, const std::vector<std::uint64_t>& c, std::uint64_t p) {
  std::vector<Rational> row(basis[0].size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (c[i] == 0) continue;
    Rational ci(BigInt(static_cast<unsigned long>(c[i])));
    for (std::size_t j = 0; j < row.size(); ++j) row[j] += ci * basis[i][j];
  }
  Rational inv_p(BigInt(1), BigInt(static_cast<unsigned long>(p)));
  for (auto& v : row) v *= inv_p;
  return from_row(row);
}

// Normalized (first nonzero coordinate = 1) vectors of span(generators) over
// F_p, one per line through the origin, in a fixed order.
template <class Visit>
bool for_each_line(const std::vector<std::vector<std::uint64_t>>& gens, std::size_t dim, std::uint64_t p,
                   Visit visit) {
  const std::size_t t = gens.size();
  if (t == 0) return false;
  BigInt lines = (pow_u64(p, t) - 1) / static_cast<unsigned long>(p - 1);
  if (lines > static_cast<unsigned long>(limits().residue_cap))
    fail(Errc::capacity_exceeded, "saturation candidate space " + lines.get_str() + " exceeds residue_cap");
  for (std::size_t lead = 0; lead < t; ++lead) {
    // coefficient 1 on gens[lead], 0 before it, free after it
    const std::size_t free = t - lead - 1;
    std::uint64_t count = to_u64(pow_u64(p, free));
    for (std::uint64_t code = 0; code < count; ++code) {
      std::vector<std::uint64_t> coef(t, 0);
      coef[lead] = 1;
      std::uint64_t rest = code;
      for (std::size_t j = lead + 1; j < t; ++j) {
        coef[j] = rest % p;
        rest /= p;
      }
      std::vector<std::uint64_t> c(dim, 0);
      for (std::size_t g = 0; g < t; ++g) {
        if (coef[g] == 0) continue;
        for (std::size_t i = 0; i < dim; ++i)
          c[i] = static_cast<std::uint64_t>((c[i] + static_cast<unsigned __int128>(coef[g]) * gens[g][i]) % p);
      }
      if (visit(c)) return true;
    }
  }
  return false;
}

// Try to enlarge the lattice by one p-division. Returns true when it grew.
bool saturate_once(RatMatrix& basis, std::uint64_t p, const std::vector<std::vector<std::uint64_t>>& space) {
  bool grew = false;
  for_each_line(space, basis.size(), p, [&](const std::vector<std::uint64_t>& c) {
    GroupElement cand = combination(basis, c, p);
    if (!is_member(cand)) return false;
    RatMatrix rows = basis;
    rows.push_back(to_row(cand, basis[0].size() - 1));
    basis = lattice_basis(rows);
    grew = true;
    return true;
  });
  return grew;
}

std::vector<std::vector<std::uint64_t>> identity_mod(std::size_t n) {
  std::vector<std::vector<std::uint64_t>> id(n, std::vector<std::uint64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
  return id;
}

bool p_integral_rows(const RatMatrix& basis, std::uint64_t p) {
  for (const auto& row : basis)
    for (const auto& q : row)
      if (mpz_divisible_ui_p(q.den().get_mpz_t(), p)) return false;
  return true;
}

// Residues v mod p (as rows (v0, v1..vk)) for which v/p satisfies the
// condition at p, given p-integral v: with m = 1 the condition is affine in
// the window residue r, so it holds on the whole hyperplane part exactly when
// (v1..v_min(k,l)) = t [x] and v0 = -t a; coordinates beyond l only ever meet
// residues 0.
IntMatrix admissible_directions(const PrimeContext& ctx, Index k) {
  IntMatrix dirs;
  const std::uint64_t p = ctx.p;
  if (ctx.pivot != 0 && ctx.pivot <= k) {
    std::vector<BigInt> u(k + 1, BigInt(0));
    u[0] = static_cast<unsigned long>((p - ctx.a % p) % p);
    for (Index j = 1; j <= std::min<Index>(k, ctx.l); ++j) u[j] = static_cast<unsigned long>(ctx.xmod[j - 1]);
    dirs.push_back(std::move(u));
  }
  for (Index j = ctx.l + 1; j <= k; ++j) {
    std::vector<BigInt> e(k + 1, BigInt(0));
    e[j] = 1;
    dirs.push_back(std::move(e));
  }
  return dirs;
}

// One p-division step for a p-integral basis, by solving c B = sum t_u u mod p.
bool saturate_linear(RatMatrix& basis, std::uint64_t p) {
  const Index k = basis[0].size() - 1;
  IntMatrix system;
  for (const auto& row : basis) {
    std::vector<BigInt> r;
    for (const auto& q : row) r.push_back(reduce_mod(q, p, 1).value);
    system.push_back(std::move(r));
  }
  for (auto& u : admissible_directions(*context(p), k)) system.push_back(std::move(u));
  for (const auto& sol : left_nullspace_mod(system, p)) {
    std::vector<std::uint64_t> c(sol.begin(), sol.begin() + static_cast<std::ptrdiff_t>(basis.size()));
    if (std::all_of(c.begin(), c.end(), [](std::uint64_t v) { return v == 0; })) continue;
    GroupElement cand = combination(basis, c, p);
    if (!is_member(cand)) throw std::logic_error("linear p-saturation produced a non-member");
    RatMatrix rows = basis;
    rows.push_back(to_row(cand, k));
    basis = lattice_basis(rows);
    return true;
  }
  return false;
}

// p-saturation to fixpoint. `space`, when given, restricts the enumeration
// fallback (non p-integral bases) to candidates inside the certified bound.
bool saturate(RatMatrix& basis, std::uint64_t p, const std::optional<BigInt>& bound) {
  bool grew = false;
  for (;;) {
    bool step;
    if (p_integral_rows(basis, p)) {
      step = saturate_linear(basis, p);
    } else if (bound) {
      step = saturate_once(basis, p, left_nullspace_mod(scale_to_integer(basis, *bound), p));
    } else {
      step = saturate_once(basis, p, identity_mod(basis.size()));
    }
    if (!step) return grew;
    grew = true;
  }
}

}  // namespace

PurifyResult purify(const std::vector<GroupElement>& gens, const PurifyOptions& options) {
  for (std::size_t i = 0; i < gens.size(); ++i) {
    MembershipVerdict v = member(gens[i]);
    if (!v.member)
      fail(Errc::not_in_group, "generator " + std::to_string(i) + " is not in G: " + v.reason);
  }
  PurifyResult result;
  const Index k = max_support(gens);
  RatMatrix basis = lattice_basis(rows_of(gens, k));
  if (basis.empty()) {
    result.status = PurifyStatus::complete;
    return result;
  }
  if (k == 0) {
    // span is Q x {0}; its intersection with G is L.
    result.basis = {GroupElement{Rational(1), {}}};
    result.status = PurifyStatus::complete;
    if (basis[0][0] != Rational(1)) {
      for (const auto& f : factor(abs(basis[0][0].num()))) result.primes_saturated.push_back(f.prime);
    }
    return result;
  }

  if (options.bound) {
    const BigInt& d = *options.bound;
    if (d < 1) fail(Errc::invalid_argument, "denominator bound must be positive");
    if (!within_bound(gens, d))
      fail(Errc::invalid_argument, "generators do not lie in (1/D)(Z x Z^k) for D = " + d.get_str());
    // Saturating at p only removes p from the index, so one pass suffices.
    std::set<std::uint64_t> grown;
    const BigInt index = maximal_minor_gcd(scale_to_integer(basis, d));
    for (const PrimePower& pp : factor(index))
      if (saturate(basis, pp.prime, d)) grown.insert(pp.prime);
    result.status = PurifyStatus::complete;
    result.primes_saturated.assign(grown.begin(), grown.end());
  } else {
    std::set<std::uint64_t> grown;
    for (std::uint64_t p : primes_up_to(options.scan_prime_limit))
      if (saturate(basis, p, std::nullopt)) grown.insert(p);
    result.status = PurifyStatus::possibly_incomplete;
    result.primes_saturated.assign(grown.begin(), grown.end());
  }
  result.basis = to_elements(basis);
  return result;
}

}  // namespace tfab

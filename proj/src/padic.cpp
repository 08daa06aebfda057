#include "tfab/padic.hpp"

#include "tfab/errors.hpp"
#include "tfab/primes.hpp"

namespace tfab {

long Valuation::value() const {
  if (infinite_) fail(Errc::invalid_argument, "valuation of zero is +infinity");
  return value_;
}

std::string Valuation::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(value_);
}

namespace {

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) fail(Errc::invalid_argument, std::to_string(p) + " is not prime");
}

long count_factor(const BigInt& n, std::uint64_t p) {
  BigInt r = abs(n);
  long v = 0;
  while (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
    mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), p);
    ++v;
  }
  return v;
}

}  // namespace

Valuation vp(const BigInt& n, std::uint64_t p) {
  require_prime(p);
  if (n == 0) return Valuation::infinite();
  return Valuation::finite(count_factor(n, p));
}

Valuation vp(const Rational& q, std::uint64_t p) {
  require_prime(p);
  if (q.is_zero()) return Valuation::infinite();
  return Valuation::finite(count_factor(q.num(), p) - count_factor(q.den(), p));
}

Residue make_residue(const BigInt& value, std::uint64_t p, unsigned m) {
  Residue r;
  r.prime = p;
  r.exponent = m;
  r.modulus = pow_u64(p, m);
  mpz_fdiv_r(r.value.get_mpz_t(), value.get_mpz_t(), r.modulus.get_mpz_t());
  return r;
}

Residue reduce_mod(const Rational& q, std::uint64_t p, unsigned m) {
  if (m == 0) fail(Errc::invalid_argument, "residue exponent must be positive");
  if (!vp(q, p).at_least(0))
    fail(Errc::not_p_adic_integer,
         q.to_string() + " is not a " + std::to_string(p) + "-adic integer");
  Residue r = make_residue(q.num(), p, m);
  BigInt inv;
  mpz_invert(inv.get_mpz_t(), q.den().get_mpz_t(), r.modulus.get_mpz_t());
  r.value = r.value * inv;
  mpz_fdiv_r(r.value.get_mpz_t(), r.value.get_mpz_t(), r.modulus.get_mpz_t());
  return r;
}

namespace {
void same_ring(const Residue& a, const Residue& b) {
  if (a.modulus != b.modulus) fail(Errc::invalid_argument, "residues with different moduli");
}
}  // namespace

Residue operator+(const Residue& a, const Residue& b) {
  same_ring(a, b);
  return make_residue(a.value + b.value, a.prime, a.exponent);
}

Residue operator*(const Residue& a, const Residue& b) {
  same_ring(a, b);
  return make_residue(a.value * b.value, a.prime, a.exponent);
}

Residue operator-(const Residue& a) { return make_residue(-a.value, a.prime, a.exponent); }

}  // namespace tfab

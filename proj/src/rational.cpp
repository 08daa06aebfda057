#include "tfab/rational.hpp"

#include <cctype>

#include "tfab/errors.hpp"

namespace tfab {

std::string to_string(const BigInt& n) { return n.get_str(); }

BigInt pow(const BigInt& base, unsigned long exponent) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

BigInt pow_u64(std::uint64_t base, unsigned long exponent) {
  BigInt b;
  mpz_import(b.get_mpz_t(), 1, 1, sizeof(base), 0, 0, &base);
  return pow(b, exponent);
}

bool fits_u64(const BigInt& n) { return sgn(n) >= 0 && mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

std::uint64_t to_u64(const BigInt& n) {
  if (!fits_u64(n)) fail(Errc::capacity_exceeded, "integer " + n.get_str() + " exceeds 64 bits");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, n.get_mpz_t());
  return out;
}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(Errc::invalid_argument, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) fail(Errc::invalid_argument, "division by zero");
  q_ /= o.q_;
  return *this;
}

std::string Rational::to_string() const { return q_.get_str(); }

namespace {

bool canonical_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return s.size() == 1 || s.front() != '0';
}

}  // namespace

Rational Rational::parse(std::string_view text) {
  auto bad = [&](const char* why) -> Rational {
    fail(Errc::parse_error, "invalid rational \"" + std::string(text) + "\": " + why);
  };
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num_s = body.substr(0, slash);
  if (!canonical_digits(num_s)) return bad("malformed numerator");
  BigInt num{std::string(num_s)};
  BigInt den = 1;
  if (slash != std::string_view::npos) {
    std::string_view den_s = body.substr(slash + 1);
    if (!canonical_digits(den_s)) return bad("malformed denominator");
    den = BigInt(std::string(den_s));
    if (den == 0) return bad("zero denominator");
    if (den == 1) return bad("denominator 1 must be omitted");
    BigInt g;
    mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (g != 1) return bad("not in lowest terms");
  }
  if (negative && num == 0) return bad("negative zero");
  Rational r;
  r.q_ = mpq_class(negative ? BigInt(-num) : num, den);
  return r;
}

}  // namespace tfab

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tfab/bookkeeping.hpp"
#include "tfab/group.hpp"
#include "tfab/linalg.hpp"

namespace tfab {

// Evidence that e + L is divisible by p in G/L.
struct DivWitness {
  std::uint64_t p = 0;
  BigInt a_int;      // representative of the common value <phi, d x> mod p
  GroupElement z;    // (-a/p, (1/p) d x), a member of G
  BigInt d = 1;      // cleared denominator of e
  std::optional<std::pair<BigInt, BigInt>> bezout;  // (alpha, beta): alpha d + beta p = 1
  ConventionFingerprint fp = fingerprint();

  // eta with e - p * eta in L.
  GroupElement eta(const GroupElement& e) const;
};

DivWitness div_witness(const GroupElement& e, std::uint64_t p);

struct CheckResult {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

CheckResult verify_witness(const GroupElement& e, const DivWitness& w);

struct BadPrimeRecord {
  std::uint64_t p = 0;
  std::uint64_t block_k = 0;
  unsigned block_s = 0;
  std::vector<std::size_t> selected;  // indices into the block's k+1 vectors
  RatMatrix z;                        // rows (phi_j + lambda) truncated to k
  unsigned m = 0;                     // p^m Z^-1 is p-integral
  unsigned r = 0;                     // p^r: highest power of p in a denominator of lambda
};

struct FreenessCertificate {
  QVec lambda;
  BigInt index_i;
  std::uint64_t k = 1;
  std::vector<std::uint64_t> lambda_denominator_primes;
  std::vector<BadPrimeRecord> bad_primes;
  BigInt D = 1;
  std::vector<GroupElement> basis;
  ConventionFingerprint fp = fingerprint();
};

enum class CertifyStatus { complete, not_applicable, incomplete };

struct CertifyOutcome {
  CertifyStatus status = CertifyStatus::incomplete;
  std::optional<FreenessCertificate> certificate;
  std::optional<GroupElement> l_witness;       // nonzero element of <gens> in L
  std::vector<BigInt> l_witness_coefficients;  // integer combination of gens giving it
  std::string reason;
};

// Nonzero integer combination of gens lying in Q x {0}, if the rational span
// meets L. The returned element is in <gens> and therefore in L.
std::optional<std::pair<GroupElement, std::vector<BigInt>>> find_L_element(
    const std::vector<GroupElement>& gens);

// lambda with x0 = <lambda, x> on every generator; nullopt when none exists.
std::optional<QVec> solve_lambda(const std::vector<GroupElement>& gens, Index k);

// Primes that are not good for (k, i, lambda).
std::vector<std::uint64_t> bad_primes(std::uint64_t k, const BigInt& index_i, const QVec& lambda);

CertifyOutcome certify_free(const std::vector<GroupElement>& gens);

CheckResult verify_certificate(const std::vector<GroupElement>& gens, const FreenessCertificate& cert);

// (lcm(|n1|, |n2|), 0) for nonzero e1 = (n1, 0), e2 = (n2, 0) in L.
GroupElement common_L_multiple(const GroupElement& e1, const GroupElement& e2);

}  // namespace tfab

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tfab/group_element.hpp"
#include "tfab/scan.hpp"

namespace tfab {

enum class ScanPolicy { parallel, serial };

struct MembershipVerdict {
  bool member = true;
  std::optional<std::uint64_t> failing_prime;
  std::optional<ResVec> failing_residue;  // window residue mod p^m
  std::string reason;
};

// The p-adic condition of e at p, scaled by p^m, over window w = max support.
// nullopt when vp(x0) < -m, where the condition fails for every residue.
std::optional<AffineForm> condition_form(const GroupElement& e, std::uint64_t p, unsigned m);

// Decide e in G exactly: for every prime p dividing a denominator, every
// residue of Phi(p) on the window of x mod p^m must keep x0 + <r, x> in Z_p.
MembershipVerdict member(const GroupElement& e, ScanPolicy policy = ScanPolicy::parallel);
bool is_member(const GroupElement& e);

// e in L = Z x {0}.
bool in_L(const GroupElement& e);

// The rational spans of the two sets meet only in 0.
bool spans_disjoint(const std::vector<GroupElement>& a, const std::vector<GroupElement>& b);

// Largest support index across a set (0 if all x-parts vanish).
Index max_support(const std::vector<GroupElement>& gens);

enum class PurifyStatus { complete, possibly_incomplete };

struct PurifyResult {
  std::vector<GroupElement> basis;  // HNF basis, canonical
  PurifyStatus status = PurifyStatus::possibly_incomplete;
  std::vector<std::uint64_t> primes_saturated;  // primes at which the lattice grew
};

struct PurifyOptions {
  std::optional<BigInt> bound;         // certified denominator bound D
  std::uint64_t scan_prime_limit = 31;  // uncertified search range
};

// Pure closure of <gens> inside G by iterated p-saturation.
PurifyResult purify(const std::vector<GroupElement>& gens, const PurifyOptions& options = {});

// Rational rows (x0, x1..xk) of the elements.
std::vector<std::vector<Rational>> rows_of(const std::vector<GroupElement>& gens, Index k);

// Every element lies in (1/D)(Z x Z^k).
bool within_bound(const std::vector<GroupElement>& elems, const BigInt& d);

// Every element of a is a Z-combination of b (compared through HNF).
bool z_span_contains(const std::vector<GroupElement>& b, const std::vector<GroupElement>& a);

}  // namespace tfab

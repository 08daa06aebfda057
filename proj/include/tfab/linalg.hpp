#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tfab/rational.hpp"

namespace tfab {

using RatMatrix = std::vector<std::vector<Rational>>;
using IntMatrix = std::vector<std::vector<BigInt>>;

struct Echelon {
  RatMatrix rows;              // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row
};

Echelon rref(RatMatrix m);
std::size_t rank(const RatMatrix& m);

// Gauss-Jordan inverse over Q; nullopt when singular.
std::optional<RatMatrix> inverse(const RatMatrix& m);

// Fraction-free (Bareiss) determinant.
BigInt determinant(IntMatrix m);
Rational determinant(const RatMatrix& m);

// Inverse through the adjugate: adj(m) / det(m). Independent of inverse().
std::optional<RatMatrix> inverse_by_adjugate(const RatMatrix& m);

// Basis of the rational left null space { c : c * m = 0 }.
RatMatrix left_nullspace(const RatMatrix& m);

// Row-style Hermite normal form of the row lattice: upper echelon, positive
// pivots, entries above each pivot reduced into [0, pivot). Zero rows dropped.
IntMatrix hnf(IntMatrix m);

// Z-basis (HNF) of the Z-span of rational rows.
RatMatrix lattice_basis(const RatMatrix& rows);

// Basis of { c in F_p^rows : c * m == 0 mod p }, in reduced echelon form.
std::vector<std::vector<std::uint64_t>> left_nullspace_mod(const IntMatrix& m, std::uint64_t p);

// gcd of all maximal (rows x rows) minors; m must have full row rank.
BigInt maximal_minor_gcd(const IntMatrix& m);

// Common denominator of all entries; scaled integer copy.
BigInt common_denominator(const RatMatrix& m);
IntMatrix scale_to_integer(const RatMatrix& m, const BigInt& d);

}  // namespace tfab

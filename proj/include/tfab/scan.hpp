#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tfab/construction.hpp"

namespace tfab {

// The p-adic condition of one element, pre-scaled by p^m:
//   holds(r)  <=>  (constant + sum_j coeffs[j] * r[j]) == 0 (mod modulus).
struct AffineForm {
  std::uint64_t modulus = 1;
  std::uint64_t constant = 0;
  std::vector<std::uint64_t> coeffs;  // size = window

  bool holds(const std::uint64_t* r) const;
};

struct Violation {
  std::uint64_t position = 0;  // hyper index t, or hyper_size + block-vector index
  std::vector<std::uint64_t> residue;
};

// Canonical order: hyperplane part by t ascending, then block vectors.
// Both variants return the same (first) violation.
std::optional<Violation> first_violation_serial(const ResidueSet& set, const AffineForm& form);
std::optional<Violation> first_violation_parallel(const ResidueSet& set, const AffineForm& form);

std::uint64_t count_violations_serial(const ResidueSet& set, const AffineForm& form);
std::uint64_t count_violations_parallel(const ResidueSet& set, const AffineForm& form);

// Exact decision for m == 1, where the set is an affine F_p-subspace and the
// form is affine on it: checks the base point and one step per free
// coordinate. Returns the same first violation as the enumerating scans.
std::optional<Violation> first_violation_affine(const ResidueSet& set, const AffineForm& form);

}  // namespace tfab

#include "tfab/scan.hpp"

#include <omp.h>

#include <algorithm>
#include <limits>

#include "tfab/errors.hpp"
#include "tfab/limits.hpp"

namespace tfab {

bool AffineForm::holds(const std::uint64_t* r) const {
  unsigned __int128 acc = constant;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    acc += static_cast<unsigned __int128>(coeffs[j]) * r[j];
    if ((j & 7) == 7) acc %= modulus;
  }
  return acc % modulus == 0;
}

namespace {

std::uint64_t enumerable_size(const ResidueSet& set) {
  BigInt hs = set.hyper_size();
  if (hs > static_cast<unsigned long>(limits().residue_cap))
    fail(Errc::capacity_exceeded, "residue set needs " + hs.get_str() +
                                      " window residues, above residue_cap " +
                                      std::to_string(limits().residue_cap));
  return to_u64(hs);
}

void check_shapes(const ResidueSet& set, const AffineForm& form) {
  if (form.coeffs.size() != set.window || form.modulus != set.modulus)
    fail(Errc::invalid_argument, "affine form does not match the residue set");
}

std::optional<Violation> first_block_violation(const ResidueSet& set, const AffineForm& form,
                                               std::uint64_t offset) {
  for (std::size_t b = 0; b < set.block_vectors.size(); ++b) {
    if (!form.holds(set.block_vectors[b].data())) return Violation{offset + b, set.block_vectors[b]};
  }
  return std::nullopt;
}

std::uint64_t count_block_violations(const ResidueSet& set, const AffineForm& form) {
  std::uint64_t n = 0;
  for (const auto& b : set.block_vectors) n += form.holds(b.data()) ? 0 : 1;
  return n;
}

}  // namespace

std::optional<Violation> first_violation_serial(const ResidueSet& set, const AffineForm& form) {
  check_shapes(set, form);
  const std::uint64_t n = enumerable_size(set);
  std::vector<std::uint64_t> r(set.window);
  for (std::uint64_t t = 0; t < n; ++t) {
    set.hyper_element(t, r.data());
    if (!form.holds(r.data())) return Violation{t, r};
  }
  return first_block_violation(set, form, n);
}

std::optional<Violation> first_violation_parallel(const ResidueSet& set, const AffineForm& form) {
  check_shapes(set, form);
  const std::uint64_t n = enumerable_size(set);
  const auto none = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t best = none;
  const auto total = static_cast<std::int64_t>(n);
#pragma omp parallel
  {
    std::vector<std::uint64_t> r(set.window);
#pragma omp for schedule(static) reduction(min : best)
    for (std::int64_t t = 0; t < total; ++t) {
      auto ut = static_cast<std::uint64_t>(t);
      if (ut >= best) continue;
      set.hyper_element(ut, r.data());
      if (!form.holds(r.data())) best = std::min(best, ut);
    }
  }
  if (best != none) return Violation{best, set.hyper_element(best)};
  return first_block_violation(set, form, n);
}

std::uint64_t count_violations_serial(const ResidueSet& set, const AffineForm& form) {
  check_shapes(set, form);
  const std::uint64_t n = enumerable_size(set);
  std::vector<std::uint64_t> r(set.window);
  std::uint64_t bad = 0;
  for (std::uint64_t t = 0; t < n; ++t) {
    set.hyper_element(t, r.data());
    bad += form.holds(r.data()) ? 0 : 1;
  }
  return bad + count_block_violations(set, form);
}

std::uint64_t count_violations_parallel(const ResidueSet& set, const AffineForm& form) {
  check_shapes(set, form);
  const std::uint64_t n = enumerable_size(set);
  const auto total = static_cast<std::int64_t>(n);
  std::uint64_t bad = 0;
#pragma omp parallel
  {
    std::vector<std::uint64_t> r(set.window);
#pragma omp for schedule(static) reduction(+ : bad)
    for (std::int64_t t = 0; t < total; ++t) {
      set.hyper_element(static_cast<std::uint64_t>(t), r.data());
      bad += form.holds(r.data()) ? 0 : 1;
    }
  }
  return bad + count_block_violations(set, form);
}

std::optional<Violation> first_violation_affine(const ResidueSet& set, const AffineForm& form) {
  check_shapes(set, form);
  if (set.exponent != 1 || !set.block_vectors.empty())
    fail(Errc::invalid_argument, "affine decision applies to residues mod p only");
  std::vector<std::uint64_t> r = set.hyper_element(0);
  if (!form.holds(r.data())) return Violation{0, r};
  // t = p^q sets digit 1 on free coordinate q; every smaller t only uses
  // earlier coordinates, so the first failing q gives the first violation.
  std::uint64_t t = 1;
  for (std::size_t q = 0; q < set.free_coords.size(); ++q) {
    std::vector<std::uint64_t> step = set.hyper_element(t);
    if (!form.holds(step.data())) return Violation{t, step};
    if (q + 1 < set.free_coords.size()) {
      if (t > std::numeric_limits<std::uint64_t>::max() / set.prime)
        fail(Errc::capacity_exceeded, "residue position overflows 64 bits");
      t *= set.prime;
    }
  }
  return std::nullopt;
}

}  // namespace tfab

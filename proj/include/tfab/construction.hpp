#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "tfab/finvec.hpp"

namespace tfab {

// Per-prime data: the partition vector x of p, the length l, the relevant
// lambda indices and the hyperplane constant a defining
// M = { m in (Z/p)^l : <m, [x]> = a }.
struct PrimeContext {
  std::uint64_t p = 0;
  ZVec xvec;
  std::uint64_t l = 0;
  std::vector<std::uint64_t> relevant;   // ascending
  std::vector<std::uint64_t> forbidden;  // <[-lambda_i], [x]> per relevant i, same order
  std::uint64_t a = 0;

  std::vector<std::uint64_t> xmod;  // [x]_p densely, xmod[j-1] is coordinate j, size l
  Index pivot = 0;                  // max support of [x]; 0 when [x] = 0
  std::uint64_t pivot_inv = 0;      // ([x]_pivot)^-1 mod p

  bool reduction_is_zero() const { return pivot == 0; }
};

PrimeContext build_context(std::uint64_t p);

// Read-consistent cache over build_context.
std::shared_ptr<const PrimeContext> context(std::uint64_t p);

// Exact |M|: p^l, or p^(l-1) when [x] != 0.
BigInt m_size(const PrimeContext& ctx);

// Requires support(v) within [1, l].
bool m_contains(const PrimeContext& ctx, const ResVec& v);

// The n-th element of M (1-based), densely (entry j-1 is coordinate j).
std::vector<std::uint64_t> m_element(const PrimeContext& ctx, const BigInt& n);
ResVec m_enumerate(const PrimeContext& ctx, const BigInt& n);

// Item n of the lift stream: the element of M at position 1 + (n-1) mod |M|.
std::vector<std::uint64_t> stream_item(const PrimeContext& ctx, const BigInt& n);

struct PhiBlock {
  std::uint64_t k = 0;
  unsigned s = 0;          // least s with p^(s+1) > k(p-1)
  BigInt perturbation;     // p^(s+1)
  BigInt first_item;       // stream position of vectors[0]
  std::vector<ZVec> vectors;  // k+1 integer vectors
};

unsigned perturbation_exponent(std::uint64_t p, std::uint64_t k);
BigInt block_first_item(std::uint64_t k);

PhiBlock phi_block(const PrimeContext& ctx, std::uint64_t k);

// Exactly the set { truncate(phi, w) mod p^m : phi in Phi(p) }, held
// symbolically: an affine hyperplane part over the free window coordinates
// plus the finitely many block vectors whose perturbation is visible mod p^m
// inside the window.
class ResidueSet {
 public:
  std::uint64_t prime = 0;
  unsigned exponent = 1;
  Index window = 0;
  std::uint64_t modulus = 1;  // p^m

  std::vector<Index> free_coords;     // ascending, coordinate free_coords[0] varies fastest
  Index pivot = 0;                    // solved window coordinate; 0 when unconstrained
  std::vector<std::uint64_t> coeff;   // [x]_p on the window, size w
  std::uint64_t a = 0;
  std::uint64_t pivot_inv = 0;

  std::vector<std::vector<std::uint64_t>> block_vectors;  // size w each, stream order

  BigInt hyper_size() const;
  void hyper_element(std::uint64_t t, std::uint64_t* out) const;
  std::vector<std::uint64_t> hyper_element(std::uint64_t t) const;

  bool contains(const std::vector<std::uint64_t>& r) const;

  // Sorted, duplicate-free listing. Raises capacity_exceeded above residue_cap.
  std::vector<std::vector<std::uint64_t>> materialize() const;
};

// Largest block index whose perturbation survives mod p^m (0 if none).
std::uint64_t last_visible_block(std::uint64_t p, unsigned m);

ResidueSet residue_set(const PrimeContext& ctx, Index w, unsigned m);

}  // namespace tfab

#pragma once

#include <cstdint>

namespace tfab {

// Process-wide capacity caps. Set once at startup (or through ScopedLimits in
// tests); every bounded computation checks against these and raises
// Errc::capacity_exceeded instead of running away.
struct Limits {
  std::uint64_t prime_cap = 10'000'000;   // largest prime value ever sieved
  std::uint64_t residue_cap = 1'000'000;  // largest residue set enumerated or materialized
  std::uint64_t bad_prime_cap = 20'000;   // largest bad prime certify_free will process
  std::uint64_t intvec_scan_cap = 5'000'000;  // largest sequence code scanned for V(i)
};

const Limits& limits() noexcept;
void set_limits(const Limits& l) noexcept;

class ScopedLimits {
 public:
  explicit ScopedLimits(const Limits& l) : saved_(limits()) { set_limits(l); }
  ~ScopedLimits() { set_limits(saved_); }
  ScopedLimits(const ScopedLimits&) = delete;
  ScopedLimits& operator=(const ScopedLimits&) = delete;

 private:
  Limits saved_;
};

}  // namespace tfab

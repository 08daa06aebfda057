#pragma once

#include <cstdint>
#include <string>

#include "tfab/limits.hpp"

namespace tfab {

struct Config {
  Limits limits;
  std::uint64_t witness_prime_count = 3;
};

// Reads a JSON config object. Keys: prime_cap, residue_cap, bad_prime_cap,
// intvec_scan_cap, witness_prime_count, fingerprint (must match when given).
// Missing keys keep their defaults; unknown keys and zero caps are errors.
Config config_from_text(const std::string& text, const std::string& source);
Config load_config(const std::string& path);

}  // namespace tfab

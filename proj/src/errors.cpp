#include "tfab/errors.hpp"

#include "tfab/limits.hpp"

namespace tfab {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::not_p_adic_integer: return "not-a-p-adic-integer";
    case Errc::capacity_exceeded: return "capacity-exceeded";
    case Errc::not_in_group: return "not-in-group";
    case Errc::no_quotient_content: return "no-quotient-content";
    case Errc::wrong_prime: return "wrong-prime";
    case Errc::fingerprint_mismatch: return "fingerprint-mismatch";
    case Errc::parse_error: return "parse-error";
  }
  return "unknown";
}

namespace {
Limits g_limits;
}

const Limits& limits() noexcept { return g_limits; }
void set_limits(const Limits& l) noexcept { g_limits = l; }

}  // namespace tfab

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace tfab {

enum class Errc {
  invalid_argument,
  not_p_adic_integer,
  capacity_exceeded,
  not_in_group,
  no_quotient_content,
  wrong_prime,
  fingerprint_mismatch,
  parse_error,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<std::uint64_t> index = std::nullopt)
      : std::runtime_error(what), code_(code), index_(index) {}

  Errc code() const noexcept { return code_; }

  // Offending vector index, when the failure is attached to one component.
  std::optional<std::uint64_t> index() const noexcept { return index_; }

 private:
  Errc code_;
  std::optional<std::uint64_t> index_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace tfab

#include "tfab/config.hpp"

#include <fstream>
#include <sstream>

#include "tfab/errors.hpp"
#include "tfab/json_io.hpp"

namespace tfab {

Config config_from_text(const std::string& text, const std::string& source) {
  const io::json j = io::parse_text(text, source);
  if (!j.is_object()) fail(Errc::parse_error, source + ": config must be a JSON object");
  io::check_fingerprint(j, source);
  Config cfg;
  auto cap = [&](const std::string& key, std::uint64_t& slot) {
    const io::json& v = j.at(key);
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0)
      fail(Errc::parse_error, source + ": " + key + " must be a positive integer");
    slot = v.get<std::uint64_t>();
  };
  for (const auto& [key, value] : j.items()) {
    if (key == "prime_cap") cap(key, cfg.limits.prime_cap);
    else if (key == "residue_cap") cap(key, cfg.limits.residue_cap);
    else if (key == "bad_prime_cap") cap(key, cfg.limits.bad_prime_cap);
    else if (key == "intvec_scan_cap") cap(key, cfg.limits.intvec_scan_cap);
    else if (key == "witness_prime_count") cap(key, cfg.witness_prime_count);
    else if (key != "fingerprint") fail(Errc::parse_error, source + ": unknown config key \"" + key + "\"");
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_text(buf.str(), path);
}

}  // namespace tfab

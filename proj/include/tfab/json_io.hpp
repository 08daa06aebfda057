#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tfab/construction.hpp"
#include "tfab/group.hpp"
#include "tfab/theorems.hpp"

namespace tfab::io {

using nlohmann::json;

// Rationals and big integers travel as strings ("-3/4", "12"); vectors as
// {"<index>": "<scalar>"} with no zero entries.
json to_json(const Rational& q);
json to_json(const BigInt& n);
json to_json(const QVec& v);
json to_json(const ZVec& v);
json to_json(const ResVec& v);
json to_json(const GroupElement& e);
json to_json(const std::vector<GroupElement>& elems);
json to_json(const RatMatrix& m);
json to_json(const PrimeContext& ctx);
json to_json(const MembershipVerdict& v);
json to_json(const DivWitness& w, const GroupElement& e);
json to_json(const BadPrimeRecord& r);
json to_json(const FreenessCertificate& c);
json to_json(const CertifyOutcome& o);
json to_json(const PurifyResult& r);

const char* status_name(CertifyStatus s);
const char* status_name(PurifyStatus s);

// Parsers raise Error(parse_error) with a JSON-pointer-ish location. An
// embedded "fingerprint" key, when present, must match (fingerprint_mismatch).
Rational rational_from(const json& j, const std::string& where);
BigInt integer_from(const json& j, const std::string& where);
QVec qvec_from(const json& j, const std::string& where);
GroupElement element_from(const json& j, const std::string& where = "$");
// Accepts a bare array or {"gens": [...], "fingerprint": ...}.
std::vector<GroupElement> gens_from(const json& j);
DivWitness witness_from(const json& j);
// Accepts a bare certificate or certify output {"certificate": {...}}.
FreenessCertificate certificate_from(const json& j);

void check_fingerprint(const json& j, const std::string& where);

// Parse text; malformed input raises parse_error citing the byte offset.
json parse_text(const std::string& text, const std::string& source);

// Deterministic serialization: sorted keys, fixed indentation.
std::string dump(const json& j);

}  // namespace tfab::io

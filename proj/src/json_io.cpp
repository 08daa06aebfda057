#include "tfab/json_io.hpp"

#include <set>

#include "tfab/errors.hpp"

namespace tfab::io {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& why) {
  fail(Errc::parse_error, where + ": " + why);
}

std::string fp_string() { return fingerprint().to_string(); }

const json& field(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing key \"") + key + "\"");
  return *it;
}

void only_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) bad(where, "unexpected key \"" + key + "\"");
  }
}

std::uint64_t u64_from(const json& j, const std::string& where) {
  if (!j.is_number_unsigned()) bad(where, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

Index index_from(const std::string& key, const std::string& where) {
  bool digits = !key.empty() && key.size() <= 19 && key.front() != '0';
  for (char c : key) digits = digits && c >= '0' && c <= '9';
  if (!digits) bad(where, "index \"" + key + "\" is not a decimal integer >= 1");
  return std::stoull(key);
}

json u64_list(const std::vector<std::uint64_t>& v) {
  json out = json::array();
  for (auto x : v) out.push_back(x);
  return out;
}

std::vector<std::uint64_t> u64_list_from(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(u64_from(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

RatMatrix matrix_from(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of rows");
  RatMatrix m;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string at = where + "[" + std::to_string(r) + "]";
    if (!j[r].is_array()) bad(at, "expected a row array");
    std::vector<Rational> row;
    for (std::size_t c = 0; c < j[r].size(); ++c)
      row.push_back(rational_from(j[r][c], at + "[" + std::to_string(c) + "]"));
    m.push_back(std::move(row));
  }
  return m;
}

std::vector<GroupElement> element_list_from(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of elements");
  std::vector<GroupElement> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(element_from(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

json to_json(const Rational& q) { return q.to_string(); }
json to_json(const BigInt& n) { return n.get_str(); }

json to_json(const QVec& v) {
  json out = json::object();
  for (const auto& [i, q] : v) out[std::to_string(i)] = q.to_string();
  return out;
}

json to_json(const ZVec& v) {
  json out = json::object();
  for (const auto& [i, n] : v) out[std::to_string(i)] = n.get_str();
  return out;
}

json to_json(const ResVec& v) {
  json out = {{"prime", v.prime}, {"exponent", v.exponent}, {"modulus", v.modulus().get_str()}};
  out["entries"] = to_json(v.entries);
  return out;
}

json to_json(const GroupElement& e) { return {{"x0", to_json(e.x0)}, {"x", to_json(e.x)}}; }

json to_json(const std::vector<GroupElement>& elems) {
  json out = json::array();
  for (const auto& e : elems) out.push_back(to_json(e));
  return out;
}

json to_json(const RatMatrix& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& q : row) r.push_back(q.to_string());
    out.push_back(std::move(r));
  }
  return out;
}

json to_json(const PrimeContext& ctx) {
  json xmod = json::object();
  for (std::size_t j = 0; j < ctx.xmod.size(); ++j)
    if (ctx.xmod[j] != 0) xmod[std::to_string(j + 1)] = ctx.xmod[j];
  return {{"p", ctx.p},
          {"x", to_json(ctx.xvec)},
          {"x_mod_p", xmod},
          {"l", ctx.l},
          {"relevant", u64_list(ctx.relevant)},
          {"forbidden", u64_list(ctx.forbidden)},
          {"a", ctx.a},
          {"m_size", m_size(ctx).get_str()},
          {"fingerprint", fp_string()}};
}

json to_json(const MembershipVerdict& v) {
  json out = {{"member", v.member}, {"reason", v.reason}, {"fingerprint", fp_string()}};
  out["failing_prime"] = v.failing_prime ? json(*v.failing_prime) : json(nullptr);
  out["failing_residue"] = v.failing_residue ? to_json(*v.failing_residue) : json(nullptr);
  return out;
}

json to_json(const DivWitness& w, const GroupElement& e) {
  json out = {{"p", w.p}, {"a_int", to_json(w.a_int)}, {"z", to_json(w.z)}, {"d", to_json(w.d)},
              {"eta", to_json(w.eta(e))}, {"fingerprint", w.fp.to_string()}};
  out["bezout"] = w.bezout ? json{{"alpha", to_json(w.bezout->first)}, {"beta", to_json(w.bezout->second)}}
                           : json(nullptr);
  return out;
}

json to_json(const BadPrimeRecord& r) {
  std::vector<std::uint64_t> sel(r.selected.begin(), r.selected.end());
  return {{"p", r.p}, {"block_k", r.block_k}, {"block_s", r.block_s}, {"selected", u64_list(sel)},
          {"z", to_json(r.z)}, {"m", r.m}, {"r", r.r}};
}

json to_json(const FreenessCertificate& c) {
  json bad_list = json::array();
  for (const auto& r : c.bad_primes) bad_list.push_back(to_json(r));
  return {{"lambda", to_json(c.lambda)},
          {"index_i", to_json(c.index_i)},
          {"k", c.k},
          {"good_params",
           {{"k", c.k}, {"index_i", to_json(c.index_i)},
            {"lambda_denominator_primes", u64_list(c.lambda_denominator_primes)}}},
          {"bad_primes", bad_list},
          {"D", to_json(c.D)},
          {"basis", to_json(c.basis)},
          {"fingerprint", c.fp.to_string()}};
}

const char* status_name(CertifyStatus s) {
  switch (s) {
    case CertifyStatus::complete: return "complete";
    case CertifyStatus::not_applicable: return "not-applicable";
    case CertifyStatus::incomplete: return "certificate-incomplete";
  }
  return "?";
}

const char* status_name(PurifyStatus s) {
  return s == PurifyStatus::complete ? "complete" : "possibly-incomplete";
}

json to_json(const CertifyOutcome& o) {
  json out = {{"status", status_name(o.status)}, {"reason", o.reason}, {"fingerprint", fp_string()}};
  out["certificate"] = o.certificate ? to_json(*o.certificate) : json(nullptr);
  if (o.l_witness) {
    json coef = json::array();
    for (const auto& c : o.l_witness_coefficients) coef.push_back(c.get_str());
    out["l_witness"] = {{"element", to_json(*o.l_witness)}, {"coefficients", coef}};
  } else {
    out["l_witness"] = nullptr;
  }
  return out;
}

json to_json(const PurifyResult& r) {
  return {{"basis", to_json(r.basis)}, {"status", status_name(r.status)},
          {"primes_saturated", u64_list(r.primes_saturated)}, {"fingerprint", fp_string()}};
}

// --- parsing ---

void check_fingerprint(const json& j, const std::string& where) {
  if (!j.is_object()) return;
  auto it = j.find("fingerprint");
  if (it == j.end()) return;
  if (!it->is_string()) bad(where + ".fingerprint", "expected a string");
  if (it->get<std::string>() != fp_string())
    fail(Errc::fingerprint_mismatch,
         where + ": fingerprint " + it->get<std::string>() + " does not match " + fp_string());
}

Rational rational_from(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a rational string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const Error& e) {
    bad(where, e.what());
  }
}

BigInt integer_from(const json& j, const std::string& where) {
  Rational q = rational_from(j, where);
  if (!q.is_integer()) bad(where, "expected an integer");
  return q.num();
}

QVec qvec_from(const json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object of index -> rational");
  QVec v;
  for (const auto& [key, value] : j.items()) {
    Index i = index_from(key, where);
    Rational q = rational_from(value, where + "." + key);
    if (q.is_zero()) bad(where + "." + key, "zero entries are not allowed");
    v.set(i, q);
  }
  return v;
}

GroupElement element_from(const json& j, const std::string& where) {
  only_keys(j, {"x0", "x", "fingerprint"}, where);
  check_fingerprint(j, where);
  return GroupElement{rational_from(field(j, "x0", where), where + ".x0"),
                      qvec_from(field(j, "x", where), where + ".x")};
}

std::vector<GroupElement> gens_from(const json& j) {
  if (j.is_array()) return element_list_from(j, "$");
  only_keys(j, {"gens", "fingerprint"}, "$");
  check_fingerprint(j, "$");
  return element_list_from(field(j, "gens", "$"), "$.gens");
}

DivWitness witness_from(const json& j) {
  only_keys(j, {"p", "a_int", "z", "d", "eta", "bezout", "fingerprint"}, "$");
  if (j.find("fingerprint") == j.end()) bad("$", "missing key \"fingerprint\"");
  check_fingerprint(j, "$");
  DivWitness w;
  w.p = u64_from(field(j, "p", "$"), "$.p");
  w.a_int = integer_from(field(j, "a_int", "$"), "$.a_int");
  w.z = element_from(field(j, "z", "$"), "$.z");
  w.d = integer_from(field(j, "d", "$"), "$.d");
  const json& b = field(j, "bezout", "$");
  if (!b.is_null()) {
    only_keys(b, {"alpha", "beta"}, "$.bezout");
    w.bezout = std::make_pair(integer_from(field(b, "alpha", "$.bezout"), "$.bezout.alpha"),
                              integer_from(field(b, "beta", "$.bezout"), "$.bezout.beta"));
  }
  return w;
}

FreenessCertificate certificate_from(const json& j) {
  if (j.is_object() && j.contains("certificate")) {
    check_fingerprint(j, "$");
    const json& c = j["certificate"];
    if (c.is_null()) bad("$.certificate", "no certificate present (status " + j.value("status", "?") + ")");
    return certificate_from(c);
  }
  only_keys(j, {"lambda", "index_i", "k", "good_params", "bad_primes", "D", "basis", "fingerprint"}, "$");
  if (j.find("fingerprint") == j.end()) bad("$", "missing key \"fingerprint\"");
  check_fingerprint(j, "$");
  FreenessCertificate c;
  c.lambda = qvec_from(field(j, "lambda", "$"), "$.lambda");
  c.index_i = integer_from(field(j, "index_i", "$"), "$.index_i");
  c.k = u64_from(field(j, "k", "$"), "$.k");
  const json& gp = field(j, "good_params", "$");
  only_keys(gp, {"k", "index_i", "lambda_denominator_primes"}, "$.good_params");
  if (u64_from(field(gp, "k", "$.good_params"), "$.good_params.k") != c.k)
    bad("$.good_params.k", "disagrees with k");
  if (integer_from(field(gp, "index_i", "$.good_params"), "$.good_params.index_i") != c.index_i)
    bad("$.good_params.index_i", "disagrees with index_i");
  c.lambda_denominator_primes = u64_list_from(field(gp, "lambda_denominator_primes", "$.good_params"),
                                              "$.good_params.lambda_denominator_primes");
  const json& bl = field(j, "bad_primes", "$");
  if (!bl.is_array()) bad("$.bad_primes", "expected an array");
  for (std::size_t i = 0; i < bl.size(); ++i) {
    const std::string at = "$.bad_primes[" + std::to_string(i) + "]";
    const json& r = bl[i];
    only_keys(r, {"p", "block_k", "block_s", "selected", "z", "m", "r"}, at);
    BadPrimeRecord rec;
    rec.p = u64_from(field(r, "p", at), at + ".p");
    rec.block_k = u64_from(field(r, "block_k", at), at + ".block_k");
    rec.block_s = static_cast<unsigned>(u64_from(field(r, "block_s", at), at + ".block_s"));
    for (auto s : u64_list_from(field(r, "selected", at), at + ".selected")) rec.selected.push_back(s);
    rec.z = matrix_from(field(r, "z", at), at + ".z");
    rec.m = static_cast<unsigned>(u64_from(field(r, "m", at), at + ".m"));
    rec.r = static_cast<unsigned>(u64_from(field(r, "r", at), at + ".r"));
    c.bad_primes.push_back(std::move(rec));
  }
  c.D = integer_from(field(j, "D", "$"), "$.D");
  c.basis = element_list_from(field(j, "basis", "$"), "$.basis");
  return c;
}

json parse_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(Errc::parse_error, source + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace tfab::io

#include "tfab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "tfab/bookkeeping.hpp"
#include "tfab/config.hpp"
#include "tfab/construction.hpp"
#include "tfab/errors.hpp"
#include "tfab/json_io.hpp"
#include "tfab/lemmas.hpp"
#include "tfab/primes.hpp"
#include "tfab/theorems.hpp"

namespace tfab {

namespace {

using io::json;

constexpr std::uint64_t kEnumRangeCap = 1'000'000;

std::string fp_string() { return fingerprint().to_string(); }

int exit_for(Errc code) {
  switch (code) {
    case Errc::capacity_exceeded: return kExitCapacity;
    case Errc::not_in_group:
    case Errc::no_quotient_content:
    case Errc::wrong_prime: return kExitNegative;
    default: return kExitUsage;
  }
}

// Inline JSON when the argument starts with '{' or '[', otherwise a file path.
json load_json(const std::string& arg) {
  auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '['))
    return io::parse_text(arg, "inline argument");
  std::ifstream in(arg);
  if (!in) fail(Errc::parse_error, "cannot read " + arg);
  std::stringstream buf;
  buf << in.rdbuf();
  return io::parse_text(buf.str(), arg);
}

BigInt positive_from(const std::string& text, const std::string& what) {
  Rational q;
  try {
    q = Rational::parse(text);
  } catch (const Error&) {
    fail(Errc::parse_error, what + " must be a positive integer, got \"" + text + "\"");
  }
  if (!q.is_integer() || q.sign() <= 0) fail(Errc::parse_error, what + " must be a positive integer");
  return q.num();
}

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> prime_cap, residue_cap, bad_prime_cap, witness_prime_count;
  bool serial = false;

  std::uint64_t ctx_p = 0;
  std::string element, gens, cert, bound;
  std::optional<std::uint64_t> prime;
  std::string enum_kind, from = "1", to = "10";
  std::string lemma;
  std::optional<std::uint64_t> lemma_p, kmax, samples;
  std::uint64_t seed = 1, n = 0;
  std::string lemma_element;
};

Config effective_config(const Options& o) {
  Config cfg = o.config_path.empty() ? Config{} : load_config(o.config_path);
  if (o.prime_cap) cfg.limits.prime_cap = *o.prime_cap;
  if (o.residue_cap) cfg.limits.residue_cap = *o.residue_cap;
  if (o.bad_prime_cap) cfg.limits.bad_prime_cap = *o.bad_prime_cap;
  if (o.witness_prime_count) cfg.witness_prime_count = *o.witness_prime_count;
  if (cfg.limits.prime_cap == 0 || cfg.limits.residue_cap == 0 || cfg.limits.bad_prime_cap == 0 ||
      cfg.witness_prime_count == 0)
    fail(Errc::parse_error, "caps must be positive");
  return cfg;
}

int cmd_ctx(const Options& o, std::ostream& out) {
  out << io::dump(io::to_json(*context(o.ctx_p)));
  return kExitAffirmative;
}

int cmd_member(const Options& o, std::ostream& out) {
  GroupElement e = io::element_from(load_json(o.element));
  MembershipVerdict v = member(e, o.serial ? ScanPolicy::serial : ScanPolicy::parallel);
  json j = io::to_json(v);
  j["element"] = io::to_json(e);
  out << io::dump(j);
  return v.member ? kExitAffirmative : kExitNegative;
}

int cmd_witness(const Options& o, const Config& cfg, std::ostream& out) {
  GroupElement e = io::element_from(load_json(o.element));
  if (!is_member(e)) fail(Errc::not_in_group, "element is not in G");
  const BigInt d = common_denominator(e);
  const ZVec y = to_integer(Rational(d) * e.x);
  if (y.empty()) fail(Errc::no_quotient_content, "element lies in L; its class in G/L is zero");
  std::vector<std::uint64_t> primes;
  if (o.prime) {
    primes.push_back(*o.prime);
  } else {
    for (std::uint64_t want = cfg.witness_prime_count; primes.size() < cfg.witness_prime_count; want *= 2) {
      primes.clear();
      for (std::uint64_t p : partition_members(y, want))
        if (!mpz_divisible_ui_p(d.get_mpz_t(), p) && primes.size() < cfg.witness_prime_count)
          primes.push_back(p);
    }
  }
  json list = json::array();
  bool all = true;
  for (std::uint64_t p : primes) {
    DivWitness w = div_witness(e, p);
    CheckResult c = verify_witness(e, w);
    all = all && c.ok;
    list.push_back({{"witness", io::to_json(w, e)}, {"verified", c.ok}, {"verify_reason", c.reason}});
  }
  out << io::dump({{"element", io::to_json(e)}, {"cleared_vector", io::to_json(y)}, {"d", d.get_str()},
                   {"witnesses", list}, {"fingerprint", fp_string()}});
  return all ? kExitAffirmative : kExitNegative;
}

int cmd_certify(const Options& o, std::ostream& out) {
  CertifyOutcome r = certify_free(io::gens_from(load_json(o.gens)));
  out << io::dump(io::to_json(r));
  switch (r.status) {
    case CertifyStatus::complete: return kExitAffirmative;
    case CertifyStatus::not_applicable: return kExitNegative;
    case CertifyStatus::incomplete: return kExitCapacity;
  }
  return kExitUsage;
}

int cmd_verify_cert(const Options& o, std::ostream& out) {
  std::vector<GroupElement> gens = io::gens_from(load_json(o.gens));
  CheckResult c;
  try {
    c = verify_certificate(gens, io::certificate_from(load_json(o.cert)));
  } catch (const Error& e) {
    if (e.code() != Errc::fingerprint_mismatch) throw;
    c = {false, e.what()};
  }
  out << io::dump({{"ok", c.ok}, {"reason", c.reason}, {"fingerprint", fp_string()}});
  return c.ok ? kExitAffirmative : kExitNegative;
}

int cmd_purify(const Options& o, std::ostream& out) {
  std::vector<GroupElement> gens = io::gens_from(load_json(o.gens));
  PurifyOptions opts;
  if (!o.bound.empty()) opts.bound = positive_from(o.bound, "--bound");
  out << io::dump(io::to_json(purify(gens, opts)));
  return kExitAffirmative;
}

int cmd_enum(const Options& o, std::ostream& out) {
  const BigInt from = positive_from(o.from, "--from");
  const BigInt to = positive_from(o.to, "--to");
  if (to < from) fail(Errc::parse_error, "--to must be at least --from");
  if (to - from >= kEnumRangeCap)
    fail(Errc::capacity_exceeded, "enum ranges are limited to " + std::to_string(kEnumRangeCap) + " entries");
  const std::string fp = fp_string();
  for (BigInt n = from; n <= to; ++n) {
    json line = {{"kind", o.enum_kind}, {"n", n.get_str()}, {"fingerprint", fp}};
    if (o.enum_kind == "rat") {
      line["value"] = enum_rat(n).to_string();
    } else if (o.enum_kind == "lambda") {
      line["value"] = io::to_json(enum_lambda(n));
    } else if (o.enum_kind == "intvec") {
      line["value"] = io::to_json(enum_intvec(to_u64(n)));
    } else {
      const std::uint64_t p = nth_prime(to_u64(n));
      const auto [i, j] = unpair(n);
      line["p"] = p;
      line["class"] = i.get_str();
      line["position"] = j.get_str();
      line["value"] = io::to_json(prime_partition_vector(p));
    }
    out << line.dump() << "\n";
  }
  return kExitAffirmative;
}

int cmd_check(const Options& o, const Config& cfg, std::ostream& out) {
  std::optional<Lemma> which = lemma_from_name(o.lemma);
  if (!which) fail(Errc::parse_error, "unknown lemma " + o.lemma);
  LemmaParams params;
  params.p = o.lemma_p;
  params.kmax = o.kmax;
  params.samples = o.samples;
  params.seed = o.seed;
  params.n = o.n == 0 ? cfg.witness_prime_count : o.n;
  if (!o.lemma_element.empty()) params.element = io::element_from(load_json(o.lemma_element));
  LemmaReport rep = check_lemma(*which, params);
  out << io::dump({{"lemma", rep.lemma}, {"pass", rep.pass}, {"checks", rep.checks}, {"details", rep.details},
                   {"counterexample", rep.counterexample}, {"fingerprint", fp_string()}});
  return rep.pass ? kExitAffirmative : kExitNegative;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in the group G and its subgroup L", "tfab"};
  app.require_subcommand(0, 1);
  app.fallthrough();
  Options o;
  bool version = false;
  app.add_flag("--version", version, "Print the tool version and convention fingerprint");
  app.add_option("--config", o.config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--prime-cap", o.prime_cap, "Largest prime ever sieved");
  app.add_option("--residue-cap", o.residue_cap, "Largest residue set enumerated");
  app.add_option("--bad-prime-cap", o.bad_prime_cap, "Largest bad prime a certificate may need");
  app.add_option("--witness-prime-count", o.witness_prime_count, "Witness primes per element");
  app.add_flag("--serial", o.serial, "Use the serial membership scan");

  auto* ctx = app.add_subcommand("ctx", "Per-prime construction data");
  ctx->add_option("p", o.ctx_p, "prime")->required();

  auto* mem = app.add_subcommand("member", "Decide membership in G");
  mem->add_option("element", o.element, "element JSON or file")->required();

  auto* wit = app.add_subcommand("witness", "Divisibility witnesses in G/L");
  wit->add_option("element", o.element, "element JSON or file")->required();
  wit->add_option("--prime", o.prime, "prime of the element's partition class");

  auto* cer = app.add_subcommand("certify", "Freeness certificate for a finite generator set");
  cer->add_option("gens", o.gens, "generator list JSON or file")->required();

  auto* ver = app.add_subcommand("verify-cert", "Recheck a freeness certificate");
  ver->add_option("gens", o.gens, "generator list JSON or file")->required();
  ver->add_option("cert", o.cert, "certificate JSON or file")->required();

  auto* pur = app.add_subcommand("purify", "Pure closure inside G");
  pur->add_option("gens", o.gens, "generator list JSON or file")->required();
  pur->add_option("--bound", o.bound, "certified denominator bound D");

  auto* en = app.add_subcommand("enum", "Dump a range of an enumeration as JSON lines");
  en->add_option("kind", o.enum_kind, "rat | lambda | intvec | partition")
      ->required()
      ->check(CLI::IsMember({"rat", "lambda", "intvec", "partition"}));
  en->add_option("--from", o.from, "first index (1-based)");
  en->add_option("--to", o.to, "last index");

  auto* chk = app.add_subcommand("check", "Run a lemma suite");
  chk->add_option("lemma", o.lemma, "lemma name")
      ->required()
      ->check(CLI::IsMember(
          {"m-props", "phi-props", "int-inclusion", "L-purity", "div-infinitude", "purification-disjoint"}));
  chk->add_option("--p", o.lemma_p, "prime");
  chk->add_option("--kmax", o.kmax, "largest k");
  chk->add_option("--samples", o.samples, "sample count");
  chk->add_option("--seed", o.seed, "random seed");
  chk->add_option("--n", o.n, "witness count");
  chk->add_option("--element", o.lemma_element, "element JSON or file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitAffirmative;
    }
    err << e.what() << "\n";
    out << io::dump({{"error", "usage"}, {"message", e.what()}, {"fingerprint", fp_string()}});
    return kExitUsage;
  }

  if (version) {
    out << io::dump({{"tool", "tfab"}, {"version", kToolVersion}, {"fingerprint", fp_string()},
                     {"conventions", fingerprint().version}});
    return kExitAffirmative;
  }
  if (app.get_subcommands().empty()) {
    err << app.help();
    return kExitUsage;
  }

  try {
    const Config cfg = effective_config(o);
    ScopedLimits scoped(cfg.limits);
    if (ctx->parsed()) return cmd_ctx(o, out);
    if (mem->parsed()) return cmd_member(o, out);
    if (wit->parsed()) return cmd_witness(o, cfg, out);
    if (cer->parsed()) return cmd_certify(o, out);
    if (ver->parsed()) return cmd_verify_cert(o, out);
    if (pur->parsed()) return cmd_purify(o, out);
    if (en->parsed()) return cmd_enum(o, out);
    if (chk->parsed()) return cmd_check(o, cfg, out);
  } catch (const Error& e) {
    err << errc_name(e.code()) << ": " << e.what() << "\n";
    json j = {{"error", errc_name(e.code())}, {"message", e.what()}, {"fingerprint", fp_string()}};
    if (e.index()) j["index"] = *e.index();
    out << io::dump(j);
    return exit_for(e.code());
  }
  return kExitUsage;
}

}  // namespace tfab

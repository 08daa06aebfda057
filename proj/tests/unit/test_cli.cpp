#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "tfab/limits.hpp"
#include "tfab/bookkeeping.hpp"
#include "tfab/cli.hpp"
#include "tfab/config.hpp"
#include "tfab/json_io.hpp"

using namespace tfab;
using io::json;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
  json parsed() const { return json::parse(out); }
};

CliRun run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("tfab-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path_ / name) << text;
    return (path_ / name).string();
  }
  std::string path_string(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(Cli, MemberExitCodes) {
  CliRun yes = run_cli({"member", R"({"x0":"5","x":{}})"});
  EXPECT_EQ(yes.code, kExitAffirmative);
  EXPECT_EQ(yes.parsed()["member"], true);
  EXPECT_EQ(yes.parsed()["fingerprint"], fingerprint().to_string());
  CliRun no = run_cli({"member", R"({"x0":"1/2","x":{}})"});
  EXPECT_EQ(no.code, kExitNegative);
  EXPECT_NE(no.parsed()["reason"].get<std::string>().find("L = Z x {0}"), std::string::npos);
  EXPECT_EQ(no.parsed()["failing_prime"], 2);
}

TEST(Cli, MalformedJson) {
  CliRun r = run_cli({"member", R"({"x0":"5",)"});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_EQ(r.parsed()["error"], "parse-error");
  EXPECT_NE(r.parsed()["message"].get<std::string>().find("byte"), std::string::npos);
  EXPECT_EQ(run_cli({"member", R"({"x0":"05","x":{}})"}).code, kExitUsage);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, kExitUsage);
  EXPECT_EQ(run_cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"ctx"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"ctx", "9"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"check", "no-such-lemma"}).code, kExitUsage);
  EXPECT_EQ(run_cli({"enum", "rat", "--from", "0"}).code, kExitUsage);
}

TEST(Cli, Version) {
  CliRun r = run_cli({"--version"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.parsed()["version"], kToolVersion);
  EXPECT_EQ(r.parsed()["fingerprint"], fingerprint().to_string());
}

TEST(Cli, Context) {
  CliRun r = run_cli({"ctx", "5"});
  EXPECT_EQ(r.code, 0);
  json j = r.parsed();
  EXPECT_EQ(j["l"], 6);
  EXPECT_EQ(j["a"], 1);
  EXPECT_EQ(j["relevant"], json::array({1, 2, 3}));
}

TEST(Cli, CapacityIsDistinctFromNegative) {
  CliRun r = run_cli({"--residue-cap", "10", "member", R"({"x0":"0","x":{"1":"1/9","5":"1/9"}})"});
  EXPECT_EQ(r.code, kExitCapacity);
  EXPECT_EQ(r.parsed()["error"], "capacity-exceeded");
  CliRun big = run_cli({"enum", "rat", "--from", "1", "--to", "2000000"});
  EXPECT_EQ(big.code, kExitCapacity);
  CliRun cert = run_cli({"--bad-prime-cap", "5", "certify", R"([{"x0":"1","x":{"1":"1"}}])"});
  EXPECT_EQ(cert.code, kExitCapacity);
  EXPECT_EQ(cert.parsed()["status"], "certificate-incomplete");
}

TEST(Cli, Enum) {
  CliRun r = run_cli({"enum", "rat", "--from", "1", "--to", "3"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::vector<std::string> values;
  for (std::string line; std::getline(lines, line);) values.push_back(json::parse(line)["value"]);
  EXPECT_EQ(values, (std::vector<std::string>{"-1", "0", "1"}));
  CliRun p = run_cli({"enum", "partition", "--from", "1", "--to", "4"});
  ASSERT_EQ(p.code, 0);
  std::istringstream pl(p.out);
  std::vector<std::uint64_t> primes;
  for (std::string line; std::getline(pl, line);) primes.push_back(json::parse(line)["p"]);
  EXPECT_EQ(primes, (std::vector<std::uint64_t>{2, 3, 5, 7}));
}

TEST(Cli, Witness) {
  CliRun r = run_cli({"witness", R"({"x0":"3","x":{"1":"-1"}})"});
  ASSERT_EQ(r.code, 0) << r.out;
  json j = r.parsed();
  EXPECT_EQ(j["witnesses"].size(), 3u);
  CliRun wrong = run_cli({"witness", R"({"x0":"3","x":{"1":"-1"}})", "--prime", "5"});
  EXPECT_EQ(wrong.code, kExitNegative);
  EXPECT_EQ(wrong.parsed()["error"], "wrong-prime");
  CliRun l = run_cli({"witness", R"({"x0":"3","x":{}})"});
  EXPECT_EQ(l.code, kExitNegative);
  CliRun two = run_cli({"--witness-prime-count", "2", "witness", R"({"x0":"3","x":{"1":"-1"}})"});
  EXPECT_EQ(two.parsed()["witnesses"].size(), 2u);
}

TEST(Cli, CertifyVerifyThroughFiles) {
  TempDir dir;
  std::string gens = dir.write("gens.json", R"([{"x0":"1","x":{"1":"1"}},{"x0":"0","x":{"2":"3"}}])");
  CliRun c = run_cli({"certify", gens});
  ASSERT_EQ(c.code, 0) << c.out;
  std::string cert = dir.write("cert.json", c.out);
  CliRun v = run_cli({"verify-cert", gens, cert});
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_EQ(v.parsed()["ok"], true);

  json tampered = c.parsed();
  std::string d = tampered["certificate"]["D"];
  tampered["certificate"]["D"] = BigInt(BigInt(d) * 2).get_str();
  std::string bad = dir.write("bad.json", io::dump(tampered));
  CliRun vb = run_cli({"verify-cert", gens, bad});
  EXPECT_EQ(vb.code, kExitNegative);
  EXPECT_EQ(vb.parsed()["ok"], false);

  tampered = c.parsed();
  tampered["certificate"]["fingerprint"] = "tfab-conventions-1:ffffffffffffffff";
  CliRun vf = run_cli({"verify-cert", gens, dir.write("fp.json", io::dump(tampered))});
  EXPECT_EQ(vf.code, kExitNegative);
  EXPECT_NE(vf.parsed()["reason"].get<std::string>().find("fingerprint"), std::string::npos);

  EXPECT_EQ(run_cli({"verify-cert", gens, dir.path_string("missing.json")}).code, kExitUsage);
}

TEST(Cli, NotApplicableCertify) {
  CliRun r = run_cli({"certify", R"([{"x0":"2","x":{}}])"});
  EXPECT_EQ(r.code, kExitNegative);
  EXPECT_EQ(r.parsed()["status"], "not-applicable");
}

TEST(Cli, Purify) {
  CliRun r = run_cli({"purify", R"([{"x0":"0","x":{"1":"2"}}])", "--bound", "2"});
  ASSERT_EQ(r.code, 0) << r.out;
  json j = r.parsed();
  EXPECT_EQ(j["status"], "complete");
  EXPECT_EQ(j["basis"][0]["x"]["1"], "1");
  CliRun open = run_cli({"purify", R"([{"x0":"0","x":{"1":"2"}}])"});
  EXPECT_EQ(open.parsed()["status"], "possibly-incomplete");
  EXPECT_EQ(run_cli({"purify", R"([{"x0":"1/2","x":{}}])"}).code, kExitNegative);
  EXPECT_EQ(run_cli({"purify", R"([{"x0":"0","x":{"1":"2"}}])", "--bound", "0"}).code, kExitUsage);
}

TEST(Cli, Check) {
  CliRun r = run_cli({"check", "m-props", "--p", "3", "--kmax", "3"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.parsed()["pass"], true);
  CliRun d = run_cli({"check", "div-infinitude", "--element", R"({"x0":"1","x":{"1":"-1","2":"-1","3":"-1"}})", "--n", "3"});
  EXPECT_EQ(d.code, 0) << d.out;
}

TEST(Cli, ConfigFile) {
  TempDir dir;
  std::string cfg = dir.write("cfg.json", R"({"residue_cap": 10})");
  CliRun r = run_cli({"--config", cfg, "member", R"({"x0":"0","x":{"1":"1/9","5":"1/9"}})"});
  EXPECT_EQ(r.code, kExitCapacity);
  std::string wrong = dir.write("wrong.json", R"({"fingerprint": "other:0"})");
  CliRun w = run_cli({"--config", wrong, "ctx", "2"});
  EXPECT_EQ(w.code, kExitUsage);
  EXPECT_EQ(w.parsed()["error"], "fingerprint-mismatch");
  std::string unknown = dir.write("unknown.json", R"({"prime_limit": 10})");
  EXPECT_EQ(run_cli({"--config", unknown, "ctx", "2"}).code, kExitUsage);
  std::string flag_wins = dir.write("cap.json", R"({"residue_cap": 10})");
  EXPECT_NE(run_cli({"--config", flag_wins, "--residue-cap", "1000000", "member",
                     R"({"x0":"0","x":{"1":"1/9","5":"1/9"}})"})
                .code,
            kExitCapacity);
}

TEST(Config, Parsing) {
  Config c = config_from_text(R"({"prime_cap": 5000, "witness_prime_count": 4})", "t");
  EXPECT_EQ(c.limits.prime_cap, 5000u);
  EXPECT_EQ(c.witness_prime_count, 4u);
  EXPECT_EQ(c.limits.residue_cap, Limits{}.residue_cap);
  EXPECT_THROW(config_from_text(R"({"prime_cap": 0})", "t"), Error);
  EXPECT_THROW(config_from_text(R"({"prime_cap": -1})", "t"), Error);
  EXPECT_THROW(config_from_text(R"([1])", "t"), Error);
  EXPECT_NO_THROW(config_from_text("{\"fingerprint\": \"" + fingerprint().to_string() + "\"}", "t"));
}

TEST(Cli, Deterministic) {
  std::vector<std::vector<std::string>> cmds{
      {"ctx", "13"},
      {"certify", R"([{"x0":"1","x":{"1":"1"}},{"x0":"0","x":{"2":"3"}}])"},
      {"witness", R"({"x0":"3","x":{"1":"-1"}})"},
      {"member", R"({"x0":"1/3","x":{"1":"1/3","2":"2/9"}})"},
  };
  for (const auto& c : cmds) {
    CliRun a = run_cli(c), b = run_cli(c);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

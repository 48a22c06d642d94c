#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "wolst/cli.hpp"

using namespace wolst;

namespace {

struct Run {
  int code;
  std::string out;
};

/// Runs the wolst binary; stderr is discarded unless `keep_err`.
Run run_tool(const std::string& args, bool keep_err = false) {
  const std::string cmd = std::string(WOLST_CLI_PATH) + " " + args + (keep_err ? " 2>&1" : " 2>/dev/null");
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return {-1, ""};
  std::string out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("wolst_cli_" + name + "_" + std::to_string(::getpid()))).string();
}

}  // namespace

TEST(RunConfig, JsonRoundTrip) {
  RunConfig c;
  c.checks = {"W.*", "L.helou.*"};
  c.primes_lo = 7;
  c.primes_hi = 211;
  c.method = "direct";
  c.jobs = 3;
  c.format = "csv";
  c.checkpoint = "/tmp/x.ckpt";
  c.seed = 99;
  c.allow_slow = true;
  c.timing = false;
  EXPECT_EQ(from_json(to_json(c)), c);
  EXPECT_EQ(from_json(Json::parse(to_json(c).dump())), c);
  EXPECT_EQ(to_json(from_json(to_json(c))).dump(), to_json(c).dump());
}

TEST(RunConfig, Errors) {
  EXPECT_THROW(from_json(Json{{"bogus", 1}}), ConfigError);
  EXPECT_THROW(from_json(Json{{"format", "xml"}}), ConfigError);
  EXPECT_THROW(from_json(Json{{"method", "guess"}}), ConfigError);
  EXPECT_THROW(from_json(Json{{"jobs", "many"}}), ConfigError);
  EXPECT_THROW(parse_range("5-9"), ConfigError);
  EXPECT_THROW(parse_range("5..x"), ConfigError);
  EXPECT_EQ(parse_range("5..97"), std::make_pair(std::uint64_t{5}, std::uint64_t{97}));
}

TEST(Cli, FlagsOverrideFile) {
  const std::string path = temp_path("config.json");
  {
    RunConfig c;
    c.jobs = 2;
    c.primes_lo = 11;
    c.primes_hi = 13;
    c.format = "json";
    std::ofstream(path) << to_json(c).dump();
  }
  auto r = run_tool("config --config " + path + " --jobs 4");
  ASSERT_EQ(r.code, 0);
  RunConfig got = from_json(Json::parse(r.out));
  EXPECT_EQ(got.jobs, 4u);
  EXPECT_EQ(got.primes_lo, 11u);
  EXPECT_EQ(got.format, "json");
  std::filesystem::remove(path);
}

TEST(Cli, ComputeExamples) {
  EXPECT_EQ(run_tool("compute bernoulli --exact 4").out, "-1/30\n");
  EXPECT_EQ(run_tool("compute binom --n 9 --m 4 --mod 125").out, "1\n");
  EXPECT_EQ(run_tool("compute qbinom --n 2 --m 1").out, "1 + q\n");
  EXPECT_EQ(run_tool("compute harmonic --n 4").out, "25/12\n");
  EXPECT_EQ(run_tool("compute binom --n 9 --m 4").out, "126\n");
  EXPECT_EQ(run_tool("compute bernoulli --n 8 --p 11 --e 1").code, 0);
  EXPECT_EQ(run_tool("compute binom --n 9").code, 2);
  EXPECT_EQ(run_tool("compute binom --n 9 --m 4 --mod abc").code, 2);
}

TEST(Cli, VerifyExitCodes) {
  EXPECT_EQ(run_tool("verify --checks 'W.*' --primes 5..97").code, 0);
  auto sv = run_tool("verify --checks P.stafford-vandiver --primes 11..499");
  EXPECT_EQ(sv.code, 0);
  EXPECT_NE(sv.out.find("informative comparisons"), std::string::npos);
  EXPECT_EQ(run_tool("verify --checks bogus.id").code, 2);
  EXPECT_EQ(run_tool("verify --primes 5..x").code, 2);
  EXPECT_EQ(run_tool("frobnicate").code, 2);
  EXPECT_EQ(run_tool("verify --format xml").code, 2);
  // printed-sign variants are informative: they disagree but never fail the run
  EXPECT_EQ(run_tool("verify --checks 'W.glaisher.p4*' --primes 5..50").code, 0);
}

TEST(Cli, JsonAndCsvCarryTheSameContent) {
  const std::string args = "verify --checks 'L.ljunggren,S.granval*,H.carlitz' --primes 5..13 --no-timing";
  // S.granval* matches nothing
  EXPECT_EQ(run_tool(args + " --format json").code, 2);
  const std::string ok = "verify --checks 'L.ljunggren,S.granville*,H.carlitz' --primes 5..13 --no-timing";
  auto js = lines(run_tool(ok + " --format json").out);
  auto cs = lines(run_tool(ok + " --format csv").out);
  ASSERT_EQ(cs.size(), js.size() + 1);
  EXPECT_EQ(cs[0], "check_id,params,modulus,lhs,rhs,pass,micros,asserted");
  for (std::size_t i = 0; i < js.size(); ++i) {
    Json j = Json::parse(js[i]);
    for (const char* key : {"check_id", "params", "modulus", "lhs", "rhs", "pass", "micros", "asserted"}) {
      EXPECT_TRUE(j.contains(key)) << key;
    }
    Params ps;
    for (const auto& [k, v] : j["params"].items()) ps.emplace_back(k, v.get<std::int64_t>());
    std::string expect = csv_field(j["check_id"].get<std::string>()) + "," + csv_field(params_str(ps)) + "," +
                         csv_field(j["modulus"].get<std::string>()) + "," + csv_field(j["lhs"].get<std::string>()) +
                         "," + csv_field(j["rhs"].get<std::string>()) + "," + (j["pass"].get<bool>() ? "true" : "false") +
                         "," + std::to_string(j["micros"].get<long>()) + "," +
                         (j["asserted"].get<bool>() ? "true" : "false");
    EXPECT_EQ(cs[i + 1], expect);
  }
}

TEST(Cli, ReportsAreByteIdentical) {
  const std::string args = "verify --checks 'H.*,C.leudesdorf' --primes 5..101 --no-timing --format json";
  auto a = run_tool(args + " --jobs 1");
  auto b = run_tool(args + " --jobs 3");
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_FALSE(a.out.empty());
}

TEST(Cli, HuntAndResume) {
  auto full = run_tool("hunt 5..100000 --quiet");
  EXPECT_EQ(full.code, 0);
  EXPECT_EQ(full.out, "16843  H(p-1) mod p^3 = 0  C(2p-1,p-1) mod p^4 = 1\n");
  EXPECT_EQ(run_tool("hunt --w5 5..100000 --quiet").out, "");

  const std::string ck = temp_path("hunt.ckpt");
  auto part = run_tool("hunt 5..40000 --segment 4096 --max-segments 2 --checkpoint " + ck + " --quiet");
  EXPECT_EQ(part.code, 0);
  EXPECT_EQ(HuntCheckpoint::load(ck).done_hi, 4 + 2 * 4096u);
  auto rest = run_tool("hunt 5..40000 --segment 4096 --resume " + ck + " --quiet");
  EXPECT_EQ(rest.code, 0);
  EXPECT_EQ(rest.out, run_tool("hunt 5..40000 --quiet").out);
  EXPECT_EQ(HuntCheckpoint::load(ck).done_hi, 40000u);

  // same checkpoint, different method
  EXPECT_EQ(run_tool("hunt 5..40000 --method direct --resume " + ck + " --quiet").code, 2);
  // a field renamed by hand breaks the digest
  std::string text;
  {
    std::ifstream in(ck);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  text.replace(text.find("done_hi"), 7, "done_lo");
  std::ofstream(ck) << text;
  EXPECT_EQ(run_tool("hunt 5..40000 --resume " + ck + " --quiet").code, 2);
  std::filesystem::remove(ck);
}

TEST(Cli, HuntStreamsSegmentStatus) {
  auto r = run_tool("hunt 5..5000 --segment 1000 --format json", true);
  int status_lines = 0;
  for (const auto& l : lines(r.out)) {
    if (l.rfind("{\"segment\"", 0) == 0) {
      ++status_lines;
      EXPECT_TRUE(Json::parse(l).contains("done_hi"));
    }
  }
  EXPECT_EQ(status_lines, 5);
  EXPECT_EQ(run_tool("hunt 3..100").code, 2);
  EXPECT_EQ(run_tool("hunt 5..100 --method fast").code, 2);
}

TEST(Cli, Converse) {
  auto r = run_tool("converse 2..30000 --k 1 --class odd-composite");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "27173  composite\n");
  EXPECT_EQ(run_tool("converse 2..2000 --k 3 --class even").out, "");
  EXPECT_EQ(run_tool("converse 2..100 --k 9").code, 2);
}

// End-to-end checks of the command-line tool: exit codes, parseable build
// output, failure reporting, and byte-identical reports under a fixed seed.
// The binary path is injected by the build as DETREP_CLI_PATH.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <map>
#include <sstream>
#include <string>

#include "detrep/pencil_json.hpp"

#ifndef DETREP_CLI_PATH
#error "DETREP_CLI_PATH must point at the built command-line binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(DETREP_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("exit code 0: a passing verification") {
  RunResult r = run("verify grenet --m 3 --mode symbolic");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(r.out.find("OK") != std::string::npos);
  CHECK(run("verify regular-det --m 4 --mode pit --trials 5 --seed 3").exit_code == 0);
  CHECK(run("verify quadric-half --m 6").exit_code == 0);
  CHECK(run("verify equivariant-det --m 2 --equivariance full --samples 4")
            .exit_code == 0);
}

TEST_CASE("exit code 1: the one-sided symmetry of the permanent pencil") {
  RunResult r = run("verify grenet --m 3 --equivariance full --samples 6 --seed 4");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
  CHECK(r.out.find("rows") != std::string::npos);  // the offending side is named
  // left-only suites pass
  CHECK(run("verify grenet --m 3 --equivariance left --samples 6 --seed 4")
            .exit_code == 0);
}

TEST_CASE("exit code 2: usage errors") {
  CHECK(run("build nosuch --m 3").exit_code == 2);
  CHECK(run("verify grenet --m 99").exit_code == 2);          // out of range
  CHECK(run("verify grenet --m 3 --mode bogus").exit_code == 2);
  CHECK(run("bench --m-range 9:2").exit_code == 2);
  CHECK(run("bench --strategies warp-drive").exit_code == 2);
  CHECK(run("frobnicate").exit_code == 2);
  CHECK(run("").exit_code == 2);  // a subcommand is required
  CHECK(run("--help").exit_code == 0);
}

TEST_CASE("build output round-trips through the JSON loader") {
  RunResult r = run("build grenet --m 3");
  REQUIRE(r.exit_code == 0);
  detrep::PencilMatrix p = detrep::pencil_from_string(r.out);
  CHECK(p.n == 7);
  CHECK(p.construction == "grenet");
  CHECK(p.sign == 1);
  RunResult rq = run("build equivariant-det --m 2");
  REQUIRE(rq.exit_code == 0);
  detrep::PencilMatrix q = detrep::pencil_from_string(rq.out);
  CHECK(q.n == 5);
  CHECK(q.expected_factor == 2);
  // pretty mode is for eyes, not parsers
  RunResult rp = run("build grenet --m 2 --pretty");
  CHECK(rp.exit_code == 0);
  CHECK(rp.out.find('[') != std::string::npos);
  CHECK(rp.out.find("det = permanent") != std::string::npos);
}

TEST_CASE("a verified pencil can be loaded back from a file") {
  std::string path = "/tmp/detrep_cli_test_pencil.json";
  CHECK(run("build regular-det --m 3 -o " + path).exit_code == 0);
  RunResult r = run("verify regular-det --from " + path + " --mode symbolic");
  CHECK(r.exit_code == 0);
}

TEST_CASE("reports are byte-identical across repeated seeded runs") {
  std::string args =
      "verify equivariant-perm --m 3 --equivariance full --samples 8 --seed 11 "
      "--json";
  RunResult a = run(args);
  RunResult b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  REQUIRE(!a.out.empty());
  // the report is well-formed JSON with a top-level pass flag
  auto j = detrep::json::parse(a.out);
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("checks").is_array());

  std::string bench =
      "bench --m-range 2:4 --strategies ryser,pencil-path --trials 3 --seed 5 "
      "--timing none";
  RunResult c = run(bench);
  RunResult d = run(bench);
  CHECK(c.exit_code == 0);
  CHECK(c.out == d.out);
  CHECK(c.out.find("construction,m,n,strategy,trials,median_ns,checksum") == 0);
}

TEST_CASE("bench cross-checks strategies and reports per-size rows") {
  RunResult r = run(
      "bench --m-range 2:5 --strategies ryser,naive,pencil-dense,pencil-path "
      "--trials 2 --seed 8 --timing none");
  REQUIRE(r.exit_code == 0);
  // 4 sizes x 4 strategies + header
  int lines = 0;
  for (char ch : r.out)
    if (ch == '\n') ++lines;
  CHECK(lines == 1 + 4 * 4);
  // every size's checksum column must agree across strategies
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);  // header
  std::map<std::string, std::string> checksum_by_m;
  while (std::getline(is, line)) {
    auto first_comma = line.find(',');
    auto m_end = line.find(',', first_comma + 1);
    std::string m = line.substr(first_comma + 1, m_end - first_comma - 1);
    std::string checksum = line.substr(line.rfind(',') + 1);
    auto [it, inserted] = checksum_by_m.try_emplace(m, checksum);
    if (!inserted) CHECK(it->second == checksum);
  }
  CHECK(checksum_by_m.size() == 4);
}

TEST_CASE("the jobs flag leaves verification results unchanged") {
  std::string base = "verify equivariant-det --m 3 --mode pit --trials 8 --seed 21 --json";
  RunResult seq = run(base + " --jobs 1");
  RunResult par = run(base + " --jobs 4");
  CHECK(seq.exit_code == 0);
  CHECK(par.exit_code == 0);
  // identical apart from the reported jobs option
  auto js = detrep::json::parse(seq.out);
  auto jp = detrep::json::parse(par.out);
  js["options"].erase("jobs");
  jp["options"].erase("jobs");
  CHECK(js == jp);
}

TEST_CASE("waring build output enumerates the sign patterns") {
  RunResult r = run("build waring --n 4");
  REQUIRE(r.exit_code == 0);
  auto j = detrep::json::parse(r.out);
  CHECK(j.at("term_count").get<int>() == 8);
  CHECK(j.at("denominator").get<long long>() == 192);  // 2^3 * 4!
  RunResult s = run("build waring --n 4 --symmetric");
  auto sj = detrep::json::parse(s.out);
  CHECK(sj.at("term_count").get<int>() == 16);
  CHECK(sj.at("denominator").get<long long>() == 384);
}

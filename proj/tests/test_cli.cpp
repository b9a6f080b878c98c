// End-to-end tests of the command-line binary (path given by FEYN_CLI):
// exit codes, output determinism across worker counts, and round-trips of
// the CSV/JSON emissions back through the library.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <string>

#include "doctest.h"
#include "feyn/dominant.hpp"
#include "feyn/generate.hpp"
#include "feyn/io.hpp"
#include "feyn/maps2pi.hpp"
#include "feyn/oracle.hpp"
#include "feyn/reduce.hpp"
#include "feyn/series.hpp"

using namespace feyn;
using nlohmann::json;

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("FEYN_CLI");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  RunResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

}  // namespace

TEST_CASE("exit codes: success, check failure, usage error") {
  CHECK(run_cli("maps --n 1").status == 0);
  CHECK(run_cli("no-such-command").status == 2);
  CHECK(run_cli("maps").status == 2);          // missing required --n
  CHECK(run_cli("dominant --genus 1").status == 2);  // no action flag
  CHECK(run_cli("enumerate --vertices 99").status == 1);  // resource cap
  CHECK(run_cli("--help").status == 0);
}

TEST_CASE("worker count never changes output bytes") {
  for (const std::string& cmd :
       {std::string("enumerate --vertices 4 --melon-free"),
        std::string("schemes --genus 1"),
        std::string("gf --genus 1 --order 8"),
        std::string("graphs --genus 1 --max-vertices 6")}) {
    RunResult a = run_cli(cmd + " --threads 1");
    RunResult b = run_cli(cmd + " --threads 4");
    CHECK(a.status == 0);
    CHECK(b.status == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("census CSV round-trips through re-import") {
  RunResult r = run_cli("enumerate --vertices 4 --melon-free");
  REQUIRE(r.status == 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  CHECK(line == "v,g,ell,melon_free,count");
  Census want = census(4, is_melon_free);
  std::map<CensusKey, int64_t> got;
  while (std::getline(in, line)) {
    CensusKey k;
    int mf = 0;
    int64_t cnt = 0;
    REQUIRE(std::sscanf(line.c_str(), "%d,%d,%d,%d,%ld", &k.v, &k.g, &k.ell,
                        &mf, &cnt) == 5);
    k.melon_free = mf != 0;
    got[k] = cnt;
  }
  CHECK(got == want.rows);
}

TEST_CASE("scheme JSON re-parses to equal canonical codes") {
  RunResult r = run_cli("schemes --genus 1");
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["genus"] == 1);
  CHECK(j["count"] == 18);
  int two_pi = 0;
  for (const json& js : j["schemes"]) {
    Graph s = graph_from_json(js);
    CHECK(canonical_hex(s) == js["code"].get<std::string>());
    CHECK(is_2pi(s) == js["two_pi"].get<bool>());
    if (js["two_pi"].get<bool>()) ++two_pi;
  }
  CHECK(two_pi == 2);
}

TEST_CASE("dominant listing equals the tree images") {
  RunResult r = run_cli("dominant --genus 2 --list");
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  REQUIRE(j["count"] == 16);
  std::set<std::string> got, want;
  for (const json& js : j["schemes"]) got.insert(js["code"].get<std::string>());
  for (const DecoratedTree& t : enumerate_trees(2))
    want.insert(canonical_hex(tree_to_scheme(t)));
  CHECK(got == want);
}

TEST_CASE("generating-function JSON re-sums to the library series") {
  RunResult r = run_cli("gf --genus 1 --order 12");
  REQUIRE(r.status == 0);
  json j = json::parse(r.out);
  CHECK(j["variable"] == "lambda");
  REQUIRE(j["coeffs"].size() == 13);
  std::vector<SchemeSignature> sigs;
  for (const Graph& s : schemes_genus_one()) sigs.push_back(signature_of(s));
  PowerSeries G = genus_gf(sigs, 6);
  for (int k = 0; k <= 12; ++k) {
    Rational c(BigInt(j["coeffs"][k][0].get<std::string>()),
               BigInt(j["coeffs"][k][1].get<std::string>()));
    CHECK(c == (k % 2 == 0 ? G[k / 2] : Rational(0)));
  }
}

TEST_CASE("counts match the closed forms") {
  CHECK(run_cli("dominant --genus 3 --count").out == "256\n");
  CHECK(run_cli("two-pi --genus 3 --count").out == "128\n");
  json m = json::parse(run_cli("maps --n 3 --list").out);
  CHECK(m["count"] == 24);
  CHECK(m["closed_form"] == "24");
  CHECK(m["maps"].size() == 24);
}

TEST_CASE("verify writes a JSON report and exits by outcome") {
  std::string tmp = "cli_report_test.json";
  RunResult r = run_cli("verify --suite series --out " + tmp);
  CHECK(r.status == 0);
  json j = read_json_file(tmp);
  CHECK(j["suite"] == "series");
  CHECK(j["pass"] == true);
  CHECK(j["checks"].size() >= 2);
  for (const json& c : j["checks"]) {
    CHECK(c["pass"] == true);
    CHECK(c.contains("expected"));
    CHECK(c.contains("computed"));
    CHECK(c.contains("seconds"));
  }
  std::remove(tmp.c_str());
}

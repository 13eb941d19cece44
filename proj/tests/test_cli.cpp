#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#ifndef BALLASY_CLI
#error "BALLASY_CLI must point at the built binary"
#endif

namespace {

int run(const std::string& args, std::string* out = nullptr) {
  const std::string cmd = std::string(BALLASY_CLI) + " " + args + " > /tmp/ballasy_cli_out.txt 2>&1";
  const int status = std::system(cmd.c_str());
  if (out) {
    std::ifstream is("/tmp/ballasy_cli_out.txt");
    std::stringstream ss;
    ss << is.rdbuf();
    *out = ss.str();
  }
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("classify prints the case and exits zero") {
  std::string out;
  CHECK(run("classify --family propB --n 1 --delta 0 --t 1.5 --r 1 --k 0", &out) == 0);
  CHECK(out.find("B(4): t+r−δ>n+1>max{r−δ,t−δ}") != std::string::npos);
  CHECK(run("classify --family propA-I --n 2 --c -1", &out) == 0);
  CHECK(out.find("A(1): bounded") != std::string::npos);
}

TEST_CASE("classify exits 2 on an uncovered regime") {
  std::string out;
  CHECK(run("classify --family p32 --n 1 --delta 0 --t 1 --r 3 --k 1", &out) == 2);
  CHECK(out.find("uncovered") != std::string::npos);
}

TEST_CASE("malformed flags exit 1") {
  CHECK(run("classify --family no-such-family --n 1") == 1);
  CHECK(run("classify --bogus-flag 3") == 1);
  CHECK(run("multiplier --psi unknown-tag") == 1);
}

TEST_CASE("verify writes reports and exits 0 on pass, 3 on fail") {
  std::remove("/tmp/ballasy_rep.csv");
  std::remove("/tmp/ballasy_sum.json");
  CHECK(run("verify --family propA-I --n 1 --c 1 --m-lo 2 --m-hi 13 --window-bound 2 "
            "--slope-tol 0.05 --out /tmp/ballasy_rep.csv --summary /tmp/ballasy_sum.json") == 0);
  const std::string csv = slurp("/tmp/ballasy_rep.csv");
  CHECK(csv.rfind("# schema=1\n", 0) == 0);
  CHECK(csv.find("m,radius,dir_index,coupling,lhs,lhs_err,rhs,ratio,case_id") != std::string::npos);
  const std::string json = slurp("/tmp/ballasy_sum.json");
  CHECK(json.find("\"verdict\": \"pass\"") != std::string::npos);

  // deliberately mis-cased right-hand side: exit 3
  CHECK(run("verify --family propA-I --n 1 --c 1 --m-lo 2 --m-hi 13 --slope-tol 0.05 "
            "--debug-rhs-offset 0.5") == 3);
}

TEST_CASE("verify exits 2 on an uncovered family") {
  CHECK(run("verify --family p32 --n 1 --delta 0 --t 1 --r 3 --k 1 --m-hi 8") == 2);
}

TEST_CASE("verify exits 4 when the report path is unwritable") {
  CHECK(run("verify --family propA-I --n 1 --c 1 --m-hi 8 --out /nonexistent-dir/rep.csv") == 4);
}

TEST_CASE("config round-trip") {
  CHECK(run("verify --family propA-I --n 1 --c 1 --m-lo 3 --m-hi 9 --rel-tol 1e-7 --seed 5 "
            "--emit-config /tmp/ballasy_cfg1.txt") == 0);
  CHECK(run("verify --config /tmp/ballasy_cfg1.txt --emit-config /tmp/ballasy_cfg2.txt") == 0);
  CHECK(slurp("/tmp/ballasy_cfg1.txt") == slurp("/tmp/ballasy_cfg2.txt"));
  CHECK(!slurp("/tmp/ballasy_cfg1.txt").empty());

  // flags override file values
  CHECK(run("verify --config /tmp/ballasy_cfg1.txt --m-hi 11 --emit-config /tmp/ballasy_cfg3.txt") == 0);
  CHECK(slurp("/tmp/ballasy_cfg3.txt").find("m_hi = 11") != std::string::npos);
  CHECK(slurp("/tmp/ballasy_cfg3.txt").find("m_lo = 3") != std::string::npos);
}

TEST_CASE("reports are byte-stable for a fixed seed and config") {
  CHECK(run("verify --family propB --n 1 --t 1.5 --r 1 --k 0 --coupling same --m-hi 9 "
            "--out /tmp/ballasy_rep_a.csv --summary /tmp/ballasy_sum_a.json") == 0);
  CHECK(run("verify --family propB --n 1 --t 1.5 --r 1 --k 0 --coupling same --m-hi 9 "
            "--out /tmp/ballasy_rep_b.csv --summary /tmp/ballasy_sum_b.json") == 0);
  CHECK(slurp("/tmp/ballasy_rep_a.csv") == slurp("/tmp/ballasy_rep_b.csv"));
  CHECK(slurp("/tmp/ballasy_sum_a.json") == slurp("/tmp/ballasy_sum_b.json"));
}

TEST_CASE("multiplier reports") {
  std::string out;
  CHECK(run("multiplier --psi one --n 1 --p 2 --s 0.5 --alpha 0.75 --nu-matched", &out) == 0);
  CHECK(out.find("\"3.8\"") != std::string::npos);
  CHECK(out.find("\"divergence\": false") != std::string::npos);

  CHECK(run("multiplier --psi psi1 --n 1 --p 2 --s 0.5 --alpha 0.75 --nu-matched "
            "--out /tmp/ballasy_mult.json", &out) == 0);
  const std::string json = slurp("/tmp/ballasy_mult.json");
  CHECK(json.find("\"3.12\"") != std::string::npos);
  CHECK(json.find("\"divergence\": true") != std::string::npos);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "ballasy/verifier.hpp"

using namespace ballasy;

namespace {

SweepPlan quick_plan(int m_lo, int m_hi, int n, Coupling c = Coupling::none) {
  SweepPlan p = SweepPlan::dyadic(m_lo, m_hi, n, c);
  p.cfg.rel_tol = 1e-8;
  return p;
}

}  // namespace

TEST_CASE("closed-form case: window stays at one") {
  const KernelFamily fam = KernelFamily::propA_I(1, 1.0);
  const SweepReport rep = run_sweep(fam, quick_plan(2, 13, 1));
  CHECK(rep.summary.window <= 1.001);
  CHECK(rep.summary.excluded_rows == 0);
  const auto v = verdict(rep, 2.0, 0.05);
  CHECK(v.pass);
  // the sweep values agree with the exact closed form pointwise
  for (const auto& row : rep.rows)
    CHECK(std::abs(row.lhs - 1.0 / row.u) <= 1e-7 / row.u);
}

TEST_CASE("exact closed forms keep the window within 1.01") {
  SUBCASE("ball series with exponent four") {
    const SweepReport rep =
        run_sweep(KernelFamily::propA_J(1, 0.0, 2.0), quick_plan(2, 12, 1));
    CHECK(rep.summary.window <= 1.01);
  }
  SUBCASE("radial family, c = 1") {
    const SweepReport rep = run_sweep(KernelFamily::l21_I1(0, 1, 0), quick_plan(2, 13, 1));
    CHECK(rep.summary.window <= 1.01);
  }
  SUBCASE("radial family, c = 0: exact form -log(1-rho)/rho") {
    const SweepReport rep = run_sweep(KernelFamily::l21_I1(0, 0, 0), quick_plan(2, 13, 1));
    double mn = 1e300, mx = 0;
    for (const auto& row : rep.rows) {
      const double exact = -std::log1p(-row.radius) / row.radius;
      mn = std::min(mn, row.lhs / exact);
      mx = std::max(mx, row.lhs / exact);
    }
    CHECK(mx / mn <= 1.01);
  }
}

TEST_CASE("bounded two-point case passes with the default window bound") {
  const KernelFamily fam = KernelFamily::propB(1, 0, 1.5, 1.0, 0.0);
  SweepPlan plan = quick_plan(2, 13, 1, Coupling::same);
  const SweepReport rep = run_sweep(fam, plan);
  CHECK(rep.summary.window <= 50.0);
  for (const auto& row : rep.rows) CHECK(std::isfinite(row.ratio));
  CHECK(verdict(rep, 50.0, 0.1).pass);
}

TEST_CASE("one-sided verdict for the lower-bound family only") {
  const KernelFamily fam = KernelFamily::l22(1, 1.6, 0.4, -1.0);
  SweepPlan plan = quick_plan(2, 13, 1, Coupling::fixed);
  const SweepReport rep = run_sweep(fam, plan);
  CHECK(rep.summary.one_sided);
  CHECK(verdict(rep, 50.0, 0.1).pass);

  // a two-sided family never takes the one-sided branch
  const SweepReport rep2 = run_sweep(KernelFamily::propA_I(1, 0.5), quick_plan(2, 10, 1));
  CHECK_FALSE(rep2.summary.one_sided);
}

TEST_CASE("negative control: a wrong exponent fails the verdict") {
  const KernelFamily fam = KernelFamily::propA_I(1, 1.0);
  SweepPlan plan = quick_plan(2, 13, 1);
  plan.rhs_exponent_offset = 0.5;
  const SweepReport rep = run_sweep(fam, plan);
  const auto v = verdict(rep, 50.0, 0.05);
  CHECK_FALSE(v.pass);
  CHECK(std::abs(rep.summary.slope - rep.summary.predicted) > 0.4);
}

TEST_CASE("ratio diverging tenfold between tail radii fails stabilization") {
  const KernelFamily fam = KernelFamily::propA_I(1, 0.5);
  SweepPlan plan = quick_plan(2, 13, 1);
  plan.rhs_exponent_offset = std::log2(10.0);  // lhs/rhs grows 10x per dyadic step
  const SweepReport rep = run_sweep(fam, plan);
  CHECK_FALSE(rep.summary.stabilization);
  CHECK_FALSE(verdict(rep, 1e9, 1e9).pass);  // stabilization alone sinks it
}

TEST_CASE("summary is independent of worker count") {
  const KernelFamily fam = KernelFamily::propB(1, 0, 2.0, 0.75, 1.0);
  SweepPlan plan = quick_plan(2, 11, 1, Coupling::fixed);
  setenv("BALL_ASY_THREADS", "1", 1);
  const SweepReport serial = run_sweep(fam, plan);
  setenv("BALL_ASY_THREADS", "4", 1);
  const SweepReport parallel = run_sweep(fam, plan);
  unsetenv("BALL_ASY_THREADS");
  REQUIRE(serial.rows.size() == parallel.rows.size());
  for (size_t i = 0; i < serial.rows.size(); ++i) {
    CHECK(serial.rows[i].lhs == parallel.rows[i].lhs);
    CHECK(serial.rows[i].ratio == parallel.rows[i].ratio);
  }
  CHECK(serial.summary.window == parallel.summary.window);
  CHECK(serial.summary.slope == parallel.summary.slope);
}

TEST_CASE("fitted exponents for the power cases") {
  SUBCASE("c = 1 gives slope -1") {
    const SweepReport rep = run_sweep(KernelFamily::propA_I(1, 1.0), quick_plan(2, 13, 1));
    const auto [slope, predicted] = fit_boundary_exponent(rep);
    CHECK(predicted == doctest::Approx(-1.0));
    CHECK(std::abs(slope - (-1.0)) <= 0.02);
    CHECK(std::abs(rep.summary.raw_slope - (-1.0)) <= 0.02);
  }
  SUBCASE("bounded case gives slope 0") {
    const SweepReport rep = run_sweep(KernelFamily::propA_I(1, -1.0), quick_plan(2, 13, 1));
    CHECK(std::abs(rep.summary.slope) <= 0.05);
    CHECK(std::abs(rep.summary.raw_slope) <= 0.05);
  }
  SUBCASE("pure-log case: growth against log(e/(1-rho)) has slope k+1") {
    const SweepReport rep = run_sweep(KernelFamily::l21_I1(0, 0, 0), quick_plan(2, 13, 1));
    CHECK(rep.summary.predicted == 0.0);
    CHECK(std::abs(rep.summary.log_slope - 1.0) <= 0.05);
  }
  SUBCASE("too few rows to fit") {
    const SweepReport rep = run_sweep(KernelFamily::propA_I(1, 1.0), quick_plan(2, 4, 1));
    CHECK_THROWS_AS(fit_boundary_exponent(rep), DomainError);
  }
}

TEST_CASE("per-row dominant term is recorded for two-term displays") {
  const KernelFamily fam = KernelFamily::propC(1, 0.5, 0.5);
  SweepPlan plan = quick_plan(2, 10, 1, Coupling::fixed);
  const SweepReport rep = run_sweep(fam, plan);
  for (const auto& row : rep.rows) CHECK(row.note.find("dominant") != std::string::npos);
}

TEST_CASE("plan validation") {
  const KernelFamily fam = KernelFamily::propB(1, 0, 1.5, 1.0, 0.0);
  SweepPlan p = SweepPlan::dyadic(2, 10, 1, Coupling::same);
  SweepPlan bad = p;
  bad.radii.back() = 1.0 - 1e-8;
  CHECK_THROWS_AS(bad.validate(fam), DomainError);
  SweepPlan bad2 = p;
  std::swap(bad2.radii[0], bad2.radii[1]);
  CHECK_THROWS_AS(bad2.validate(fam), DomainError);
  SweepPlan bad3 = p;
  bad3.coupling = Coupling::none;
  CHECK_THROWS_AS(bad3.validate(fam), DomainError);
  SweepPlan bad4 = p;
  bad4.directions[0] = CPoint{Cx(0.5, 0)};
  CHECK_THROWS_AS(bad4.validate(fam), DomainError);
}

TEST_CASE("CSV and JSON emission") {
  const KernelFamily fam = KernelFamily::propA_I(1, 1.0);
  const SweepReport rep = run_sweep(fam, quick_plan(2, 8, 1));
  std::ostringstream os;
  write_csv(rep, os);
  const std::string csv = os.str();
  CHECK(csv.rfind("# schema=1\n", 0) == 0);
  CHECK(csv.find("m,radius,dir_index,coupling,lhs,lhs_err,rhs,ratio,case_id") != std::string::npos);
  CHECK(csv.find("A(3)") != std::string::npos);

  const auto v = verdict(rep, 2.0, 0.05);
  const std::string json = summary_json(rep, v);
  for (const char* key : {"\"case\"", "\"window\"", "\"slope\"", "\"predicted\"", "\"verdict\"",
                          "\"excluded_rows\""})
    CHECK(json.find(key) != std::string::npos);
  CHECK(json.find("\"pass\"") != std::string::npos);

  // byte stability under repetition
  const SweepReport rep2 = run_sweep(fam, quick_plan(2, 8, 1));
  std::ostringstream os2;
  write_csv(rep2, os2);
  CHECK(os2.str() == csv);
}

TEST_CASE("predicted exponent accounts for the coupling") {
  const KernelFamily b6 = KernelFamily::propB(1, 0, 2.5, 0.5, 1.0);
  CHECK(classify(b6).label() == "B(6)");
  // display: (1-|w|^2)^{-0.5} |1-<w,a>|^{-0.5} log^k
  CHECK(predicted_exponent(b6, Coupling::same) == doctest::Approx(-1.0));
  CHECK(predicted_exponent(b6, Coupling::fixed) == doctest::Approx(-0.5));
  const KernelFamily c7 = KernelFamily::propC(1, 0.5, 0.5);
  CHECK(predicted_exponent(c7, Coupling::same) == doctest::Approx(-2.0));
  CHECK(predicted_exponent(c7, Coupling::fixed) == doctest::Approx(-0.5));
}

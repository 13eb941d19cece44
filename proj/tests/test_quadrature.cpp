#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ballasy/quadrature.hpp"
#include "ballasy/rng.hpp"
#include "ballasy/special.hpp"
#include "test_util.hpp"

using namespace ballasy;
using testutil::close_rel;

TEST_CASE("radial integrals with endpoint singularities") {
  QuadConfig cfg;
  cfg.rel_tol = 1e-9;
  CHECK(close_rel(integrate_radial([](double r) { return r; }, cfg).value, 0.5, 1e-10));
  CHECK(close_rel(integrate_radial([](double r) { return 1.0 / std::sqrt(1.0 - r); }, cfg).value,
                  2.0, 1e-8));
  CHECK(close_rel(integrate_radial([](double r) { return 1.0 / (1.0 - 0.5 * r); }, cfg).value,
                  2.0 * std::log(2.0), 1e-10));
  // log-singular endpoint
  CHECK(close_rel(integrate_radial([](double r) { return std::log(1.0 - r); }, cfg).value, -1.0,
                  1e-8));
}

TEST_CASE("non-integrable function reports non-convergence with a partial value") {
  QuadConfig cfg;
  cfg.max_subdivisions = 120;
  bool threw = false;
  try {
    integrate_radial([](double r) { return 1.0 / (1.0 - r); }, cfg);
  } catch (const QuadratureFailure& e) {
    threw = true;
    CHECK(e.partial_value > 10.0);
    CHECK(e.evaluations > 0);
  }
  CHECK(threw);
}

TEST_CASE("sphere integration") {
  QuadConfig cfg;
  cfg.rel_tol = 1e-10;
  SUBCASE("normalization for n = 1..3") {
    for (int n : {1, 2, 3}) {
      auto one = [](const CPoint&) { return 1.0; };
      const auto res = integrate_sphere(one, n, cfg, CPoint::axis(n, 0, Cx(0.5, 0)));
      CHECK(close_rel(res.value, 1.0, 1e-10));
    }
  }
  SUBCASE("exact circle kernel") {
    CPoint w{0.5};
    auto f = [&](const CPoint& xi) { return 1.0 / std::norm(Cx(1, 0) - inner(xi, w)); };
    const auto res = integrate_sphere(f, 1, cfg, w);
    CHECK(close_rel(res.value, 4.0 / 3.0, 1e-8));
    CHECK(res.method == Method::slice_reduced);
  }
  SUBCASE("slice agrees with Monte Carlo at n = 2") {
    CPoint w{Cx(0.35, 0.1), Cx(-0.2, 0.25)};
    auto f = [&](const CPoint& xi) {
      return std::pow(std::abs(Cx(1, 0) - inner(xi, w)), -2.0);
    };
    const auto sliced = integrate_sphere(f, 2, cfg, w);
    QuadConfig mc_cfg;
    mc_cfg.mc_samples = 200000;
    mc_cfg.seed = 11;
    const auto mc = integrate_sphere(f, 2, mc_cfg);
    CHECK(mc.method == Method::monte_carlo);
    CHECK(std::abs(sliced.value - mc.value) <= 3.0 * mc.error_estimate);
  }
}

TEST_CASE("ball integration") {
  QuadConfig cfg;
  cfg.rel_tol = 1e-9;
  SUBCASE("normalization") {
    for (int n : {1, 2, 3}) {
      auto one = [](const CPoint&) { return 1.0; };
      const auto res = integrate_ball(one, n, cfg, CPoint::axis(n, 0, Cx(0.5, 0)));
      CHECK(close_rel(res.value, 1.0, 1e-10));
    }
  }
  SUBCASE("radial moments") {
    auto f = [](const CPoint& z) { return 1.0 - z.norm_sq(); };
    CHECK(close_rel(integrate_ball(f, 1, cfg, CPoint::axis(1, 0)).value, 0.5, 1e-8));
    CHECK(close_rel(integrate_ball(f, 2, cfg, CPoint::axis(2, 0)).value, 1.0 / 3.0, 1e-8));
  }
}

TEST_CASE("slice reduction consistency against Monte Carlo") {
  // kernels |1 - <xi,w>|^{-q} with q < n
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> qd(0.2, 0.95);
  std::uniform_real_distribution<double> rd(0.1, 0.6);
  QuadConfig cfg;
  cfg.rel_tol = 1e-9;
  QuadConfig mc_cfg;
  mc_cfg.mc_samples = 100000;
  for (int it = 0; it < 20; ++it) {
    const int n = 1 + (it % 2);
    const double q = qd(gen) * n;
    const CPoint w = testutil::random_unit(gen, n).scaled(Cx(rd(gen), 0));
    auto f = [&](const CPoint& xi) {
      return std::pow(std::abs(Cx(1, 0) - inner(xi, w)), -q);
    };
    mc_cfg.seed = 1000 + it;
    const auto sliced = integrate_sphere(f, n, cfg, w);
    const auto mc = integrate_sphere(f, n, mc_cfg);
    CHECK(std::abs(sliced.value - mc.value) <= 3.0 * mc.error_estimate + 1e-9);
  }
}

TEST_CASE("Monte Carlo determinism") {
  auto f = [](const CPoint& z) { return z.norm_sq(); };
  QuadConfig a;
  a.mc_samples = 20000;
  a.seed = 42;
  QuadConfig b = a;
  const auto r1 = mc_ball(f, 2, a);
  const auto r2 = mc_ball(f, 2, b);
  CHECK(r1.value == r2.value);  // bit identical
  CHECK(r1.error_estimate == r2.error_estimate);
  b.seed = 43;
  CHECK(mc_ball(f, 2, b).value != r1.value);
}

TEST_CASE("refinement convergence: halving rel_tol moves the value at most by the estimate") {
  std::vector<Fn1> fs = {
      [](double r) { return std::pow(1.0 - r, -0.4); },
      [](double r) { return std::log(1.0 / (1.0 - 0.99 * r)); },
      [](double r) { return std::pow(r, -0.3) * std::pow(1.0 - r, -0.3); },
  };
  for (const auto& f : fs) {
    QuadConfig cfg;
    cfg.rel_tol = 1e-6;
    for (int step = 0; step < 4; ++step) {
      const auto coarse = integrate_radial(f, cfg);
      QuadConfig finer = cfg;
      finer.rel_tol = cfg.rel_tol / 2;
      const auto fine = integrate_radial(f, finer);
      CHECK(std::abs(fine.value - coarse.value) <= coarse.error_estimate + 1e-14);
      cfg = finer;
    }
  }
}

TEST_CASE("gamma function accuracy") {
  CHECK(close_rel(gamma_fn(0.5), std::sqrt(M_PI), 1e-13));
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_fn(5.0) == doctest::Approx(24.0).epsilon(1e-14));
  CHECK(gamma_fn(10.0) == doctest::Approx(362880.0).epsilon(1e-13));
  for (double x = 0.5; x <= 30.0; x += 0.173) {
    CHECK(close_rel(gamma_fn(x), std::tgamma(x), 1e-12));
    CHECK(std::abs(log_gamma(x) - std::lgamma(x)) <= 1e-12 * std::max(1.0, std::abs(std::lgamma(x))));
  }
  CHECK(close_rel(beta_fn(2.0, 3.0), 1.0 / 12.0, 1e-13));
  CHECK_THROWS_AS(gamma_fn(0.0), DomainError);
}

TEST_CASE("periodic trapezoid mean") {
  // sharp but analytic circle kernel
  const double s = 1.0 - std::pow(2.0, -10);
  auto g = [&](double th) { return 1.0 / std::norm(Cx(1, 0) - std::polar(s, th)); };
  QuadConfig cfg;
  cfg.rel_tol = 1e-9;
  const auto res = periodic_mean_trapezoid(g, cfg.rel_tol, 1L << 22);
  CHECK(close_rel(res.value, 1.0 / (1.0 - s * s), 1e-8));
}

TEST_CASE("deterministic per-index sample streams") {
  SplitMix64 s1 = stream_for(7, 123);
  SplitMix64 s2 = stream_for(7, 123);
  CHECK(sample_sphere(3, s1)[2] == sample_sphere(3, s2)[2]);
  SplitMix64 s3 = stream_for(7, 124);
  CHECK(sample_sphere(3, s3)[0] != sample_sphere(3, s1)[0]);
}

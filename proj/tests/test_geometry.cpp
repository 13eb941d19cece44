#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ballasy/geometry.hpp"
#include "test_util.hpp"

using namespace ballasy;
using testutil::random_ball_point;

TEST_CASE("inner product") {
  CHECK(inner(CPoint{1.0, 0.0}, CPoint{0.0, 1.0}) == Cx(0, 0));
  CHECK(inner(CPoint{0.6, 0.0}, CPoint{0.6, 0.0}).real() == doctest::Approx(0.36));
  CHECK(inner(CPoint{0.6, 0.0}, CPoint{0.6, 0.0}).imag() == 0.0);
  const Cx v = inner(CPoint{Cx(0, 0.5)}, CPoint{Cx(0.5, 0)});
  CHECK(std::abs(v - Cx(0, 0.25)) < 1e-15);
  CHECK(std::abs(inner(CPoint{Cx(0.2, 0.3)}, CPoint{Cx(-0.1, 0.4)}) -
                 std::conj(inner(CPoint{Cx(-0.1, 0.4)}, CPoint{Cx(0.2, 0.3)}))) < 1e-15);
  CHECK_THROWS_AS(inner(CPoint{1.0}, CPoint{1.0, 0.0}), DomainError);
}

TEST_CASE("mobius fixed values") {
  std::mt19937_64 rng(77);
  for (int n : {1, 2, 3}) {
    const CPoint a = random_ball_point(rng, n, 0.9);
    CHECK(mobius(a, a).norm() < 1e-12);                      // phi_a(a) = 0
    const CPoint at0 = mobius(a, CPoint::zero(n));
    double d = 0;
    for (int i = 0; i < n; ++i) d = std::max(d, std::abs(at0[i] - a[i]));
    CHECK(d < 1e-12);                                        // phi_a(0) = a
  }
  // one dimension: (a - z)/(1 - conj(a) z)
  const CPoint img = mobius(CPoint{0.5}, CPoint{0.3});
  CHECK(std::abs(img[0] - Cx(0.2 / 0.85, 0)) < 1e-15);
  CHECK_THROWS_AS(mobius(CPoint{1.0}, CPoint{0.3}), DomainError);
  CHECK_THROWS_AS(mobius(CPoint{0.5}, CPoint{1.0}), DomainError);
  CHECK_THROWS_AS(mobius(CPoint{1.0 - 1e-15}, CPoint{0.0}), DomainError);  // boundary margin
}

TEST_CASE("identities (1.1) and (1.2)") {
  std::mt19937_64 rng(123);
  for (int n : {1, 2, 3}) {
    for (int it = 0; it < 2000; ++it) {
      const CPoint a = random_ball_point(rng, n);
      const CPoint z = random_ball_point(rng, n);
      const CPoint w = random_ball_point(rng, n);
      const CPoint pz = mobius(a, z);
      const CPoint pw = mobius(a, w);
      const Cx lhs11 = Cx(1, 0) - inner(pz, pw);
      const Cx rhs11 = (1.0 - a.norm_sq()) * (Cx(1, 0) - inner(z, w)) /
                       ((Cx(1, 0) - inner(z, a)) * (Cx(1, 0) - inner(a, w)));
      CHECK(std::abs(lhs11 - rhs11) <= 1e-12);
      const double lhs12 = 1.0 - pz.norm_sq();
      const double rhs12 = (1.0 - a.norm_sq()) * (1.0 - z.norm_sq()) /
                           std::norm(Cx(1, 0) - inner(z, a));
      CHECK(std::abs(lhs12 - rhs12) <= 1e-12);
      // second identity of (1.2)
      const Cx lhs12b = Cx(1, 0) - inner(pz, a);
      const Cx rhs12b = (1.0 - a.norm_sq()) / (Cx(1, 0) - inner(z, a));
      CHECK(std::abs(lhs12b - rhs12b) <= 1e-12);
    }
  }
}

TEST_CASE("involution within 1e-10") {
  std::mt19937_64 rng(5);
  for (int n : {1, 2, 3}) {
    for (int it = 0; it < 500; ++it) {
      const CPoint a = random_ball_point(rng, n, 0.999);
      const CPoint z = random_ball_point(rng, n, 0.999);
      const CPoint back = mobius(a, mobius(a, z));
      double d = 0;
      for (int i = 0; i < n; ++i) d = std::max(d, std::abs(back[i] - z[i]));
      CHECK(d <= 1e-10);
    }
  }
}

TEST_CASE("bergman metric") {
  CHECK(bergman_metric(CPoint{0.3, 0.2}, CPoint{0.3, 0.2}) == doctest::Approx(0.0));
  CHECK(bergman_metric(CPoint{0.5}, CPoint{0.0}) == doctest::Approx(0.5 * std::log(3.0)));
  CHECK_THROWS_AS(bergman_metric(CPoint{1.0}, CPoint{0.0}), DomainError);

  std::mt19937_64 rng(9);
  SUBCASE("symmetry over random pairs") {
    for (int it = 0; it < 100; ++it) {
      const CPoint z = random_ball_point(rng, 2);
      const CPoint a = random_ball_point(rng, 2);
      CHECK(std::abs(bergman_metric(z, a) - bergman_metric(a, z)) <= 1e-10);
    }
  }
  SUBCASE("Mobius invariance") {
    for (int it = 0; it < 100; ++it) {
      const CPoint z = random_ball_point(rng, 2, 0.98);
      const CPoint a = random_ball_point(rng, 2, 0.98);
      const CPoint u = random_ball_point(rng, 2, 0.9);
      CHECK(std::abs(bergman_metric(mobius(u, z), mobius(u, a)) - bergman_metric(z, a)) <= 1e-10);
    }
  }
}

TEST_CASE("bergman ball membership") {
  CHECK(in_bergman_ball(CPoint{0.3}, 0.1, CPoint{0.3}));
  CHECK_FALSE(in_bergman_ball(CPoint{0.0}, 0.5, CPoint{0.5}));  // beta = 0.5493 >= 0.5
  CHECK(in_bergman_ball(CPoint{0.0}, 0.6, CPoint{0.5}));
  CHECK_THROWS_AS(in_bergman_ball(CPoint{0.0}, -1.0, CPoint{0.5}), DomainError);
}

TEST_CASE("MobiusMap wrapper") {
  MobiusMap phi(CPoint{0.5});
  CHECK(std::abs(phi(CPoint{0.3})[0] - Cx(0.2 / 0.85, 0)) < 1e-15);
  CHECK_THROWS_AS(MobiusMap(CPoint{1.0}), DomainError);
}

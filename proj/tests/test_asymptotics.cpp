#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ballasy/asymptotics.hpp"
#include "test_util.hpp"

using namespace ballasy;
using testutil::random_ball_point;

TEST_CASE("classification of the stated examples") {
  CHECK(classify(KernelFamily::propA_I(1, -0.5)).label() == "A(1)");
  CHECK(classify(KernelFamily::propA_I(1, -0.5)).condition == "bounded");
  CHECK(classify(KernelFamily::propB(1, 0, 1.5, 1, 0)).label() == "B(4)");
  CHECK(classify(KernelFamily::propB(1, 0, 1.5, 1, 0)).condition == "t+r−δ>n+1>max{r−δ,t−δ}");
  CHECK(classify(KernelFamily::p31_G(1, 0, -1)).label() == "3.1(4)");
}

TEST_CASE("case boundaries compare exactly") {
  CHECK(classify(KernelFamily::propB(1, 0, 1.5, 0.5, 1)).label() == "B(2)");  // sum exactly n+1
  CHECK(classify(KernelFamily::propB(1, 0, 2.0, 0.75, 1)).label() == "B(3)");
  CHECK(classify(KernelFamily::propB(1, 0, 2.0, 2.0, 1)).label() == "B(5)");
  CHECK(classify(KernelFamily::propB(1, 0, 2.5, 2.0, 1)).label() == "B(8)");
  CHECK(classify(KernelFamily::propB(1, 0, 2.0, 0.0, 1)).label() == "B(9)");
  CHECK(classify(KernelFamily::propC(1, -0.5, -0.5)).label() == "C(2)");
  CHECK(classify(KernelFamily::propC(1, 0.0, 0.0)).label() == "C(5)");
  CHECK(classify(KernelFamily::propC(1, 0.5, 0.0)).label() == "C(8)");
  CHECK(classify(KernelFamily::l22(1, 1.6, 0.4, -1.0)).label() == "2.2");
}

TEST_CASE("uncovered regimes throw") {
  CHECK_THROWS_AS(classify(KernelFamily::p32(1, 0, 1, 3, 1)), UncoveredRegime);
  CHECK_THROWS_AS(classify(KernelFamily::propC(1, -0.5, 0.0)), UncoveredRegime);  // mirror of C(3)
  CHECK_THROWS_AS(classify(KernelFamily::propC(1, -0.25, 0.5)), UncoveredRegime); // mirror of C(6)
  CHECK_THROWS_AS(classify(KernelFamily::propB(1, 0, 0.5, 2.0, 1)), UncoveredRegime); // mirror of B(3)
  CHECK_THROWS_AS(classify(KernelFamily::l21_I2(0, 1.0, 0.0)), UncoveredRegime);  // I2 only covered at c=0
}

TEST_CASE("case totality under parameter fuzzing") {
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> d01(0.0, 1.0);
  auto fuzz = [&](auto make, int draws) {
    int covered = 0, uncovered = 0;
    for (int it = 0; it < draws; ++it) {
      KernelFamily fam = make(d01);
      int matches = count_matching_cases(fam);
      bool threw = false;
      try {
        (void)classify(fam);
      } catch (const UncoveredRegime&) {
        threw = true;
      }
      if (threw) {
        CHECK(matches == 0);
        ++uncovered;
      } else {
        CHECK(matches == 1);
        ++covered;
      }
    }
    CHECK(covered > 0);
    return uncovered;
  };

  fuzz([&](auto& d) { return KernelFamily::propA_I(1 + (rng() % 3), 6 * d(rng) - 3); }, 10000);
  fuzz([&](auto& d) {
    return KernelFamily::propB(1 + (rng() % 2), 2 * d(rng) - 0.9, 4 * d(rng), 4 * d(rng),
                               2 * d(rng));
  }, 10000);
  fuzz([&](auto& d) {
    const int n = 1 + (rng() % 2);
    return KernelFamily::propC(n, 3 * d(rng) - n + 0.01, 3 * d(rng) - n + 0.01);
  }, 10000);
  fuzz([&](auto& d) {
    return KernelFamily::p32(1 + (rng() % 2), 2 * d(rng) - 0.9, 4 * d(rng) + 0.01,
                             4 * d(rng) + 0.01, 2 * d(rng) + 0.01);
  }, 10000);
  fuzz([&](auto& d) {
    return KernelFamily::l21_I1(2 * d(rng) - 0.9, 2 * d(rng), 4 * d(rng) - 2);
  }, 10000);
  fuzz([&](auto& d) { return KernelFamily::p31_G(1 + (rng() % 3), 4 * d(rng) - 2, 4 * d(rng) - 2); },
       10000);
}

TEST_CASE("right-hand-side values") {
  // A(3) at |w|^2 = 0.75
  auto [cid, v] = eval_rhs(KernelFamily::propA_I(1, 1.0),
                           PointPair::single(CPoint{std::sqrt(0.75)}));
  CHECK(cid.label() == "A(3)");
  CHECK(v == doctest::Approx(4.0).epsilon(1e-12));

  // Lemma 2.1(3) at rho = 0.5
  auto [cid2, v2] = eval_rhs(KernelFamily::l21_I1(0, 0, 0), PointPair::radial(0.5));
  CHECK(cid2.label() == "2.1(3)");
  CHECK(v2 == doctest::Approx(1.0 + std::log(2.0)).epsilon(1e-12));

  // B(1) is identically one
  auto [cid3, v3] = eval_rhs(KernelFamily::propB(1, 0, 0.4, 0.4, 1.0),
                             PointPair::pair(CPoint{0.62}, CPoint{Cx(0.1, 0.4)}));
  CHECK(cid3.label() == "B(1)");
  CHECK(v3 == 1.0);
}

TEST_CASE("rhs positivity at random interior points") {
  std::mt19937_64 rng(91);
  std::vector<KernelFamily> fams = {
      KernelFamily::propA_I(2, 1.3),     KernelFamily::p31_G(1, 0, -1),
      KernelFamily::p31_F(2, 0.5, 0.5, -2), KernelFamily::propB(1, 0, 2.0, 2.0, 1),
      KernelFamily::propB(2, 0.5, 4.0, 3.6, 1), KernelFamily::propC(2, 0.5, 0.5),
      KernelFamily::propC(1, 0.5, 0.0),  KernelFamily::p32(1, 0, 2.0, 0.75, 1),
      KernelFamily::l22(2, 2.5, 0.5, -1),
  };
  for (const auto& fam : fams) {
    for (int it = 0; it < 50; ++it) {
      PointPair pts = fam.is_radial()
                          ? PointPair::radial(0.99)
                          : (fam.is_two_point()
                                 ? PointPair::pair(random_ball_point(rng, fam.n, 0.99),
                                                   random_ball_point(rng, fam.n, 0.99))
                                 : PointPair::single(random_ball_point(rng, fam.n, 0.99)));
      CHECK(eval_rhs(fam, pts).second > 0.0);
    }
  }
}

TEST_CASE("two-term displays expose their terms") {
  const KernelFamily fam = KernelFamily::propC(1, 0.5, 0.5);
  const auto tv = eval_rhs_term_values(fam, PointPair::pair(CPoint{0.9}, CPoint{0.3}));
  REQUIRE(tv.size() == 2);
  const auto [cid, total] = eval_rhs(fam, PointPair::pair(CPoint{0.9}, CPoint{0.3}));
  CHECK(total == doctest::Approx(tv[0] + tv[1]).epsilon(1e-14));
}

TEST_CASE("note 1 closed-form maximization") {
  // eps = 1: stationary point x* = 1, value 1
  const auto f1 = note1_forms(CPoint{0.5}, CPoint{Cx(0.1, 0.2)}, 0.0, 3.0);
  CHECK(f1.M == doctest::Approx(1.0).epsilon(1e-14));
  // eps = 2: x* = sqrt(e), value e/2
  const auto f2 = note1_forms(CPoint{0.5}, CPoint{Cx(0.1, 0.2)}, 0.0, 4.0);
  CHECK(f2.M == doctest::Approx(std::exp(1.0) / 2.0).epsilon(1e-14));
  // displays coincide at the center
  const auto f0 = note1_forms(CPoint{0.0}, CPoint{0.0}, 0.0, 3.0);
  CHECK(f0.L1 == doctest::Approx(f0.L2).epsilon(1e-15));
  CHECK_THROWS_AS(note1_forms(CPoint{0.5}, CPoint{0.2}, 0.0, 1.5), DomainError);
}

TEST_CASE("note 1: the displayed chain holds with explicit constants") {
  // The one-sided inequality L1 <= (M+1) L2 is exact pointwise; the converse
  // direction carries the explicit constant (1 + log 2).
  std::mt19937_64 rng(15);
  for (int it = 0; it < 500; ++it) {
    const CPoint w = random_ball_point(rng, 1);
    const CPoint a = random_ball_point(rng, 1);
    const auto f = note1_forms(w, a, 0.0, 3.0);
    CHECK(f.L1 <= (f.M + 1.0) * f.L2 * (1.0 + 1e-12));
    CHECK(f.L2 <= (1.0 + std::log(2.0)) * f.L1 * (1.0 + 1e-12));
  }
}

TEST_CASE("sup bound of the auxiliary maximization") {
  const auto a = sup_bound_21(1.0, 0.0);
  CHECK(a.sup_value == doctest::Approx(2.0).epsilon(1e-14));
  const auto b = sup_bound_21(1.0, 1.0);
  CHECK(b.sup_value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(sup_bound_21(0.0, 1.0), DomainError);

  std::mt19937_64 rng(62);
  std::uniform_real_distribution<double> ed(1e-3, 3.0), yd(-4.0, 4.0);
  for (int it = 0; it < 1000; ++it) {
    const auto r = sup_bound_21(ed(rng), yd(rng));
    CHECK(r.sup_value >= 1.0 - 1e-12);
    CHECK(r.sup_value <= r.paper_bound * (1.0 + 1e-12));
  }
}

TEST_CASE("sup_bound matches brute-force maximization") {
  std::mt19937_64 rng(63);
  std::uniform_real_distribution<double> ed(0.05, 3.0), yd(-4.0, 4.0);
  for (int it = 0; it < 200; ++it) {
    const double eps = ed(rng), y = yd(rng);
    const auto r = sup_bound_21(eps, y);
    double brute = 0;
    for (int i = 1; i <= 20000; ++i) {
      const double x = 2.0 * i / 20001.0;
      brute = std::max(brute, std::pow(x, eps) * std::pow(1.0 - std::log(x), y));
    }
    CHECK(r.sup_value >= brute - 1e-9 * brute);
    CHECK(r.sup_value <= brute * 1.001 + 1e-9);
  }
}

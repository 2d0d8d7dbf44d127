#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "fraclap/params.hpp"

using namespace fraclap;

TEST_CASE("eval_reaction families") {
  std::array<double, 2> t{0.5, 0.25};
  CHECK(eval_reaction(ReactionSpec::zero(), 0.1, t) == 0.0);

  // Constant -2s applies whenever |t| >= theta.
  const double s = 0.75;
  auto cst = ReactionSpec::constant(-2.0 * s, 0.4);
  CHECK(eval_reaction(cst, 0.0, t, 0) == doctest::Approx(-1.5));
  std::array<double, 2> small{0.1, 0.1};
  CHECK(eval_reaction(cst, 0.0, small, 0) == 0.0);

  auto log0 = ReactionSpec::logistic(1.0, 1.0, 0.0);
  std::array<double, 1> half{0.5};
  CHECK(eval_reaction(log0, 0.0, half, 0) == doctest::Approx(0.25));
  auto log1 = ReactionSpec::logistic(1.0, 1.0, 1.0);
  CHECK(eval_reaction(log1, 0.0, half, 0) == 0.0);
}

TEST_CASE("reaction cutoff vanishes strictly below theta") {
  auto spec = ReactionSpec::logistic(2.0, 3.0, 0.7);
  for (int i = 0; i < 200; ++i) {
    // Deterministic sample of density vectors on the sphere of radius < 0.7.
    const double ang = 0.031 * i;
    const double rad = 0.699 * (i % 10) / 10.0;
    std::array<double, 2> t{rad * std::fabs(std::cos(ang)),
                            rad * std::fabs(std::sin(ang))};
    CHECK(eval_reaction(spec, 0.0, t, 0) == 0.0);
  }
  std::array<double, 2> above{0.7, 0.1};
  CHECK(eval_reaction(spec, 0.0, above, 0) != 0.0);
}

TEST_CASE("competition_term examples") {
  // beta = 0: no competition.
  auto p0 = ProblemParams::make(0.5, 2, 1.0, 1.0, 0.0);
  std::array<double, 2> t2{2.0, 3.0};
  CHECK(competition_term(p0, 0, t2) == 0.0);

  // k=2, beta=1, p=q=1, a_12=1, t=(2,3), i=1 -> 6.
  auto p1 = ProblemParams::make(0.5, 2, 1.0, 1.0, 1.0);
  CHECK(competition_term(p1, 0, t2) == doctest::Approx(6.0));

  // k=3, beta=10, p=q=2, a_ij=1, t=(1,1,1) -> 20.
  auto p2 = ProblemParams::make(0.5, 3, 2.0, 2.0, 10.0);
  std::array<double, 3> ones{1.0, 1.0, 1.0};
  CHECK(competition_term(p2, 0, ones) == doctest::Approx(20.0));
}

TEST_CASE("competition vanishes without self or partners and is monotone") {
  auto pp = ProblemParams::make(0.3, 3, 1.5, 2.5, 4.0);
  std::array<double, 3> t{0.0, 1.0, 2.0};
  CHECK(competition_term(pp, 0, t) == 0.0);
  std::array<double, 3> lonely{1.0, 0.0, 0.0};
  CHECK(competition_term(pp, 0, lonely) == 0.0);

  double prev = 0.0;
  for (int n = 0; n <= 8; ++n) {
    std::array<double, 3> tt{0.5, 0.25 * n, 1.0};
    const double v = competition_term(pp, 0, tt);
    CHECK(v >= prev);
    prev = v;
  }
  prev = 0.0;
  for (int n = 0; n <= 8; ++n) {
    std::array<double, 3> tt{0.25 * n, 0.5, 1.0};
    const double v = competition_term(pp, 0, tt);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("ProblemParams validation") {
  CHECK_THROWS_AS(ProblemParams::make(1.2, 2, 1, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(ProblemParams::make(0.5, 0, 1, 1, 0), std::invalid_argument);
  auto pp = ProblemParams::make(0.5, 2, 1, 1, 0);
  pp.set_aij(0, 1, -1.0);
  CHECK_THROWS_AS(pp.validate(), std::invalid_argument);
  pp.set_aij(0, 1, 1.0);
  pp.set_aij(0, 0, 0.5);
  CHECK_THROWS_AS(pp.validate(), std::invalid_argument);
}

#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "ramplane/projmap.hpp"

using namespace ramplane;
using namespace testsupport;

TEST_CASE("canonical projective representatives") {
  const ProjectivePoint p(Rat(2, 3), Rat(-4), Rat(0));
  CHECK(p.str() == "1:-6:0");
  CHECK(ProjectivePoint(Rat(-1), Rat(2), Rat(-2)).str() == "1:-2:2");
  CHECK(ProjectivePoint::parse("0:0:-5") == ProjectivePoint(Rat(0), Rat(0), Rat(1)));
  CHECK(ProjectivePoint::parse("2/3:1:0").str() == "2:3:0");
  CHECK_THROWS_AS(ProjectivePoint(Rat(0), Rat(0), Rat(0)), std::invalid_argument);
}

TEST_CASE("validation of the coordinate power maps") {
  for (int m = 1; m <= 6; ++m) {
    const PlaneEndomorphism f = power_map(m);
    CHECK(f.degree() == m);
    CHECK(f.is_degree_one() == (m == 1));
  }
}

TEST_CASE("maps with base points are rejected with a witness") {
  try {
    PlaneEndomorphism::parse("x^2", "x*y", "y^2");
    FAIL("expected a common zero");
  } catch (const common_zero_error& e) {
    REQUIRE(e.witness.has_value());
    CHECK(*e.witness == ProjectivePoint(Rat(0), Rat(0), Rat(1)));
  }
}

TEST_CASE("a shared linear factor is always rejected") {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<int> c(-3, 3);
  for (int trial = 0; trial < 10; ++trial) {
    Poly line;
    do {
      line = Rat(c(rng)) * Poly::variable(Var::x) +
             Rat(c(rng)) * Poly::variable(Var::y) +
             Rat(c(rng)) * Poly::variable(Var::z);
    } while (line.is_zero());
    const Poly q1 = random_form(1, 3, rng), q2 = random_form(1, 3, rng),
               q3 = random_form(1, 3, rng);
    if (q1.is_zero() || q2.is_zero() || q3.is_zero()) continue;
    CHECK_THROWS_AS(PlaneEndomorphism::validate(HomogeneousForm(line * q1),
                                                HomogeneousForm(line * q2),
                                                HomogeneousForm(line * q3)),
                    common_zero_error);
  }
}

TEST_CASE("perturbed power maps validate") {
  // degree 2 with constant g and degree 3 with linear g.
  CHECK(perturbed_power(2, Poly(Rat(1))).degree() == 2);
  const PlaneEndomorphism f = PlaneEndomorphism::parse("x^3", "y^3", "z^3 + x^2*y");
  CHECK(f.degree() == 3);
}

TEST_CASE("degree mismatches are rejected") {
  CHECK_THROWS_AS(PlaneEndomorphism::parse("x^2", "y^2", "z^3"),
                  degree_mismatch_error);
  CHECK_THROWS_AS(PlaneEndomorphism::parse("x^2", "y^2", "0"),
                  degree_mismatch_error);
}

TEST_CASE("evaluation at rational points") {
  const PlaneEndomorphism f = power_map(2);
  CHECK(f.evaluate(ProjectivePoint(Rat(1), Rat(2), Rat(3))) ==
        ProjectivePoint(Rat(1), Rat(4), Rat(9)));
  CHECK(f.evaluate(ProjectivePoint(Rat(1), Rat(0), Rat(0))) ==
        ProjectivePoint(Rat(1), Rat(0), Rat(0)));
  const PlaneEndomorphism g = PlaneEndomorphism::parse("x^3", "y^3", "z^3 + x*y*z");
  CHECK(g.evaluate(ProjectivePoint(Rat(1), Rat(1), Rat(1))) ==
        ProjectivePoint(Rat(1), Rat(1), Rat(2)));
}

TEST_CASE("composition multiplies degrees and matches pointwise evaluation") {
  const PlaneEndomorphism p2 = power_map(2);
  const PlaneEndomorphism p4 = p2.compose_after(p2);
  CHECK(p4.degree() == 4);
  CHECK(p4.component(0).poly() == Poly::variable(Var::x).pow(4));

  const PlaneEndomorphism id = power_map(1);
  const PlaneEndomorphism f = perturbed_power(2, Poly(Rat(1)));
  CHECK(f.compose_after(id).str() == f.str());

  const PlaneEndomorphism g = PlaneEndomorphism::parse("x^3", "y^3", "z^3 + x*y*z");
  const PlaneEndomorphism h = g.compose_after(p2);
  CHECK(h.degree() == 6);

  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const ProjectivePoint p = random_point(rng);
    CHECK(h.evaluate(p) == g.evaluate(p2.evaluate(p)));
  }
}

TEST_CASE("random maps validate and re-validate stably") {
  std::mt19937_64 rng(101);
  for (int m : {2, 3}) {
    for (int i = 0; i < 5; ++i) {
      const PlaneEndomorphism f = random_valid_map(m, rng);
      CHECK(f.degree() == m);
      // validation is deterministic: rebuilding from strings agrees
      const PlaneEndomorphism g = PlaneEndomorphism::parse(
          f.component(0).str(), f.component(1).str(), f.component(2).str());
      CHECK(g.degree() == m);
    }
  }
}

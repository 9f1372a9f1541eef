#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "ramplane/errors.hpp"
#include "ramplane/ramify.hpp"

using namespace ramplane;
using namespace testsupport;

namespace {
Poly P(const std::string& s) { return Poly::parse(s); }

int li(const std::string& f, const std::string& g, const Rat& a = 0,
       const Rat& b = 0) {
  return local_intersection(P(f), P(g), Var::x, Var::y, a, b);
}
}  // namespace

TEST_CASE("ramification divisor of the power maps") {
  const PlaneDivisor r2 = ramification_divisor(power_map(2));
  CHECK(r2.total_degree() == 3);
  REQUIRE(r2.components().size() == 3);
  for (const auto& c : r2.components()) CHECK(c.multiplicity == 1);

  const PlaneDivisor r3 = ramification_divisor(power_map(3));
  CHECK(r3.total_degree() == 6);
  for (const auto& c : r3.components()) CHECK(c.multiplicity == 2);

  CHECK_THROWS_AS(ramification_divisor(power_map(1)), std::invalid_argument);
}

TEST_CASE("ramification degree law on random maps") {
  std::mt19937_64 rng(77);
  for (int m : {2, 3})
    for (int i = 0; i < 5; ++i)
      CHECK(ramification_divisor(random_valid_map(m, rng)).total_degree() ==
            3 * m - 3);
}

TEST_CASE("local intersection numbers: textbook cases") {
  CHECK(li("y", "y - x^2") == 2);
  CHECK(li("x", "y") == 1);
  CHECK(li("y^2 - x^3", "y") == 3);
  CHECK(li("y", "y - x^2", 1, 1) == 0);  // point off both curves
  CHECK(li("y - x^2", "y - 1", 1, 1) == 1);
  // cusp against its tangent and a transverse line
  CHECK(li("y^2 - x^3", "x") == 2);
  // common component through the point
  CHECK_THROWS_AS(li("x*y", "x*(y - x)"), infinite_intersection_error);
}

TEST_CASE("local intersection is symmetric and additive") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> coef(-3, 3), expo(1, 3);
  auto rand_vanishing = [&]() {
    Poly f;
    for (int t = 0; t < 4; ++t) {
      Monomial m;
      m[Var::x] = int16_t(expo(rng) - (t == 0 ? 0 : 1));
      m[Var::y] = int16_t(t % 2 ? expo(rng) : 0);
      if (m.total_degree() == 0) continue;
      f += Poly::monomial(m, Rat(coef(rng)));
    }
    return f;
  };
  int checked = 0;
  for (int trial = 0; trial < 300 && checked < 100; ++trial) {
    const Poly f = rand_vanishing(), g = rand_vanishing(), h = rand_vanishing();
    if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
    try {
      const int fg = local_intersection(f, g, Var::x, Var::y, 0, 0);
      const int gf = local_intersection(g, f, Var::x, Var::y, 0, 0);
      CHECK(fg == gf);
      const int fh = local_intersection(f, h, Var::x, Var::y, 0, 0);
      const int fgh = local_intersection(f, g * h, Var::x, Var::y, 0, 0);
      CHECK(fgh == fg + fh);
      ++checked;
    } catch (const infinite_intersection_error&) {
      continue;
    }
  }
  CHECK(checked == 100);
}

TEST_CASE("fibers of the squaring map: frozen examples") {
  const PlaneEndomorphism f = power_map(2);

  const FiberReport at_cr = fiber(f, ProjectivePoint(Rat(1), Rat(0), Rat(0)));
  CHECK(at_cr.status == CrStatus::yes);
  REQUIRE(at_cr.rational_points.size() == 1);
  CHECK(at_cr.rational_points[0].local_degree == 4);
  CHECK(at_cr.irrational_mass == 0);

  const FiberReport generic = fiber(f, ProjectivePoint(Rat(1), Rat(1), Rat(1)));
  CHECK(generic.status == CrStatus::no);
  CHECK(generic.rational_points.size() == 4);
  for (const auto& fp : generic.rational_points) CHECK(fp.local_degree == 1);

  const FiberReport doubled = fiber(f, ProjectivePoint(Rat(0), Rat(1), Rat(1)));
  CHECK(doubled.status == CrStatus::no);
  REQUIRE(doubled.rational_points.size() == 2);
  for (const auto& fp : doubled.rational_points) CHECK(fp.local_degree == 2);
}

TEST_CASE("fibers with irrational mass are classified soundly") {
  const PlaneEndomorphism f = power_map(2);
  // x^2 = 2 has no rational solutions: the whole fiber is irrational.
  const FiberReport r = fiber(f, ProjectivePoint(Rat(2), Rat(1), Rat(1)));
  CHECK(r.rational_points.empty());
  CHECK(r.irrational_mass == 4);
  CHECK(r.status == CrStatus::undetermined);

  // (0 : 2 : 1): one rational double point, two irrational ones.
  const FiberReport s = fiber(f, ProjectivePoint(Rat(0), Rat(2), Rat(1)));
  CHECK(s.rational_points.empty());
  CHECK(s.irrational_mass == 4);

  const PlaneEndomorphism g = power_map(3);
  // fiber over (0 : 1 : 1) has one rational point and two conjugate ones.
  const FiberReport t = fiber(g, ProjectivePoint(Rat(0), Rat(1), Rat(1)));
  CHECK(t.status == CrStatus::no);
  REQUIRE(t.rational_points.size() == 1);
  CHECK(t.rational_points[0].local_degree == 3);
  CHECK(t.irrational_mass == 6);
}

TEST_CASE("fiber mass accounts for the topological degree") {
  std::mt19937_64 rng(4242);
  for (int m : {2, 3}) {
    for (int i = 0; i < 3; ++i) {
      const PlaneEndomorphism f = random_valid_map(m, rng);
      for (int j = 0; j < 5; ++j) {
        const FiberReport rep = fiber(f, random_point(rng));
        CHECK(rep.rational_mass() + rep.irrational_mass == m * m);
        CHECK(rep.irrational_mass >= 0);
      }
    }
  }
}

TEST_CASE("pushforward multiplicity of the squaring map") {
  const PlaneEndomorphism f = power_map(2);
  const PlaneDivisor r = ramification_divisor(f);

  const auto at_cr =
      pushforward_multiplicity(f, r, ProjectivePoint(Rat(1), Rat(0), Rat(0)));
  CHECK(at_cr.value == 4);
  CHECK(at_cr.method == MultMethod::exact);

  const auto off =
      pushforward_multiplicity(f, r, ProjectivePoint(Rat(1), Rat(1), Rat(1)));
  CHECK(off.value == 0);

  // on exactly one pushed line: multiplicity m(m-1) = 2
  const auto on_line =
      pushforward_multiplicity(f, r, ProjectivePoint(Rat(0), Rat(4), Rat(1)));
  CHECK(on_line.value == 2);
}

TEST_CASE("direct image divisor for line-component corpora") {
  // Power map: every coordinate line maps to itself with degree m.
  for (int m : {2, 3}) {
    const PlaneEndomorphism f = power_map(m);
    const PlaneDivisor pushed = pushforward_divisor(f, ramification_divisor(f));
    CHECK(pushed.total_degree() == 3 * m * m - 3 * m);
    REQUIRE(pushed.components().size() == 3);
    for (const auto& c : pushed.components())
      CHECK(c.multiplicity == m * (m - 1));
  }

  // Perturbed squaring map: two lines of multiplicity two plus a conic.
  const PlaneEndomorphism g = perturbed_power(2, Poly(Rat(1)));
  const PlaneDivisor pushed = pushforward_divisor(g, ramification_divisor(g));
  CHECK(pushed.total_degree() == 6);
  REQUIRE(pushed.components().size() == 3);
  int lines = 0, conics = 0;
  for (const auto& c : pushed.components()) {
    if (*c.form.degree() == 1) {
      CHECK(c.multiplicity == 2);
      ++lines;
    } else {
      CHECK(*c.form.degree() == 2);
      CHECK(c.multiplicity == 1);
      CHECK(c.form.poly() == P("x*y - z^2"));
      ++conics;
    }
  }
  CHECK(lines == 2);
  CHECK(conics == 1);
}

TEST_CASE("pushforward multiplicity agrees with the explicit direct image") {
  std::mt19937_64 rng(99);
  for (const auto& f : line_corpus()) {
    const PlaneDivisor r = ramification_divisor(f);
    const PlaneDivisor pushed = pushforward_divisor(f, r);
    for (const auto& y : coordinate_points()) {
      Int from_components = 0;
      for (const auto& c : pushed.components())
        from_components +=
            Int(c.multiplicity) * mult_at_point(c.form.poly(), y);
      const auto pm = pushforward_multiplicity(f, r, y);
      CHECK(pm.method == MultMethod::exact);
      CHECK(pm.value == from_components);
    }
    // And at random points, via the rational part only when needed.
    for (int i = 0; i < 4; ++i) {
      const ProjectivePoint y = random_point(rng, 6);
      Int from_components = 0;
      for (const auto& c : pushed.components())
        from_components +=
            Int(c.multiplicity) * mult_at_point(c.form.poly(), y);
      const auto pm = pushforward_multiplicity(f, r, y);
      if (pm.method == MultMethod::exact)
        CHECK(pm.value == from_components);
      else
        CHECK(pm.value <= from_components);
    }
  }
}

TEST_CASE("pushforward multiplicity inequality at the frozen examples") {
  const PlaneEndomorphism f = power_map(2);
  const auto at_cr = check_prop1(f, ProjectivePoint(Rat(1), Rat(0), Rat(0)));
  CHECK(at_cr.lhs == 4);
  CHECK(at_cr.rhs == 3);
  CHECK(at_cr.holds);
  CHECK(at_cr.slack == 1);

  const auto unram = check_prop1(f, ProjectivePoint(Rat(1), Rat(1), Rat(1)));
  CHECK(unram.lhs == 0);
  CHECK(unram.rhs == 0);
  CHECK(unram.holds);

  const auto doubled = check_prop1(f, ProjectivePoint(Rat(0), Rat(1), Rat(1)));
  CHECK(doubled.rhs == 2);
  CHECK(doubled.lhs >= 2);
  CHECK(doubled.holds);
}

TEST_CASE("odd-degree germ identities") {
  for (int m : {3, 5, 7}) CHECK(verify_example2(m));
  CHECK_THROWS_AS(verify_example2(4), std::invalid_argument);
  CHECK_THROWS_AS(verify_example2(11), std::invalid_argument);
}

TEST_CASE("smooth-locus audit of complete ramification") {
  const PlaneEndomorphism f = power_map(2);
  const HomogeneousForm line = HomogeneousForm::parse("x");
  const std::vector<ProjectivePoint> pts{ProjectivePoint(Rat(0), Rat(1), Rat(0)),
                                         ProjectivePoint(Rat(0), Rat(0), Rat(1))};
  const Prop2Audit audit = prop2_audit(f, line, pts);
  CHECK(audit.bound == 2);
  CHECK(audit.cr_smooth_count == 2);  // tight
  CHECK(audit.within_bound);

  const HomogeneousForm conic = HomogeneousForm::parse("x*y - z^2");
  const Prop2Audit audit2 = prop2_audit(f, conic, coordinate_points());
  CHECK(audit2.cr_smooth_count == 0);

  const Prop2Audit audit3 = prop2_audit(f, line, {});
  CHECK(audit3.cr_smooth_count == 0);

  CHECK_THROWS_AS(prop2_audit(f, HomogeneousForm::parse("x^2"), pts),
                  std::invalid_argument);
}

TEST_CASE("curve multiplicity at points") {
  CHECK(mult_at_point(P("x*y - z^2"), ProjectivePoint(Rat(1), Rat(0), Rat(0))) == 1);
  CHECK(mult_at_point(P("x*y - z^2"), ProjectivePoint(Rat(1), Rat(1), Rat(1))) == 1);
  CHECK(mult_at_point(P("x*y - z^2"), ProjectivePoint(Rat(1), Rat(1), Rat(2))) == 0);
  // nodal cubic: multiplicity 2 at the node
  CHECK(mult_at_point(P("y^2*z - x^3 - x^2*z"),
                      ProjectivePoint(Rat(0), Rat(0), Rat(1))) == 2);
}

#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "ramplane/certify.hpp"
#include "ramplane/errors.hpp"

using namespace ramplane;
using namespace testsupport;

TEST_CASE("model degree comparison fails exactly above degree one") {
  const auto eq = hurwitz_contradiction(1, 7);
  CHECK(eq.holds);
  CHECK(eq.lhs == eq.rhs);

  const auto a = hurwitz_contradiction(2, 1);
  CHECK(a.lhs == -2);
  CHECK(a.rhs == 1);
  CHECK_FALSE(a.holds);

  const auto b = hurwitz_contradiction(2, 3);
  CHECK(b.lhs == 18);
  CHECK(b.rhs == 27);
  CHECK_FALSE(b.holds);
}

TEST_CASE("reduced degree inequality case analysis") {
  const auto branch = prop2_inequality(2, 2, 1);
  CHECK(branch.reduced_holds);
  CHECK(branch.conclusion == Prop2Conclusion::excluded_fundamental_group);

  CHECK(prop2_inequality(2, 2, 2).conclusion == Prop2Conclusion::inequality_fails);
  CHECK(prop2_inequality(3, 1, 1).conclusion == Prop2Conclusion::inequality_fails);
  // holds but the restriction degree is fractional
  CHECK(prop2_inequality(2, 4, 1).conclusion == Prop2Conclusion::excluded_integrality);
}

TEST_CASE("nine-point cubic multiplicity bound") {
  CHECK(theorem1_cubic_multiplicity(2) == Rat(4));
  CHECK(theorem1_cubic_multiplicity(3) == Rat(26, 3));
  CHECK_THROWS_AS(theorem1_cubic_multiplicity(1), std::invalid_argument);

  CHECK(theorem1_ten_cubics(2));   // 120 > 6
  CHECK(theorem1_ten_cubics(10));  // 1800 > 270
  CHECK_FALSE(theorem1_ten_cubics(1));  // degenerate boundary
}

TEST_CASE("surface inequality and its reduction") {
  CHECK(prop3_reduction_identity());

  const auto tight = prop3_star(BoundParams{2, 3, Rat(1), 2});
  CHECK(tight.star_holds);
  CHECK(tight.full_lhs == tight.full_rhs);  // -2 on both sides

  // m = N^2 forces failure via the lower bound on c.
  const auto fail = prop3_star(BoundParams{16, 4, c_lower_bound(16, 4, 1), 1});
  CHECK_FALSE(fail.star_holds);
  CHECK_FALSE(fail.reduced_holds);
  CHECK(mc_exceeds_n(16, 4, 1));
}

TEST_CASE("reduced-preimage degree lower bound") {
  CHECK(c_lower_bound(9, 3, 1) == Rat(9, 19));
  CHECK(Rat(9) * c_lower_bound(9, 3, 1) > Rat(3));
  CHECK(c_lower_bound(2, 3, 3) == Rat(6, 7));
  CHECK(c_lower_bound(2, 3, 0) == Rat(0));
  for (Int n = 3; n <= 8; ++n)
    CHECK(mc_exceeds_n(n * n, n, 1));
}

TEST_CASE("genus-based point count bound") {
  CHECK(genus_bound(6, 3).bound == 5);
  CHECK(genus_bound(3, 3).bound == 1);
  CHECK(genus_bound(6, 3).coarse == Rat(8));
  for (Int m = 2; m <= 10; ++m) {
    const Int b = 3 * m * m - 3 * m, s = m * m - 1;
    CHECK(genus_bound(b, s).bound <= 8);
  }
}

TEST_CASE("slice inequality: frozen instances") {
  // a = 0, h = 1 collapses to the curve-count bound.
  CurveSlice slice;
  slice.d = 1;
  slice.a = 0;
  slice.points = {{"p1", 1, 3, Rat(1)}, {"p2", 1, 3, Rat(1)}};
  const auto r = lemma5_check(slice, Rat(6), 3);
  CHECK(r.q1 == Rat(2));
  CHECK(r.lhs == Rat(0));  // 6*1 - 3*2
  CHECK(r.rhs == Rat(0));
  CHECK(r.holds);

  // h = 0 gives b d >= a d^2.
  CurveSlice zero_h;
  zero_h.d = 2;
  zero_h.a = 2;
  zero_h.points = {{"p", 2, 5, Rat(0)}};
  const auto rz = lemma5_check(zero_h, Rat(6), 3);
  CHECK(rz.lhs == Rat(12));
  CHECK(rz.rhs == Rat(8));
  CHECK(rz.holds);

  // The squaring-map slice along a coordinate line.
  CurveSlice power_slice;
  power_slice.d = 1;
  power_slice.a = 2;
  power_slice.realizable = true;
  power_slice.points = {{"0:1:0", 1, 4, Rat(1)}, {"0:0:1", 1, 4, Rat(1)}};
  const auto rp = lemma5_check(power_slice, Rat(6), 3);
  CHECK(rp.lhs == Rat(0));
  CHECK(rp.rhs == Rat(-2));
  CHECK(rp.holds);
}

TEST_CASE("corollary parts and their gates") {
  CurveSlice line;  // a line not inside B, two smooth points
  line.d = 1;
  line.a = 0;
  line.points = {{"p1", 1, 3, Rat(1)}, {"p2", 1, 3, Rat(1)}};
  const auto part_a = corollary_check(line, Rat(6), 3, CorollaryPart::a);
  CHECK(part_a.applicable);
  CHECK(part_a.bound == Rat(2));
  CHECK(part_a.quantity == Rat(2));
  CHECK(part_a.holds);

  // part c: four double points on a cubic, multiplicity total 8 <= 9.
  CurveSlice cubic;
  cubic.d = 3;
  cubic.a = 0;
  cubic.points = {{"q1", 2, 4, Rat(1)},
                  {"q2", 2, 4, Rat(1)},
                  {"q3", 2, 4, Rat(1)},
                  {"q4", 2, 4, Rat(1)}};
  const auto part_c =
      corollary_check(cubic, Rat(12), 3, CorollaryPart::c, {0, 1, 2, 3});
  CHECK(part_c.applicable);
  CHECK(part_c.quantity == Rat(4));
  CHECK(part_c.bound == Rat(12));
  CHECK(part_c.holds);

  // part d gate: q_reg = d^2 is out of scope.
  CurveSlice saturated;
  saturated.d = 1;
  saturated.a = 0;
  saturated.points = {{"r", 1, 3, Rat(1)}};
  const auto part_d = corollary_check(saturated, Rat(6), 3, CorollaryPart::d);
  CHECK_FALSE(part_d.applicable);

  // part b gate needs d > b/s and a component.
  const auto part_b = corollary_check(line, Rat(6), 3, CorollaryPart::b);
  CHECK_FALSE(part_b.applicable);
}

TEST_CASE("high-multiplicity certifier on the squaring map") {
  const PlaneEndomorphism f = power_map(2);
  const MultiplicityConfig config = config_from_map(f, coordinate_points());
  CHECK(config.b == Rat(6));
  CHECK(config.s == 3);
  CHECK(config.n_param() == 3);

  const Prop5Result res = prop5_certify(config);
  CHECK(res.hypothesis_ok);
  CHECK(res.satisfied);
  CHECK(res.es_size == 3);
  CHECK(res.bound == 36);
  for (const auto& comp : res.components) {
    CHECK(comp.low_degree);
    CHECK(comp.smooth_count <= comp.smooth_cap);
    CHECK(comp.three_halves_ok);
  }
}

TEST_CASE("the concentrated-line shape defeats the hypothesis, not the bound") {
  // A line of multiplicity s-1 = 2 plus four other lines (b = 6, s = 3):
  // four points of multiplicity s concentrated on the special line.
  MultiplicityConfig config;
  config.b = Rat(6);
  config.s = 3;
  config.components = {{1, 2}, {1, 1}, {1, 1}, {1, 1}, {1, 1}};
  config.components_exhaustive = true;
  for (int i = 1; i <= 4; ++i) {
    ConfigPoint p;
    p.id = "P" + std::to_string(i);
    p.on = {{0, 1}, {i, 1}};  // smooth on the special line and on line i
    config.points.push_back(p);
    config.e_s.push_back(p.id);
  }
  const Prop5Result res = prop5_certify(config);
  CHECK_FALSE(res.hypothesis_ok);     // the special line carries 4 > N-1 = 2
  CHECK(res.satisfied);               // 4 < 36 anyway; no claim is made
  CHECK_FALSE(res.components[0].hypothesis_ok);
}

TEST_CASE("empty subsets certify trivially") {
  MultiplicityConfig config;
  config.b = Rat(6);
  config.s = 3;
  config.components = {{1, 2}, {1, 2}, {1, 2}};
  const Prop5Result res = prop5_certify(config);
  CHECK(res.satisfied);
  CHECK(res.es_size == 0);
}

TEST_CASE("malformed configs are rejected") {
  MultiplicityConfig config;
  config.b = Rat(5);  // does not match 3 lines of multiplicity 2
  config.s = 3;
  config.components = {{1, 2}, {1, 2}, {1, 2}};
  CHECK_THROWS_AS(prop5_certify(config), invariant_violation_error);

  MultiplicityConfig low;
  low.b = Rat(6);
  low.s = 3;
  low.components = {{1, 2}, {1, 2}, {1, 2}};
  ConfigPoint p;
  p.id = "P";
  p.on = {{0, 1}};  // multiplicity 2 < s on B
  low.points.push_back(p);
  low.e_s.push_back("P");
  CHECK_THROWS_AS(prop5_certify(low), invariant_violation_error);
}

TEST_CASE("dimension constants and the condition sweep") {
  for (Int n = 3; n <= 20; ++n)
    CHECK(4 * n * (4 * n + 3) / 2 - 6 * n * n == 2 * n * n + 6 * n);
  CHECK(prop4_bound(3) == 53);
  CHECK(ep_condition(10, 3, 1, 3));  // 12 >= 3
  CHECK(remark2_sweep());
}

TEST_CASE("codimension-two subspace count bounds") {
  const auto r3 = theorem2_bound(3);
  CHECK(r3.max == 35);
  CHECK(r3.witness == 3);
  REQUIRE(r3.sharper_strict.has_value());
  CHECK(*r3.sharper_strict == 12);

  const auto r4 = theorem2_bound(4);
  CHECK(r4.max == 63);
  CHECK(r4.witness == 6);
  CHECK(*r4.sharper_strict == 24);

  const auto r10 = theorem2_bound(10);
  CHECK(r10.max == 399);
  CHECK(r10.witness == 45);
  CHECK_FALSE(r10.sharper_strict.has_value());
}

TEST_CASE("geometric slice cross-check on the squaring map") {
  const PlaneEndomorphism f = power_map(2);
  const PlaneDivisor b = pushforward_divisor(f, ramification_divisor(f));
  const auto es = coordinate_points();
  const std::vector<Rat> ones(es.size(), Rat(1));

  // D = the line x = 0, a component of multiplicity 2.
  const auto check = lemma5_geometry_check(b, HomogeneousForm::parse("x"), es,
                                           ones, 3);
  CHECK(check.agree);
  CHECK(check.global == 4);  // (6 - 2*1)*1
  CHECK(check.chain_ok);
  CHECK(check.lemma5.holds);

  // D = a conic through the three coordinate points, not a component.
  const auto check2 = lemma5_geometry_check(
      b, HomogeneousForm::parse("y*z + 2*x*z + 3*x*y"), es, ones, 3);
  CHECK(check2.agree);
  CHECK(check2.global == 12);
  CHECK(check2.chain_ok);
  CHECK(check2.lemma5.holds);
}

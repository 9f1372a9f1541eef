#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "ramplane/errors.hpp"
#include "ramplane/pointconf.hpp"

using namespace ramplane;
using namespace testsupport;

namespace {

std::vector<ProjectivePoint> seeded_generic(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> c(-10000, 10000);
  std::vector<ProjectivePoint> pts;
  while (int(pts.size()) < n) {
    ProjectivePoint p(Rat(c(rng)), Rat(c(rng)), Rat(1));
    bool dup = false;
    for (const auto& q : pts) dup = dup || q == p;
    if (!dup) pts.push_back(p);
  }
  return pts;
}

// Rational points of the nodal cubic y^2 z = x^2 (x + z), via the standard
// line pencil through the node.
ProjectivePoint nodal_cubic_point(const Rat& t) {
  return ProjectivePoint(t * t - 1, t * (t * t - 1), Rat(1));
}

}  // namespace

TEST_CASE("linear system dimensions: frozen examples") {
  std::mt19937_64 rng(2024);
  // Twelve generic points on quartics: 14 - 12.
  CHECK(linear_system_dimension(PointConfiguration(seeded_generic(12, rng)), 4) == 2);
  // No line through the three coordinate points.
  CHECK(linear_system_dimension(PointConfiguration(coordinate_points()), 1) == -1);
  // One double point on quartics: 14 - 3.
  PointConfiguration empty;
  const std::vector<MultiplicityCondition> dbl{
      {ProjectivePoint(Rat(1), Rat(2), Rat(1)), 2}};
  CHECK(linear_system_dimension(empty, 4, dbl) == 11);
  // Double point listed in the configuration is overridden, not doubled.
  PointConfiguration one(std::vector<ProjectivePoint>{dbl[0].point});
  CHECK(linear_system_dimension(one, 4, dbl) == 11);
}

TEST_CASE("generic points impose independent conditions") {
  std::mt19937_64 rng(555);
  for (int d : {2, 3, 4}) {
    const int monos = d * (d + 3) / 2;
    for (int n : {1, monos / 2, monos}) {
      const auto pts = seeded_generic(n, rng);
      CHECK(linear_system_dimension(PointConfiguration(pts), d) == monos - n);
    }
  }
}

TEST_CASE("dimension is monotone under adding points") {
  std::mt19937_64 rng(808);
  const auto pts = seeded_generic(9, rng);
  std::vector<ProjectivePoint> acc;
  int prev = 4 * 7 / 2;  // 14 = projective dimension of the quartic system
  for (const auto& p : acc) (void)p;
  for (const auto& p : pts) {
    acc.push_back(p);
    const int dim = linear_system_dimension(PointConfiguration(acc), 4);
    CHECK(dim <= prev);
    prev = dim;
  }
}

TEST_CASE("a ninth point on a pencil member keeps the system nonempty") {
  std::mt19937_64 rng(909);
  const auto eight = seeded_generic(8, rng);
  CHECK(linear_system_dimension(PointConfiguration(eight), 3) == 1);
  // Any extra point lies on some member of the pencil, so cubics remain.
  for (int i = 0; i < 5; ++i) {
    auto nine = eight;
    nine.push_back(random_point(rng, 300));
    if (nine.back() == eight[0]) continue;
    CHECK(linear_system_dimension(PointConfiguration(nine), 3) >= 0);
  }
}

TEST_CASE("a point already forced by the system changes nothing") {
  std::vector<ProjectivePoint> nine{ProjectivePoint(Rat(0), Rat(0), Rat(1))};
  for (int t : {2, 3, 4, 5, 6, 7, 8, 9}) nine.push_back(nodal_cubic_point(t));
  REQUIRE(linear_system_dimension(PointConfiguration(nine), 3) == 0);
  auto ten = nine;
  ten.push_back(nodal_cubic_point(10));  // on the same cubic
  CHECK(linear_system_dimension(PointConfiguration(ten), 3) == 0);
}

TEST_CASE("constraint scan flags degenerate subsets") {
  // Three collinear points.
  const PointConfiguration collinear(std::vector<ProjectivePoint>{
      ProjectivePoint(Rat(1), Rat(0), Rat(0)), ProjectivePoint(Rat(0), Rat(1), Rat(0)),
      ProjectivePoint(Rat(1), Rat(1), Rat(0))});
  const auto rep = configuration_constraints(collinear);
  REQUIRE(rep.collinear_triples.size() == 1);
  CHECK_FALSE(rep.clean());

  // Coordinate points: no violation.
  const auto rep2 = configuration_constraints(PointConfiguration(coordinate_points()));
  CHECK(rep2.clean());

  // Six points on the conic xz = y^2 (parametrized by (t^2 : t : 1)).
  std::vector<ProjectivePoint> conic_pts;
  for (int t : {-2, -1, 0, 1, 2, 3})
    conic_pts.push_back(ProjectivePoint(Rat(t * t), Rat(t), Rat(1)));
  const auto rep3 = configuration_constraints(PointConfiguration(conic_pts));
  CHECK(rep3.six_on_conic.size() == 1);
  CHECK(rep3.collinear_triples.empty());
}

TEST_CASE("nine-point profiles distinguish generic sets from nodal ones") {
  std::mt19937_64 rng(31337);
  const auto generic = seeded_generic(9, rng);
  const auto rep = configuration_constraints(PointConfiguration(generic));
  REQUIRE(rep.nine_point.has_value());
  CHECK(rep.nine_point->unique_cubic);
  CHECK_FALSE(rep.nine_point->singular_at_member);
  CHECK_FALSE(rep.nine_point->admissible());

  // Node of the nodal cubic plus eight of its smooth points: the unique
  // cubic through them is the curve itself, singular at the first point.
  std::vector<ProjectivePoint> nodal{ProjectivePoint(Rat(0), Rat(0), Rat(1))};
  for (int t : {2, 3, 4, 5, 6, 7, 8, 9}) nodal.push_back(nodal_cubic_point(t));
  const auto rep2 = configuration_constraints(PointConfiguration(nodal));
  REQUIRE(rep2.nine_point.has_value());
  CHECK(rep2.nine_point->unique_cubic);
  CHECK(rep2.nine_point->singular_at_member);
  CHECK(rep2.nine_point->admissible());
}

TEST_CASE("ten points on a cubic are detected") {
  std::vector<ProjectivePoint> pts{ProjectivePoint(Rat(0), Rat(0), Rat(1))};
  for (int t : {2, 3, 4, 5, 6, 7, 8, 9, 10}) pts.push_back(nodal_cubic_point(t));
  const auto rep = configuration_constraints(PointConfiguration(pts));
  CHECK(rep.ten_on_cubic.size() == 1);
}

TEST_CASE("subset-on-curve search: collinear witness") {
  std::vector<ProjectivePoint> pts;
  for (int t = 1; t <= 10; ++t) pts.push_back(ProjectivePoint(Rat(t), Rat(t), Rat(1)));
  pts.push_back(ProjectivePoint(Rat(1), Rat(2), Rat(1)));
  pts.push_back(ProjectivePoint(Rat(5), Rat(-3), Rat(1)));
  const auto res = ellia_peskine_search(PointConfiguration(pts), 4, 3);
  CHECK(res.conditions_dependent);
  REQUIRE(res.witness.has_value());
  CHECK(res.witness->t == 1);
  CHECK(res.witness->subset.size() >= 6);  // t (tau - t + 3) = 6
  // The witness curve really passes through the witness subset.
  for (int i : res.witness->subset) {
    const auto& p = pts[size_t(i)];
    CHECK(res.witness->curve.evaluate({{Var::x, Rat(p[0])},
                                       {Var::y, Rat(p[1])},
                                       {Var::z, Rat(p[2])}}) == 0);
  }
}

TEST_CASE("subset-on-curve search: generic points yield nothing") {
  std::mt19937_64 rng(5150);
  const auto res = ellia_peskine_search(
      PointConfiguration(seeded_generic(12, rng)), 4, 3);
  CHECK_FALSE(res.conditions_dependent);
  CHECK_FALSE(res.witness.has_value());
}

TEST_CASE("subset-on-curve search: boundary inputs") {
  CHECK_FALSE(ellia_peskine_search(PointConfiguration(), 4, 3).witness.has_value());
  std::vector<ProjectivePoint> many;
  for (int t = 0; t < 15; ++t) many.push_back(ProjectivePoint(Rat(t), Rat(1), Rat(1)));
  CHECK_THROWS_AS(ellia_peskine_search(PointConfiguration(many), 4, 3),
                  std::invalid_argument);
  // A tiny node budget trips the guard.
  std::vector<ProjectivePoint> pts;
  for (int t = 1; t <= 10; ++t) pts.push_back(ProjectivePoint(Rat(t), Rat(t * t), Rat(1)));
  CHECK_THROWS_AS(ellia_peskine_search(PointConfiguration(pts), 5, 3, 3),
                  budget_exceeded_error);
}

TEST_CASE("distinctness is enforced") {
  CHECK_THROWS_AS(
      PointConfiguration(std::vector<ProjectivePoint>{
          ProjectivePoint(Rat(1), Rat(2), Rat(1)), ProjectivePoint(Rat(2), Rat(4), Rat(2))}),
      std::invalid_argument);
}

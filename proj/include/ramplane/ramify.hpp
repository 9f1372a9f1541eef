#pragma once

#include <cstdint>
#include <vector>

#include "ramplane/forms.hpp"
#include "ramplane/poly.hpp"
#include "ramplane/projmap.hpp"

namespace ramplane {

struct DivisorComponent {
  HomogeneousForm form;  // square-free, normalized
  int multiplicity;      // >= 1
};

// A formal sum of pairwise-coprime square-free plane curves with positive
// integer multiplicities.
class PlaneDivisor {
 public:
  PlaneDivisor() = default;
  explicit PlaneDivisor(std::vector<DivisorComponent> comps);
  // Square-free decomposition of a nonzero form.
  static PlaneDivisor from_form(const HomogeneousForm& f);

  const std::vector<DivisorComponent>& components() const { return comps_; }
  int total_degree() const;
  // Product of component^multiplicity.
  Poly form_with_multiplicities() const;

 private:
  std::vector<DivisorComponent> comps_;
};

enum class CrStatus { yes, no, undetermined };

const char* cr_status_name(CrStatus s);

struct FiberPoint {
  ProjectivePoint point;
  int local_degree;
};

struct FiberReport {
  ProjectivePoint target;
  std::vector<FiberPoint> rational_points;
  int irrational_mass = 0;  // m^2 minus the rational mass
  CrStatus status = CrStatus::undetermined;

  bool completely_ramified() const { return status == CrStatus::yes; }
  int rational_mass() const;
};

// Divisor of the Jacobian determinant of the coordinate forms; total degree
// 3m-3.
PlaneDivisor ramification_divisor(const PlaneEndomorphism& f);

// All rational points of the fiber over `target`, with local degrees, plus
// the mass carried by irrational fiber points. Requires m >= 2.
FiberReport fiber(const PlaneEndomorphism& f, const ProjectivePoint& target);

// Intersection multiplicity of two affine curves at a rational point,
// computed by the recursive reduction on the axioms for the local
// intersection number. Throws infinite_intersection_error when the curves
// share a component through the point.
int local_intersection(const Poly& f, const Poly& g, Var va, Var vb,
                       const Rat& a, const Rat& b);
int local_intersection(const AffinePolynomial& f, const AffinePolynomial& g,
                       const Rat& a, const Rat& b);

// All rational common zeros of two coprime forms.
std::vector<ProjectivePoint> projective_common_zeros(const Poly& f,
                                                     const Poly& g);

// Multiplicity of the curve F = 0 at a point (0 when the point is off the
// curve).
int mult_at_point(const Poly& f, const ProjectivePoint& p);

enum class MultMethod { exact, lower_bound };

struct PushforwardMultiplicity {
  Int value;
  MultMethod method;
};

// mult_y of the direct image of R under f, via the projection formula: the
// sum over rational fiber points of the intersection number of R with the
// pullback of a generic line through y. Exact when the fiber is fully
// rational, otherwise a lower bound from the rational part.
PushforwardMultiplicity pushforward_multiplicity(const PlaneEndomorphism& f,
                                                 const PlaneDivisor& r,
                                                 const ProjectivePoint& y,
                                                 uint64_t seed = 0);

// Direct image divisor of R under f. Requires every component of R to be a
// line; images are implicitized exactly from a rational parametrization.
PlaneDivisor pushforward_divisor(const PlaneEndomorphism& f,
                                 const PlaneDivisor& r);

struct Prop1Check {
  Int lhs;   // mult_y of the pushed-forward ramification divisor
  Int rhs;   // sum over rational fiber points of (local degree - 1)
  Int slack;
  bool holds;
  MultMethod method;
};

// mult_y(f.R) >= sum over the fiber of (local degree - 1). With irrational
// fiber mass both sides restrict to the rational part, which preserves the
// inequality pointwise.
Prop1Check check_prop1(const PlaneEndomorphism& f, const ProjectivePoint& y,
                       uint64_t seed = 0);

// Symbolic checks for the germ u = (x^m - y^m)/2, v = xy with m odd:
// the ramification locus is x^m + y^m = 0, and the pullback of
// u^2 + v^m factors as ((x^m + y^m)/2)^2, i.e. twice the ramification locus.
bool verify_example2(int m);

struct Prop2PointRecord {
  ProjectivePoint point;
  bool on_curve;
  bool smooth;  // meaningful only when on_curve
  CrStatus cr;
};

struct Prop2Audit {
  int curve_degree;
  std::vector<Prop2PointRecord> points;
  int cr_smooth_count;  // completely ramified points smooth on the curve
  int bound;            // 3d - 1
  bool within_bound;
};

// Classifies the given points and certifies that at most 3d-1 of them are
// completely ramified smooth points of the square-free curve D. Throws
// theorem_violation_error if the certified count exceeds the bound.
Prop2Audit prop2_audit(const PlaneEndomorphism& f, const HomogeneousForm& d,
                       const std::vector<ProjectivePoint>& points);

}  // namespace ramplane

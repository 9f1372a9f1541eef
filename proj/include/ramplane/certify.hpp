#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ramplane/poly.hpp"
#include "ramplane/projmap.hpp"
#include "ramplane/ramify.hpp"

namespace ramplane {

// --- abstract multiplicity data ---------------------------------------------

struct ConfigComponent {
  int degree;        // d_i >= 1
  int multiplicity;  // a_i >= 1
};

struct ConfigPointEntry {
  int component;     // index into the component list
  int multiplicity;  // multiplicity of the point on that component, >= 1
};

struct ConfigPoint {
  std::string id;
  std::vector<ConfigPointEntry> on;
};

// Abstract record of an effective divisor B = sum a_i B_i of degree b, a
// multiplicity threshold s, a point table, and a chosen subset E_s of points
// of multiplicity at least s on B. Synthetic configs are legal; theorem
// inequalities are asserted only for realizable ones.
struct MultiplicityConfig {
  Rat b;
  Int s;
  std::vector<ConfigComponent> components;
  bool components_exhaustive = true;
  std::vector<ConfigPoint> points;
  std::vector<std::string> e_s;
  bool realizable = false;

  Int mult_on_b(const ConfigPoint& p) const;
  Int n_param() const;  // N = floor(b/s) + 1
  const ConfigPoint& find_point(const std::string& id) const;
  void check_invariants() const;
};

// Point data of an irreducible degree-d curve sliced against E_s, with a
// weight h in [0,1] per point.
struct CurveSlicePoint {
  std::string id;
  int mult_on_d;  // >= 1
  Int mult_on_b;
  Rat h;          // in [0,1]

  bool smooth_on_d() const { return mult_on_d == 1; }
};

struct CurveSlice {
  int d = 1;  // degree of D
  int a = 0;  // multiplicity of D inside B
  std::vector<CurveSlicePoint> points;  // D cap E_s
  bool realizable = false;
};

// --- section 5 machinery -------------------------------------------------------

struct Lemma5Result {
  Rat lhs;  // b d - s q1
  Rat rhs;  // a (d^2 - q2)
  Rat q1, q2;
  bool holds;
};

// b d - s q_{1,h}(D) >= a (d^2 - q_{2,h}(D)), with q_{r,h} = sum
// h(y) mult_y(D)^r over D cap E_s. Asserted for realizable slices, reported
// neutrally otherwise.
Lemma5Result lemma5_check(const CurveSlice& slice, const Rat& b, const Int& s);

enum class CorollaryPart { a, b, c, d };

struct CorollaryResult {
  CorollaryPart part;
  bool applicable;
  std::string reason;       // why not applicable, when so
  Rat bound;                // b d / s
  Rat quantity;             // the bounded quantity of the part
  bool holds;
  Rat q_reg, q_sing, mu;    // context values
  std::optional<Lemma5Result> underlying;
};

// Parts a-d, each instantiating the slice inequality with its own weight
// function. `subset` (indices into slice.points) is the set I of part c.
CorollaryResult corollary_check(const CurveSlice& slice, const Rat& b,
                                const Int& s, CorollaryPart part,
                                const std::vector<int>& subset = {});

struct Prop5ComponentRecord {
  int index;
  int degree;
  int multiplicity;
  bool low_degree;       // degree <= b/s
  Int smooth_count;      // E_s points smooth on the component
  Int smooth_cap;        // N*degree - 1
  bool hypothesis_ok;    // smooth_count <= cap when low_degree
  Int on_count;          // E_s points on the component
  bool three_halves_ok;  // on_count < (3/2) N degree
};

struct Prop5Result {
  Int n_param;
  Int es_size;
  Int bound;  // strict: |E_s| < 4N^2, inclusive max bound-1
  bool hypothesis_ok;
  bool satisfied;  // |E_s| < 4N^2
  std::vector<Prop5ComponentRecord> components;
};

// Verifies the low-degree-component hypothesis and the bound |E_s| < 4N^2.
// Throws theorem_violation_error when a realizable config passes the
// hypothesis and still breaks the bound.
Prop5Result prop5_certify(const MultiplicityConfig& config);

// --- scalar certificates ---------------------------------------------------------

struct HurwitzResult {
  Int lhs;  // m d (m d - 3)
  Int rhs;  // m^2 d (d - 3) + 3 d (m^2 - 1)
  bool holds;
};

// The model degree comparison: holds exactly when m = 1 (equality), and
// fails for every m > 1.
HurwitzResult hurwitz_contradiction(const Int& m, const Int& d);

enum class Prop2Conclusion {
  inequality_fails,
  excluded_integrality,        // mc/d is not an integer
  excluded_fundamental_group,  // the (m,c,d) = (2,1,2) branch
  not_excluded,                // synthetic survivor, reported only
};

struct Prop2Inequality {
  Int lhs;  // c (c - 3)
  Int rhs;  // d m c - 3 d
  bool reduced_holds;
  bool c_le_d;
  Prop2Conclusion conclusion;
};

Prop2Inequality prop2_inequality(const Int& m, const Int& d, const Int& c);

// (m^2 + 9m - 10) / 3, the forced multiplicity of the nine-point cubic
// inside the pushed-forward ramification divisor; checks the symbolic
// rearrangement behind it.
Rat theorem1_cubic_multiplicity(const Int& m);

// 10 (m^2 + 9m - 10) > 3 m^2 - 3 m.
bool theorem1_ten_cubics(const Int& m);

struct BoundParams {
  Int m;  // >= 2 for theorem checks
  Int n;  // ambient parameter >= 3
  Rat c;  // normalized reduced-preimage degree, >= 0
  Int d;  // curve degree >= 1
};

struct Prop3Star {
  Rat full_lhs;     // (-N + c + (N-3)m) c
  Rat full_rhs;     // (mc/d) d (d-3) + N d (mc/d - 1)
  bool star_holds;  // full inequality
  bool reduced_holds;  // c^2 - Nc >= mcd - Nd
};

// Evaluates the inequality with the common power-of-m factor cancelled and
// confirms it is equivalent to the reduced form.
Prop3Star prop3_star(const BoundParams& params);

// Symbolic identity: the full inequality minus the reduced one expands to
// zero as a polynomial in (m, N, c, d).
bool prop3_reduction_identity();

// md / (mN - N + 1).
Rat c_lower_bound(const Int& m, const Int& n, const Int& d);
// m * c_lower_bound > N; guaranteed whenever m >= N^2 and d >= 1.
bool mc_exceeds_n(const Int& m, const Int& n, const Int& d);

struct GenusBoundResult {
  Int bound;   // floor(b(b-1) / (s(s-1)))
  Rat coarse;  // 2 (b/s)^2
};

GenusBoundResult genus_bound(const Int& b, const Int& s);

// 6N^2 - 1, the inclusive form of the strict 6N^2 point bound.
Int prop4_bound(const Int& n);

// t (tau - t + 3) >= N t + (t-1)(t-2)/2, for 0 < t < s.
bool ep_condition(const Int& tau, const Int& s, const Int& t, const Int& n);

// Arithmetic sweep of the dependent-conditions chain: for N in [3,20] and
// 0 <= l < 4N/3, with A = 4N^2 - 4Nl + (l-1)(l-2)/2, tau = 4N - l and
// s = floor(sqrt(A)): s^2 <= A, tau > s - 3 + A/s, and the condition above
// for every t in (0, s).
bool remark2_sweep();

struct Theorem2Result {
  Int max;      // 4N^2 - 1
  Int witness;  // N(N-1)/2 from the coordinate power map
  std::optional<Int> sharper_strict;  // known sharper strict bound at small N
};

Theorem2Result theorem2_bound(const Int& n);

// --- bridges from geometry -------------------------------------------------------

// Realizable multiplicity config from a map: B is the pushed-forward
// ramification divisor, s = m^2 - 1, E_s the given verified completely
// ramified points.
MultiplicityConfig config_from_map(const PlaneEndomorphism& f,
                                   const std::vector<ProjectivePoint>& cr_points);

// Realizable curve slice of B along the curve D.
CurveSlice slice_from_geometry(const PlaneDivisor& divisor_b,
                               const HomogeneousForm& curve_d,
                               const std::vector<ProjectivePoint>& e_s,
                               const std::vector<Rat>& weights);

struct SliceGeometryCheck {
  Int global;           // (b - a d) d
  Int pointwise_sum;    // sum of local intersection numbers of D' and D
  bool agree;           // the two are equal (all intersections rational)
  bool chain_ok;        // per-point multiplicity chain holds
  Lemma5Result lemma5;  // combinatorial evaluation on the same data
};

// Cross-validates the slice inequality on real curves: D'D computed once by
// Bezout bookkeeping and once as a sum of local intersection numbers, plus
// the per-point multiplicity chain that drives the combinatorial proof.
SliceGeometryCheck lemma5_geometry_check(const PlaneDivisor& divisor_b,
                                         const HomogeneousForm& curve_d,
                                         const std::vector<ProjectivePoint>& e_s,
                                         const std::vector<Rat>& weights,
                                         const Int& s);

}  // namespace ramplane

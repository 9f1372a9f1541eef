#include "ramplane/certify.hpp"

#include <algorithm>

#include "ramplane/errors.hpp"

namespace ramplane {

namespace {

Int floor_div(const Rat& q) {
  Int n = numerator(q), d = denominator(q);
  Int r = n / d;
  if (r * d > n) --r;  // fix toward negative infinity
  return r;
}

}  // namespace

// --- MultiplicityConfig -----------------------------------------------------------

Int MultiplicityConfig::mult_on_b(const ConfigPoint& p) const {
  Int total = 0;
  for (const auto& e : p.on) {
    if (e.component < 0 || e.component >= int(components.size()))
      throw invariant_violation_error("point references a missing component");
    total += Int(components[size_t(e.component)].multiplicity) * e.multiplicity;
  }
  return total;
}

Int MultiplicityConfig::n_param() const {
  if (s < 2) throw invariant_violation_error("threshold s must be at least 2");
  return floor_div(b / Rat(s)) + 1;
}

const ConfigPoint& MultiplicityConfig::find_point(const std::string& id) const {
  for (const auto& p : points)
    if (p.id == id) return p;
  throw invariant_violation_error("unknown point id: " + id);
}

void MultiplicityConfig::check_invariants() const {
  if (b <= 0) throw invariant_violation_error("divisor degree b must be positive");
  if (s < 2) throw invariant_violation_error("threshold s must be at least 2");
  for (const auto& c : components)
    if (c.degree < 1 || c.multiplicity < 1)
      throw invariant_violation_error("component degrees/multiplicities must be >= 1");
  for (const auto& p : points)
    for (const auto& e : p.on)
      if (e.multiplicity < 1)
        throw invariant_violation_error("point multiplicities must be >= 1");
  if (components_exhaustive) {
    Rat sum = 0;
    for (const auto& c : components) sum += Rat(c.degree) * c.multiplicity;
    if (sum != b)
      throw invariant_violation_error(
          "b does not match the exhaustive component degrees");
  }
  for (const auto& id : e_s) {
    const ConfigPoint& p = find_point(id);
    if (mult_on_b(p) < s)
      throw invariant_violation_error("E_s point " + id +
                                      " has multiplicity below s");
  }
}

// --- Lemma 5 and its corollary -----------------------------------------------------

Lemma5Result lemma5_check(const CurveSlice& slice, const Rat& b, const Int& s) {
  if (slice.d < 1 || slice.a < 0)
    throw std::invalid_argument("slice needs d >= 1 and a >= 0");
  if (b < Rat(slice.a) * slice.d)
    throw std::invalid_argument("slice needs b >= a d");
  Rat q1 = 0, q2 = 0;
  for (const auto& p : slice.points) {
    if (p.h < 0 || p.h > 1)
      throw std::invalid_argument("weights must lie in [0,1]");
    if (p.mult_on_d < 1)
      throw std::invalid_argument("slice points must lie on the curve");
    q1 += p.h * p.mult_on_d;
    q2 += p.h * p.mult_on_d * p.mult_on_d;
  }
  Lemma5Result r;
  r.q1 = q1;
  r.q2 = q2;
  r.lhs = b * slice.d - Rat(s) * q1;
  r.rhs = Rat(slice.a) * (Rat(slice.d) * slice.d - q2);
  r.holds = r.lhs >= r.rhs;
  if (slice.realizable && !r.holds)
    throw theorem_violation_error(
        "slice inequality failed on a realizable slice");
  return r;
}

CorollaryResult corollary_check(const CurveSlice& slice, const Rat& b,
                                const Int& s, CorollaryPart part,
                                const std::vector<int>& subset) {
  CorollaryResult res;
  res.part = part;
  res.applicable = true;
  res.bound = b * slice.d / Rat(s);

  Rat q_reg = 0, q_sing = 0, mu = 0;
  for (const auto& p : slice.points) {
    if (p.smooth_on_d())
      q_reg += 1;
    else {
      q_sing += 1;
      mu += p.mult_on_d;
    }
  }
  res.q_reg = q_reg;
  res.q_sing = q_sing;
  res.mu = mu;

  CurveSlice weighted = slice;
  const Rat d2 = Rat(slice.d) * slice.d;
  switch (part) {
    case CorollaryPart::a: {
      if (slice.a != 0) {
        res.applicable = false;
        res.reason = "part a needs D not a component of B (a = 0)";
        res.holds = false;
        return res;
      }
      for (auto& p : weighted.points) p.h = 1;
      res.underlying = lemma5_check(weighted, b, s);
      res.quantity = Rat(int(slice.points.size()));  // |D cap E_s|
      res.holds = res.quantity <= res.bound;
      break;
    }
    case CorollaryPart::b: {
      if (slice.a < 1 || !(Rat(slice.d) > b / Rat(s))) {
        res.applicable = false;
        res.reason = "part b needs a >= 1 and d > b/s";
        res.holds = false;
        return res;
      }
      for (auto& p : weighted.points) p.h = p.smooth_on_d() ? 1 : 0;
      res.underlying = lemma5_check(weighted, b, s);
      res.quantity = q_reg;
      res.holds = res.quantity <= res.bound;
      break;
    }
    case CorollaryPart::c: {
      Rat mult_sum = 0;
      for (int i : subset) {
        if (i < 0 || i >= int(slice.points.size()))
          throw std::invalid_argument("subset index out of range");
        mult_sum += slice.points[size_t(i)].mult_on_d;
      }
      if (mult_sum > d2) {
        res.applicable = false;
        res.reason = "part c needs the subset multiplicities to total <= d^2";
        res.holds = false;
        return res;
      }
      for (auto& p : weighted.points) p.h = 0;
      for (int i : subset)
        weighted.points[size_t(i)].h =
            Rat(1) / weighted.points[size_t(i)].mult_on_d;
      res.underlying = lemma5_check(weighted, b, s);
      res.quantity = Rat(int(subset.size()));
      res.holds = res.quantity <= res.bound;
      break;
    }
    case CorollaryPart::d: {
      if (!(q_reg < d2)) {
        res.applicable = false;
        res.reason = "part d needs q_reg(D) < d^2";
        res.holds = false;
        return res;
      }
      if (q_reg + mu <= d2) {
        // Falls back to part c with I = D cap E_s; the assertion is then
        // immediate from |D cap E_s| <= bd/s.
        std::vector<int> all(slice.points.size());
        for (size_t i = 0; i < all.size(); ++i) all[i] = int(i);
        CorollaryResult via_c = corollary_check(slice, b, s, CorollaryPart::c, all);
        res.underlying = via_c.underlying;
        res.quantity = q_reg / 2 + q_sing;
        res.holds = res.quantity <= res.bound;
        break;
      }
      const Rat t = (d2 - q_reg) / mu;
      if (!(t > 0 && t < 1))
        throw invariant_violation_error(
            "part d weight escaped (0,1) despite its precondition");
      for (auto& p : weighted.points)
        p.h = p.smooth_on_d() ? Rat(1) : t / p.mult_on_d;
      res.underlying = lemma5_check(weighted, b, s);
      res.quantity = q_reg / 2 + q_sing;
      res.holds = res.quantity <= res.bound;
      break;
    }
  }
  if (slice.realizable && res.applicable && !res.holds)
    throw theorem_violation_error("corollary bound failed on a realizable slice");
  return res;
}

// --- Prop 5 certifier ---------------------------------------------------------------

Prop5Result prop5_certify(const MultiplicityConfig& config) {
  config.check_invariants();
  Prop5Result res;
  res.n_param = config.n_param();
  res.es_size = Int(config.e_s.size());
  res.bound = 4 * res.n_param * res.n_param;
  res.hypothesis_ok = true;

  const Rat b_over_s = config.b / Rat(config.s);
  for (size_t i = 0; i < config.components.size(); ++i) {
    const auto& comp = config.components[i];
    Prop5ComponentRecord rec;
    rec.index = int(i);
    rec.degree = comp.degree;
    rec.multiplicity = comp.multiplicity;
    rec.low_degree = Rat(comp.degree) <= b_over_s;
    rec.smooth_count = 0;
    rec.on_count = 0;
    for (const auto& id : config.e_s) {
      const ConfigPoint& p = config.find_point(id);
      for (const auto& e : p.on) {
        if (e.component != int(i)) continue;
        ++rec.on_count;
        if (e.multiplicity == 1) ++rec.smooth_count;
      }
    }
    rec.smooth_cap = res.n_param * comp.degree - 1;
    rec.hypothesis_ok = !rec.low_degree || rec.smooth_count <= rec.smooth_cap;
    rec.three_halves_ok =
        Rat(rec.on_count) < Rat(3, 2) * Rat(res.n_param) * comp.degree;
    if (!rec.hypothesis_ok) res.hypothesis_ok = false;
    res.components.push_back(rec);
  }
  res.satisfied = res.es_size < res.bound;
  if (config.realizable && res.hypothesis_ok && !res.satisfied)
    throw theorem_violation_error(
        "realizable config satisfies the hypothesis but breaks |E_s| < 4N^2");
  return res;
}

// --- scalar certificates --------------------------------------------------------------

HurwitzResult hurwitz_contradiction(const Int& m, const Int& d) {
  if (m < 1 || d < 1) throw std::invalid_argument("need m >= 1 and d >= 1");
  HurwitzResult r;
  r.lhs = m * d * (m * d - 3);
  r.rhs = m * m * d * (d - 3) + 3 * d * (m * m - 1);
  r.holds = r.lhs >= r.rhs;
  return r;
}

Prop2Inequality prop2_inequality(const Int& m, const Int& d, const Int& c) {
  if (m < 2 || d < 1 || c < 1)
    throw std::invalid_argument("need m >= 2, d >= 1, c >= 1");
  Prop2Inequality r;
  r.lhs = c * (c - 3);
  r.rhs = d * m * c - 3 * d;
  r.reduced_holds = r.lhs >= r.rhs;
  r.c_le_d = c <= d;
  if (!r.reduced_holds)
    r.conclusion = Prop2Conclusion::inequality_fails;
  else if ((m * c) % d != 0)
    r.conclusion = Prop2Conclusion::excluded_integrality;
  else if (m == 2 && c == 1 && d == 2)
    r.conclusion = Prop2Conclusion::excluded_fundamental_group;
  else
    r.conclusion = Prop2Conclusion::not_excluded;
  return r;
}

Rat theorem1_cubic_multiplicity(const Int& m) {
  if (m < 2) throw std::invalid_argument("need m >= 2");
  // Symbolic rearrangement: with multiplicity bounds m^2-1-2a at the
  // singular point and m^2-1-a at the other eight,
  //   9m^2 - 9m - 9a >= 10m^2 - 10 - 12a  <=>  3a >= m^2 + 9m - 10.
  const Poly sm = Poly::variable(Var::x);  // stands for m
  const Poly sa = Poly::variable(Var::y);  // stands for a
  const Poly lhs = Rat(9) * sm * sm - Rat(9) * sm - Rat(9) * sa -
                   (Rat(10) * sm * sm - Poly(Rat(10)) - Rat(12) * sa);
  const Poly rhs = Rat(3) * sa - (sm * sm + Rat(9) * sm - Poly(Rat(10)));
  if (lhs != rhs)
    throw invariant_violation_error("cubic multiplicity rearrangement failed");
  return Rat(m * m + 9 * m - 10, 3);
}

bool theorem1_ten_cubics(const Int& m) {
  if (m < 1) throw std::invalid_argument("need m >= 1");
  return 10 * (m * m + 9 * m - 10) > 3 * m * m - 3 * m;
}

Prop3Star prop3_star(const BoundParams& params) {
  if (params.d < 1) throw std::invalid_argument("need d >= 1");
  const Rat m(params.m), n(params.n), d(params.d);
  const Rat& c = params.c;
  Prop3Star r;
  r.full_lhs = (-n + c + (n - 3) * m) * c;
  const Rat ratio = m * c / d;  // degree of the map restricted to C_red
  r.full_rhs = ratio * d * (d - 3) + n * d * (ratio - 1);
  r.star_holds = r.full_lhs >= r.full_rhs;
  r.reduced_holds = c * c - n * c >= m * c * d - n * d;
  if (r.star_holds != r.reduced_holds)
    throw invariant_violation_error("star inequality disagrees with its reduction");
  return r;
}

bool prop3_reduction_identity() {
  // Symbols: m -> x, N -> y, c -> z, d -> u.
  const Poly m = Poly::variable(Var::x), n = Poly::variable(Var::y),
             c = Poly::variable(Var::z), d = Poly::variable(Var::u);
  const Poly lhs = (-n + c + (n - Poly(Rat(3))) * m) * c;
  const Poly rhs = m * c * (d - Poly(Rat(3))) + n * m * c - n * d;
  const Poly reduced = (c * c - n * c) - (m * c * d - n * d);
  return lhs - rhs == reduced;
}

Rat c_lower_bound(const Int& m, const Int& n, const Int& d) {
  if (m < 2 || n < 3 || d < 0)
    throw std::invalid_argument("need m >= 2, N >= 3, d >= 0");
  return Rat(m * d, m * n - n + 1);
}

bool mc_exceeds_n(const Int& m, const Int& n, const Int& d) {
  return Rat(m) * c_lower_bound(m, n, d) > Rat(n);
}

GenusBoundResult genus_bound(const Int& b, const Int& s) {
  if (b < 1 || s < 2) throw std::invalid_argument("need b >= 1 and s >= 2");
  GenusBoundResult r;
  r.bound = (b * (b - 1)) / (s * (s - 1));
  r.coarse = 2 * Rat(b, s) * Rat(b, s);
  return r;
}

Int prop4_bound(const Int& n) {
  if (n < 3) throw std::invalid_argument("need N >= 3");
  return 6 * n * n - 1;
}

bool ep_condition(const Int& tau, const Int& s, const Int& t, const Int& n) {
  if (!(t > 0 && t < s)) throw std::invalid_argument("need 0 < t < s");
  return t * (tau - t + 3) >= n * t + ((t - 1) * (t - 2)) / 2;
}

bool remark2_sweep() {
  for (Int n = 3; n <= 20; ++n) {
    for (Int l = 0; 3 * l < 4 * n; ++l) {
      const Int a = 4 * n * n - 4 * n * l + ((l - 1) * (l - 2)) / 2;
      const Int tau = 4 * n - l;
      const Int s = boost::multiprecision::sqrt(a);
      if (s < 2) return false;
      if (s * s > a) return false;
      // tau > s - 3 + A/s  <=>  tau s > s^2 - 3 s + A.
      if (!(tau * s > s * s - 3 * s + a)) return false;
      for (Int t = 1; t < s; ++t)
        if (!ep_condition(tau, s, t, n)) return false;
    }
  }
  return true;
}

Theorem2Result theorem2_bound(const Int& n) {
  if (n < 3) throw std::invalid_argument("need N >= 3");
  Theorem2Result r;
  r.max = 4 * n * n - 1;
  r.witness = n * (n - 1) / 2;
  if (!(r.witness < 4 * n * n))
    throw invariant_violation_error("power-map witness exceeded the bound");
  if (n == 3) r.sharper_strict = 12;
  if (n == 4) r.sharper_strict = 24;
  return r;
}

// --- bridges from geometry --------------------------------------------------------------

MultiplicityConfig config_from_map(const PlaneEndomorphism& f,
                                   const std::vector<ProjectivePoint>& cr_points) {
  const int m = f.degree();
  const PlaneDivisor r = ramification_divisor(f);
  const PlaneDivisor b = pushforward_divisor(f, r);

  MultiplicityConfig config;
  config.b = Rat(b.total_degree());
  config.s = Int(m) * m - 1;
  config.components_exhaustive = true;
  config.realizable = true;
  for (const auto& comp : b.components())
    config.components.push_back({*comp.form.degree(), comp.multiplicity});

  for (const auto& p : cr_points) {
    ConfigPoint cp;
    cp.id = p.str();
    for (size_t i = 0; i < b.components().size(); ++i) {
      const int mult = mult_at_point(b.components()[i].form.poly(), p);
      if (mult > 0) cp.on.push_back({int(i), mult});
    }
    config.points.push_back(cp);
    config.e_s.push_back(cp.id);
    if (config.mult_on_b(config.points.back()) < config.s)
      throw theorem_violation_error(
          "completely ramified point has multiplicity below m^2 - 1 on the "
          "direct image of the ramification divisor");
  }
  config.check_invariants();
  return config;
}

CurveSlice slice_from_geometry(const PlaneDivisor& divisor_b,
                               const HomogeneousForm& curve_d,
                               const std::vector<ProjectivePoint>& e_s,
                               const std::vector<Rat>& weights) {
  if (weights.size() != e_s.size())
    throw std::invalid_argument("one weight per point required");
  CurveSlice slice;
  slice.d = *curve_d.degree();
  slice.a = 0;
  slice.realizable = true;
  const Poly dnorm = curve_d.poly().normalized();
  for (const auto& comp : divisor_b.components()) {
    if (comp.form.poly() == dnorm) {
      slice.a = comp.multiplicity;
    } else if (!poly_gcd(comp.form.poly(), dnorm).is_constant()) {
      throw std::invalid_argument(
          "curve shares a proper factor with a component of B; slices need "
          "irreducible-against-B curves");
    }
  }
  for (size_t i = 0; i < e_s.size(); ++i) {
    const int md = mult_at_point(curve_d.poly(), e_s[i]);
    if (md == 0) continue;  // off the curve
    CurveSlicePoint p;
    p.id = e_s[i].str();
    p.mult_on_d = md;
    Int mb = 0;
    for (const auto& comp : divisor_b.components())
      mb += Int(comp.multiplicity) * mult_at_point(comp.form.poly(), e_s[i]);
    p.mult_on_b = mb;
    p.h = weights[i];
    slice.points.push_back(p);
  }
  return slice;
}

SliceGeometryCheck lemma5_geometry_check(const PlaneDivisor& divisor_b,
                                         const HomogeneousForm& curve_d,
                                         const std::vector<ProjectivePoint>& e_s,
                                         const std::vector<Rat>& weights,
                                         const Int& s) {
  const CurveSlice slice = slice_from_geometry(divisor_b, curve_d, e_s, weights);
  const Rat b = Rat(divisor_b.total_degree());

  SliceGeometryCheck check;
  check.lemma5 = lemma5_check(slice, b, s);
  check.global = (Int(divisor_b.total_degree()) - Int(slice.a) * slice.d) *
                 Int(slice.d);

  // D' as a form: strip D^a from the full B form.
  Poly dprime(Rat(1));
  const Poly dnorm = curve_d.poly().normalized();
  for (const auto& comp : divisor_b.components()) {
    if (comp.form.poly() == dnorm) {
      if (comp.multiplicity != slice.a)
        throw invariant_violation_error("component multiplicity mismatch");
      continue;
    }
    dprime = dprime * comp.form.poly().pow(comp.multiplicity);
  }
  if (dprime.is_constant() && slice.a == 0)
    throw std::invalid_argument("B has no component besides D");

  check.pointwise_sum = 0;
  if (!dprime.is_constant()) {
    for (const auto& p : projective_common_zeros(dprime, curve_d.poly())) {
      const int k = p.pivot();
      const std::array<Var, 3> xyz{Var::x, Var::y, Var::z};
      std::array<Var, 2> rest{};
      size_t r = 0;
      for (int i = 0; i < 3; ++i)
        if (i != k) rest[r++] = xyz[size_t(i)];
      const Rat pk{p[size_t(k)]};
      const Rat pa = Rat(p[size_t(static_cast<int>(rest[0]))]) / pk;
      const Rat pb = Rat(p[size_t(static_cast<int>(rest[1]))]) / pk;
      const Poly da = dprime.substitute(xyz[size_t(k)], Poly(Rat(1)));
      const Poly db = curve_d.poly().substitute(xyz[size_t(k)], Poly(Rat(1)));
      check.pointwise_sum +=
          local_intersection(da, db, rest[0], rest[1], pa, pb);
    }
  }
  check.agree = check.pointwise_sum == check.global;

  // Per-point chain: I_p(D',D) >= mult_p(D') mult_p(D), and the divisor
  // multiplicities decompose as mult_p(B) = mult_p(D') + a mult_p(D).
  check.chain_ok = true;
  for (size_t i = 0; i < e_s.size(); ++i) {
    const int md = mult_at_point(curve_d.poly(), e_s[i]);
    if (md == 0) continue;
    Int mb = 0;
    for (const auto& comp : divisor_b.components())
      mb += Int(comp.multiplicity) * mult_at_point(comp.form.poly(), e_s[i]);
    const int mdp = dprime.is_constant() ? 0 : mult_at_point(dprime, e_s[i]);
    if (Int(mdp) != mb - Int(slice.a) * md) check.chain_ok = false;
    if (mb < s) check.chain_ok = false;
    if (mdp > 0 && md > 0) {
      const int k = e_s[i].pivot();
      const std::array<Var, 3> xyz{Var::x, Var::y, Var::z};
      std::array<Var, 2> rest{};
      size_t r = 0;
      for (int q = 0; q < 3; ++q)
        if (q != k) rest[r++] = xyz[size_t(q)];
      const Rat pk{e_s[i][size_t(k)]};
      const Rat pa = Rat(e_s[i][size_t(static_cast<int>(rest[0]))]) / pk;
      const Rat pb = Rat(e_s[i][size_t(static_cast<int>(rest[1]))]) / pk;
      const int ip = local_intersection(
          dprime.substitute(xyz[size_t(k)], Poly(Rat(1))),
          curve_d.poly().substitute(xyz[size_t(k)], Poly(Rat(1))), rest[0],
          rest[1], pa, pb);
      if (ip < mdp * md) check.chain_ok = false;
    }
  }
  return check;
}

}  // namespace ramplane

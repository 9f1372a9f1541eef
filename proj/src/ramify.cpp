#include "ramplane/ramify.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "ramplane/errors.hpp"

namespace ramplane {

namespace {
const std::array<Var, 3> kXYZ{Var::x, Var::y, Var::z};

std::map<Var, Rat> point_values(const ProjectivePoint& p) {
  return {{Var::x, Rat(p[0])}, {Var::y, Rat(p[1])}, {Var::z, Rat(p[2])}};
}
}  // namespace

// --- PlaneDivisor -------------------------------------------------------------

PlaneDivisor::PlaneDivisor(std::vector<DivisorComponent> comps)
    : comps_(std::move(comps)) {
  for (const auto& c : comps_) {
    if (c.form.is_zero() || c.multiplicity < 1)
      throw invariant_violation_error("bad divisor component");
  }
  for (size_t i = 0; i < comps_.size(); ++i)
    for (size_t j = i + 1; j < comps_.size(); ++j)
      if (!poly_gcd(comps_[i].form.poly(), comps_[j].form.poly()).is_constant())
        throw invariant_violation_error(
            "divisor components are not pairwise coprime");
}

PlaneDivisor PlaneDivisor::from_form(const HomogeneousForm& f) {
  if (f.is_zero()) throw std::invalid_argument("divisor of the zero form");
  std::vector<DivisorComponent> comps;
  for (const auto& sf : squarefree_decompose(f.poly()))
    comps.push_back({HomogeneousForm(sf.factor), sf.multiplicity});
  return PlaneDivisor(std::move(comps));
}

int PlaneDivisor::total_degree() const {
  int d = 0;
  for (const auto& c : comps_) d += c.multiplicity * *c.form.degree();
  return d;
}

Poly PlaneDivisor::form_with_multiplicities() const {
  Poly p(Rat(1));
  for (const auto& c : comps_) p = p * c.form.poly().pow(c.multiplicity);
  return p;
}

int FiberReport::rational_mass() const {
  int s = 0;
  for (const auto& fp : rational_points) s += fp.local_degree;
  return s;
}

const char* cr_status_name(CrStatus s) {
  switch (s) {
    case CrStatus::yes:
      return "yes";
    case CrStatus::no:
      return "no";
    default:
      return "undetermined";
  }
}

// --- ramification divisor -------------------------------------------------------

PlaneDivisor ramification_divisor(const PlaneEndomorphism& f) {
  if (f.degree() < 2)
    throw std::invalid_argument("ramification divisor needs degree >= 2");
  std::array<std::array<Poly, 3>, 3> jac;
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j)
      jac[i][j] = f.component(i).poly().derivative(kXYZ[j]);
  Poly det = jac[0][0] * (jac[1][1] * jac[2][2] - jac[1][2] * jac[2][1]) -
             jac[0][1] * (jac[1][0] * jac[2][2] - jac[1][2] * jac[2][0]) +
             jac[0][2] * (jac[1][0] * jac[2][1] - jac[1][1] * jac[2][0]);
  if (det.is_zero())
    throw invariant_violation_error(
        "Jacobian identically zero for a valid endomorphism");
  PlaneDivisor r = PlaneDivisor::from_form(HomogeneousForm(det));
  if (r.total_degree() != 3 * f.degree() - 3)
    throw invariant_violation_error("ramification divisor degree mismatch");
  return r;
}

// --- local intersection numbers -------------------------------------------------

namespace {

// Smallest exponent of `v` over the terms of a nonzero polynomial.
int trailing_order(const Poly& p, Var v) {
  int best = std::numeric_limits<int>::max();
  for (const auto& [m, c] : p.terms()) best = std::min(best, int(m[v]));
  return best;
}

int fulton_impl(Poly f, Poly g, Var va, Var vb, int depth) {
  if (depth > 512)
    throw invariant_violation_error("local intersection recursion too deep");
  const std::map<Var, Rat> origin{{va, 0}, {vb, 0}};
  if (f.evaluate(origin) != 0 || g.evaluate(origin) != 0) return 0;

  const Poly vbp = Poly::variable(vb);
  for (;;) {
    Poly fa = f.substitute(vb, Poly(Rat(0)));
    Poly ga = g.substitute(vb, Poly(Rat(0)));
    if (fa.is_zero()) {
      std::swap(f, g);
      std::swap(fa, ga);
    }
    if (fa.is_zero())
      throw infinite_intersection_error(
          "both curves contain the coordinate axis");
    if (ga.is_zero()) {
      // vb divides g: split off the axis factor.
      Poly h = exact_divide(g, vbp);
      return trailing_order(fa, va) + fulton_impl(f, h, va, vb, depth + 1);
    }
    if (fa.degree_in(va) > ga.degree_in(va)) {
      std::swap(f, g);
      std::swap(fa, ga);
    }
    const int df = fa.degree_in(va), dg = ga.degree_in(va);
    const Rat lf = fa.coeffs_in(va).back().constant_term();
    const Rat lg = ga.coeffs_in(va).back().constant_term();
    g = g.scaled(lf) - f.scaled(lg) * Poly::variable(va).pow(dg - df);
  }
}

}  // namespace

int local_intersection(const Poly& f, const Poly& g, Var va, Var vb,
                       const Rat& a, const Rat& b) {
  for (const Poly* p : {&f, &g}) {
    if (p->is_zero())
      throw std::invalid_argument("local_intersection: zero polynomial");
    for (Var v : p->used_vars())
      if (v != va && v != vb)
        throw std::invalid_argument(
            "local_intersection: polynomial uses a variable outside the pair");
  }
  std::map<Var, Poly> shift{{va, Poly::variable(va) + Poly(a)},
                            {vb, Poly::variable(vb) + Poly(b)}};
  Poly ft = f.substitute(shift), gt = g.substitute(shift);
  const std::map<Var, Rat> origin{{va, 0}, {vb, 0}};
  if (ft.evaluate(origin) != 0 || gt.evaluate(origin) != 0) return 0;
  Poly common = poly_gcd(ft, gt);
  if (!common.is_constant() && common.evaluate(origin) == 0)
    throw infinite_intersection_error("curves share the component " +
                                      common.str() + " through the point");
  return fulton_impl(ft, gt, va, vb, 0);
}

int local_intersection(const AffinePolynomial& f, const AffinePolynomial& g,
                       const Rat& a, const Rat& b) {
  if (f.first() != g.first() || f.second() != g.second())
    throw std::invalid_argument("mixed incompatible variable sets");
  return local_intersection(f.poly(), g.poly(), f.first(), f.second(), a, b);
}

// --- rational common zeros of two coprime forms ----------------------------------

namespace {

// Common rational zeros in an affine chart, by eliminating vy.
void solve_affine(const Poly& g1, const Poly& g2, Var vx, Var vy,
                  std::vector<std::pair<Rat, Rat>>& out) {
  if (g1.is_constant() || g2.is_constant()) return;  // nonzero constants
  if (g1.degree_in(vy) == 0 && g2.degree_in(vy) == 0) {
    if (!poly_gcd(g1, g2).is_constant())
      throw invariant_violation_error(
          "affine slices share a pencil; the forms were not coprime");
    return;
  }
  Poly res = resultant(g1, g2, vy);
  if (res.is_zero())
    throw invariant_violation_error(
        "vanishing resultant for coprime forms in a chart");
  if (res.is_constant()) return;
  for (const Rat& x0 : rational_roots(res, vx)) {
    Poly s1 = g1.substitute(vx, Poly(x0));
    Poly s2 = g2.substitute(vx, Poly(x0));
    if (s1.is_zero() && s2.is_zero())
      throw invariant_violation_error("common line inside a finite zero locus");
    Poly h;
    if (s1.is_zero())
      h = s2;
    else if (s2.is_zero())
      h = s1;
    else
      h = poly_gcd(s1, s2);
    if (h.is_constant()) continue;
    for (const Rat& y0 : rational_roots(h, vy)) {
      std::map<Var, Rat> pt{{vx, x0}, {vy, y0}};
      if (g1.evaluate(pt) == 0 && g2.evaluate(pt) == 0)
        out.emplace_back(x0, y0);
    }
  }
}

}  // namespace

std::vector<ProjectivePoint> projective_common_zeros(const Poly& f,
                                                     const Poly& g) {
  if (f.is_zero() || g.is_zero())
    throw std::invalid_argument("projective_common_zeros: zero form");
  if (!poly_gcd(f, g).is_constant())
    throw infinite_intersection_error(
        "forms share a component; their zero locus is infinite");

  std::set<ProjectivePoint> pts;
  // Chart z = 1.
  {
    Poly g1 = f.substitute(Var::z, Poly(Rat(1)));
    Poly g2 = g.substitute(Var::z, Poly(Rat(1)));
    std::vector<std::pair<Rat, Rat>> sol;
    solve_affine(g1, g2, Var::x, Var::y, sol);
    for (const auto& [a, b] : sol) pts.insert(ProjectivePoint(a, b, 1));
  }
  // Chart z = 0, y = 1.
  {
    Poly g1 =
        f.substitute(Var::z, Poly(Rat(0))).substitute(Var::y, Poly(Rat(1)));
    Poly g2 =
        g.substitute(Var::z, Poly(Rat(0))).substitute(Var::y, Poly(Rat(1)));
    if (g1.is_zero() && g2.is_zero())
      throw invariant_violation_error(
          "both forms vanish on the line at infinity");
    Poly h;
    if (g1.is_zero())
      h = g2;
    else if (g2.is_zero())
      h = g1;
    else
      h = poly_gcd(g1, g2);
    if (!h.is_constant()) {
      for (const Rat& x0 : rational_roots(h, Var::x)) {
        std::map<Var, Rat> pt{{Var::x, x0}, {Var::y, 1}, {Var::z, 0}};
        if (f.evaluate(pt) == 0 && g.evaluate(pt) == 0)
          pts.insert(ProjectivePoint(x0, 1, 0));
      }
    }
  }
  // The remaining point (1:0:0).
  {
    std::map<Var, Rat> pt{{Var::x, 1}, {Var::y, 0}, {Var::z, 0}};
    if (f.evaluate(pt) == 0 && g.evaluate(pt) == 0)
      pts.insert(ProjectivePoint(1, 0, 0));
  }
  return std::vector<ProjectivePoint>(pts.begin(), pts.end());
}

// --- fibers ----------------------------------------------------------------------

namespace {

// Dehomogenize a form at the chart of the point's first nonzero coordinate
// and return the affine coordinates of the point there.
struct ChartView {
  Poly poly;
  Var va, vb;
  Rat a, b;
};

ChartView chart_view(const Poly& form, const ProjectivePoint& p) {
  const int k = p.pivot();
  ChartView cv;
  std::array<Var, 2> rest{};
  size_t r = 0;
  for (int i = 0; i < 3; ++i)
    if (i != k) rest[r++] = kXYZ[size_t(i)];
  cv.va = rest[0];
  cv.vb = rest[1];
  cv.poly = form.substitute(kXYZ[size_t(k)], Poly(Rat(1)));
  const Rat pk{p[size_t(k)]};
  cv.a = Rat(p[size_t(static_cast<int>(cv.va))]) / pk;
  cv.b = Rat(p[size_t(static_cast<int>(cv.vb))]) / pk;
  return cv;
}

}  // namespace

FiberReport fiber(const PlaneEndomorphism& f, const ProjectivePoint& target) {
  if (f.degree() < 2)
    throw std::invalid_argument("fiber requires map degree >= 2");
  const int m = f.degree();
  const int j = target.pivot();
  const Rat pj{target[size_t(j)]};

  // Two minors of ((f0,f1,f2),(p0,p1,p2)) anchored at the pivot coordinate:
  // they cut the fiber scheme exactly and carry its local structure.
  std::array<Poly, 2> cut;
  size_t ci = 0;
  for (int k = 0; k < 3; ++k) {
    if (k == j) continue;
    cut[ci++] = pj * f.component(size_t(k)).poly() -
                Rat(target[size_t(k)]) * f.component(size_t(j)).poly();
  }
  for (const auto& c : cut)
    if (c.is_zero())
      throw invariant_violation_error("degenerate fiber cut for a valid map");

  FiberReport rep{target, {}, 0, CrStatus::undetermined};
  for (const auto& x : projective_common_zeros(cut[0], cut[1])) {
    if (f.evaluate(x) != target)
      throw invariant_violation_error("fiber solver produced a stray point");
    ChartView c1 = chart_view(cut[0], x);
    ChartView c2 = chart_view(cut[1], x);
    const int delta =
        local_intersection(c1.poly, c2.poly, c1.va, c1.vb, c1.a, c1.b);
    rep.rational_points.push_back({x, delta});
  }
  const int rm = rep.rational_mass();
  rep.irrational_mass = m * m - rm;
  if (rep.irrational_mass < 0)
    throw invariant_violation_error("fiber mass exceeds the topological degree");

  if (rep.rational_points.size() == 1 && rm == m * m)
    rep.status = CrStatus::yes;
  else if (rep.rational_points.size() >= 2 ||
           (!rep.rational_points.empty() && rep.irrational_mass > 0))
    rep.status = CrStatus::no;
  else
    rep.status = CrStatus::undetermined;
  return rep;
}

int mult_at_point(const Poly& f, const ProjectivePoint& p) {
  if (f.is_zero()) throw std::invalid_argument("mult_at_point: zero form");
  ChartView cv = chart_view(f, p);
  return vanishing_order(cv.poly, {{cv.va, cv.a}, {cv.vb, cv.b}});
}

// --- pushforward multiplicity ------------------------------------------------------

namespace {

uint64_t mix_seed(uint64_t seed, const ProjectivePoint& p) {
  uint64_t h = seed ^ 0x9e3779b97f4a7c15ull;
  for (char c : p.str()) h = (h ^ uint64_t(c)) * 0x100000001b3ull;
  return h;
}

}  // namespace

PushforwardMultiplicity pushforward_multiplicity(const PlaneEndomorphism& f,
                                                 const PlaneDivisor& r,
                                                 const ProjectivePoint& y,
                                                 uint64_t seed) {
  FiberReport fib = fiber(f, y);
  const MultMethod method =
      fib.irrational_mass == 0 ? MultMethod::exact : MultMethod::lower_bound;
  const Poly jform = r.form_with_multiplicities();

  // Basis of the lines through y.
  const int piv = y.pivot();
  std::array<std::array<Rat, 3>, 2> basis{};
  size_t bi = 0;
  for (int k = 0; k < 3; ++k) {
    if (k == piv) continue;
    std::array<Rat, 3> e{};
    e[size_t(k)] = Rat(y[size_t(piv)]);
    e[size_t(piv)] = -Rat(y[size_t(k)]);
    basis[bi++] = e;
  }

  std::mt19937_64 rng(mix_seed(seed, y));
  std::uniform_int_distribution<long> dist(-10000, 10000);
  std::vector<Int> values;
  for (int trial = 0; trial < 5; ++trial) {
    long s = dist(rng), t = dist(rng);
    if (s == 0 && t == 0) s = 1;
    std::array<Rat, 3> line{};
    for (size_t k = 0; k < 3; ++k)
      line[k] = Rat(s) * basis[0][k] + Rat(t) * basis[1][k];
    Poly pull;
    for (size_t k = 0; k < 3; ++k)
      pull += line[k] * f.component(k).poly();
    if (pull.is_zero()) continue;

    Int val = 0;
    bool ok = true;
    for (const auto& fp : fib.rational_points) {
      ChartView cj = chart_view(jform, fp.point);
      ChartView cp = chart_view(pull, fp.point);
      try {
        val += local_intersection(cj.poly, cp.poly, cj.va, cj.vb, cj.a, cj.b);
      } catch (const infinite_intersection_error&) {
        ok = false;  // the line met an image component; redraw
        break;
      }
    }
    if (!ok) continue;
    values.push_back(val);
    // Two independent generic lines must agree; non-generic ones overshoot,
    // so the agreed value is also the minimum.
    std::sort(values.begin(), values.end());
    for (size_t i = 0; i + 1 < values.size(); ++i)
      if (values[i] == values[i + 1]) return {values[i], method};
  }
  throw genericity_error(
      "pushforward multiplicity: no two auxiliary lines agreed");
}

Prop1Check check_prop1(const PlaneEndomorphism& f, const ProjectivePoint& y,
                       uint64_t seed) {
  const PlaneDivisor r = ramification_divisor(f);
  const PushforwardMultiplicity pm = pushforward_multiplicity(f, r, y, seed);
  const FiberReport fib = fiber(f, y);
  Int rhs = 0;
  for (const auto& fp : fib.rational_points) rhs += fp.local_degree - 1;
  Prop1Check out;
  out.lhs = pm.value;
  out.rhs = rhs;
  out.slack = pm.value - rhs;
  out.holds = out.slack >= 0;
  out.method = pm.method;
  return out;
}

// --- direct image of a divisor with line components ---------------------------------

namespace {

// Two points spanning the line a*x + b*y + c*z = 0.
std::array<ProjectivePoint, 2> span_of_line(const Poly& line) {
  std::map<Var, Rat> ex{{Var::x, 1}, {Var::y, 0}, {Var::z, 0}};
  std::map<Var, Rat> ey{{Var::x, 0}, {Var::y, 1}, {Var::z, 0}};
  std::map<Var, Rat> ez{{Var::x, 0}, {Var::y, 0}, {Var::z, 1}};
  const Rat a = line.evaluate(ex), b = line.evaluate(ey), c = line.evaluate(ez);
  if (a != 0)
    return {ProjectivePoint(-b, a, Rat(0)), ProjectivePoint(-c, Rat(0), a)};
  if (b != 0)
    return {ProjectivePoint(Rat(1), Rat(0), Rat(0)),
            ProjectivePoint(Rat(0), -c, b)};
  return {ProjectivePoint(Rat(1), Rat(0), Rat(0)),
          ProjectivePoint(Rat(0), Rat(1), Rat(0))};
}

}  // namespace

PlaneDivisor pushforward_divisor(const PlaneEndomorphism& f,
                                 const PlaneDivisor& r) {
  const int m = f.degree();
  std::vector<DivisorComponent> out;

  for (const auto& comp : r.components()) {
    if (*comp.form.degree() != 1)
      throw std::invalid_argument(
          "pushforward_divisor handles divisors with line components only");
    const auto span = span_of_line(comp.form.poly());

    // Parametrize the line by (u,v) and push through f.
    std::map<Var, Poly> par;
    for (size_t i = 0; i < 3; ++i)
      par.emplace(kXYZ[i], Rat(span[0][i]) * Poly::variable(Var::u) +
                               Rat(span[1][i]) * Poly::variable(Var::v));
    std::array<Poly, 3> psi;
    for (size_t i = 0; i < 3; ++i)
      psi[i] = f.component(i).poly().substitute(par);

    // Anchor on a coordinate that does not vanish at the first span point, so
    // both elimination forms keep full u-degree.
    std::map<Var, Rat> at_p{{Var::u, 1}, {Var::v, 0}};
    size_t anchor = 3;
    for (size_t i = 0; i < 3; ++i)
      if (psi[i].evaluate(at_p) != 0) {
        anchor = i;
        break;
      }
    if (anchor == 3)
      throw invariant_violation_error("map vanishes at a point of the line");
    const size_t ia = (anchor + 1) % 3, ib = (anchor + 2) % 3;
    const Poly xa = Poly::variable(kXYZ[anchor]);
    const Poly ximg_a = Poly::variable(kXYZ[ia]);
    const Poly ximg_b = Poly::variable(kXYZ[ib]);
    Poly elim1 = ximg_a * psi[anchor] - xa * psi[ia];
    Poly elim2 = ximg_b * psi[anchor] - xa * psi[ib];
    Poly res = resultant(elim1.substitute(Var::v, Poly(Rat(1))),
                         elim2.substitute(Var::v, Poly(Rat(1))), Var::u);
    // The anchor coordinate divides the resultant exactly m times; what is
    // left is the image form raised to the mapping degree of f on the line.
    for (int k = 0; k < m; ++k) res = exact_divide(res, xa);

    auto factors = squarefree_decompose(res);
    if (factors.size() != 1)
      throw invariant_violation_error(
          "line image implicitization produced several components");
    const Poly h = factors[0].factor;
    const int mu = factors[0].multiplicity;
    if (mu * h.total_degree() != m)
      throw invariant_violation_error("line image degree bookkeeping failed");
    // Certify the image: h must vanish on the parametrized pushforward.
    std::map<Var, Poly> img{{Var::x, psi[0]}, {Var::y, psi[1]}, {Var::z, psi[2]}};
    if (!h.substitute(img).is_zero())
      throw invariant_violation_error("computed image misses the parametrized curve");

    bool merged = false;
    for (auto& existing : out) {
      if (existing.form.poly() == h) {
        existing.multiplicity += comp.multiplicity * mu;
        merged = true;
        break;
      }
    }
    if (!merged)
      out.push_back({HomogeneousForm(h), comp.multiplicity * mu});
  }

  PlaneDivisor pushed(std::move(out));
  if (pushed.total_degree() != m * r.total_degree())
    throw invariant_violation_error("direct image degree mismatch");
  return pushed;
}

// --- germ identities ------------------------------------------------------------------

bool verify_example2(int m) {
  if (m < 3 || m > 9 || m % 2 == 0)
    throw std::invalid_argument("verify_example2 needs odd m with 3 <= m <= 9");
  const Poly x = Poly::variable(Var::x), y = Poly::variable(Var::y);
  const Poly gu = Rat(1, 2) * (x.pow(m) - y.pow(m));
  const Poly gv = x * y;

  // Ramification locus of the germ: the Jacobian determinant.
  const Poly jac = gu.derivative(Var::x) * gv.derivative(Var::y) -
                   gu.derivative(Var::y) * gv.derivative(Var::x);
  const Poly ram = Rat(m, 2) * (x.pow(m) + y.pow(m));
  if (jac != ram) return false;

  // ((x^m - y^m)/2)^2 + (xy)^m = (x^m + y^m)^2 / 4.
  const Poly lhs = gu * gu + gv.pow(m);
  const Poly rhs = Rat(1, 4) * (x.pow(m) + y.pow(m)).pow(2);
  if (lhs != rhs) return false;

  // Pullback of u^2 + v^m is twice the ramification locus as a divisor.
  const Poly target =
      Poly::variable(Var::u).pow(2) + Poly::variable(Var::v).pow(m);
  const Poly pulled =
      target.substitute(std::map<Var, Poly>{{Var::u, gu}, {Var::v, gv}});
  const auto dec = squarefree_decompose(pulled);
  if (dec.size() != 1 || dec[0].multiplicity != 2) return false;
  return dec[0].factor == (x.pow(m) + y.pow(m)).normalized();
}

// --- smooth-locus audit ------------------------------------------------------------

Prop2Audit prop2_audit(const PlaneEndomorphism& f, const HomogeneousForm& d,
                       const std::vector<ProjectivePoint>& points) {
  if (d.is_zero()) throw std::invalid_argument("prop2_audit: zero curve");
  for (const auto& sf : squarefree_decompose(d.poly()))
    if (sf.multiplicity > 1)
      throw std::invalid_argument("prop2_audit: curve must be square-free");

  Prop2Audit audit;
  audit.curve_degree = *d.degree();
  audit.bound = 3 * audit.curve_degree - 1;
  audit.cr_smooth_count = 0;
  for (const auto& p : points) {
    Prop2PointRecord rec{p, false, false, CrStatus::undetermined};
    const auto vals = point_values(p);
    rec.on_curve = d.poly().evaluate(vals) == 0;
    bool grad_zero = true;
    for (Var v : kXYZ)
      if (d.poly().derivative(v).evaluate(vals) != 0) grad_zero = false;
    rec.smooth = rec.on_curve && !grad_zero;
    rec.cr = fiber(f, p).status;
    if (rec.on_curve && rec.smooth && rec.cr == CrStatus::yes)
      ++audit.cr_smooth_count;
    audit.points.push_back(std::move(rec));
  }
  audit.within_bound = audit.cr_smooth_count <= audit.bound;
  if (!audit.within_bound)
    throw theorem_violation_error(
        "complete ramification count " +
        std::to_string(audit.cr_smooth_count) + " exceeds the smooth-locus bound " +
        std::to_string(audit.bound));
  return audit;
}

}  // namespace ramplane

#include "ramplane/projmap.hpp"

#include <random>
#include <sstream>

#include "ramplane/errors.hpp"

namespace ramplane {

ProjectivePoint::ProjectivePoint(const Rat& a, const Rat& b, const Rat& c) {
  if (a == 0 && b == 0 && c == 0)
    throw std::invalid_argument("projective point cannot be (0,0,0)");
  const std::array<Rat, 3> r{a, b, c};
  Int lcm = 1;
  for (const auto& v : r)
    lcm = boost::multiprecision::lcm(lcm, denominator(v));
  for (size_t i = 0; i < 3; ++i) c_[i] = numerator(r[i]) * (lcm / denominator(r[i]));
  Int g = 0;
  for (const auto& v : c_) g = boost::multiprecision::gcd(g, v);
  for (auto& v : c_) v /= g;
  for (const auto& v : c_) {
    if (v == 0) continue;
    if (v < 0)
      for (auto& w : c_) w = -w;
    break;
  }
}

ProjectivePoint ProjectivePoint::parse(const std::string& text) {
  std::array<Rat, 3> r;
  size_t pos = 0;
  for (size_t i = 0; i < 3; ++i) {
    size_t next = (i < 2) ? text.find(':', pos) : text.size();
    if (next == std::string::npos)
      throw std::invalid_argument("point must be 'a:b:c': " + text);
    std::string piece = text.substr(pos, next - pos);
    // trim
    while (!piece.empty() && std::isspace((unsigned char)piece.front()))
      piece.erase(piece.begin());
    while (!piece.empty() && std::isspace((unsigned char)piece.back()))
      piece.pop_back();
    r[i] = Rat(piece);
    pos = next + 1;
  }
  return ProjectivePoint(r[0], r[1], r[2]);
}

int ProjectivePoint::pivot() const {
  for (int i = 0; i < 3; ++i)
    if (c_[size_t(i)] != 0) return i;
  return -1;  // unreachable
}

std::string ProjectivePoint::str() const {
  std::ostringstream os;
  os << c_[0] << ":" << c_[1] << ":" << c_[2];
  return os.str();
}

namespace {

const std::array<Var, 3> kXYZ{Var::x, Var::y, Var::z};

// Apply an integer linear change of coordinates to a form.
Poly apply_matrix(const Poly& p, const std::array<std::array<int, 3>, 3>& t) {
  std::map<Var, Poly> repl;
  for (int i = 0; i < 3; ++i) {
    Poly row;
    for (int j = 0; j < 3; ++j)
      row += Rat(t[size_t(i)][size_t(j)]) * Poly::variable(kXYZ[size_t(j)]);
    repl.emplace(kXYZ[size_t(i)], row);
  }
  return p.substitute(repl);
}

// Unimodular shears used by the base-point-freeness check. The identity goes
// first so the fast path is deterministic.
std::array<std::array<int, 3>, 3> shear_matrix(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-4, 4);
  // Lower*upper triangular with unit diagonal: always invertible.
  int a = d(rng), b = d(rng), c = d(rng), e = d(rng), f = d(rng), g = d(rng);
  std::array<std::array<int, 3>, 3> lo{{{1, 0, 0}, {a, 1, 0}, {b, c, 1}}};
  std::array<std::array<int, 3>, 3> up{{{1, e, f}, {0, 1, g}, {0, 0, 1}}};
  std::array<std::array<int, 3>, 3> m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int s = 0;
      for (int k = 0; k < 3; ++k) s += lo[size_t(i)][size_t(k)] * up[size_t(k)][size_t(j)];
      m[size_t(i)][size_t(j)] = s;
    }
  return m;
}

// Search for a rational common zero of the three forms, using the candidate
// locus cut out by g (a nonconstant binary form in sheared coordinates is not
// usable here, so this works directly on the original forms chart by chart).
std::optional<ProjectivePoint> rational_common_zero(
    const std::array<Poly, 3>& f) {
  // Chart z = 1: common rational zeros of f0,f1 then filter by f2.
  const auto charts = std::array<std::array<Var, 3>, 3>{
      std::array<Var, 3>{Var::z, Var::x, Var::y},
      std::array<Var, 3>{Var::y, Var::x, Var::z},
      std::array<Var, 3>{Var::x, Var::y, Var::z}};
  for (const auto& [one, va, vb] : charts) {
    std::array<Poly, 3> g;
    for (size_t i = 0; i < 3; ++i) g[i] = f[i].substitute(one, Poly(Rat(1)));
    // Pick two with positive degree to eliminate vb.
    Poly r;
    bool have = false;
    for (size_t i = 0; i < 3 && !have; ++i)
      for (size_t j = i + 1; j < 3 && !have; ++j) {
        if (g[i].is_zero() || g[j].is_zero()) continue;
        if (g[i].degree_in(vb) == 0 && g[j].degree_in(vb) == 0) continue;
        r = resultant(g[i], g[j], vb);
        have = true;
      }
    if (!have) continue;
    if (r.is_zero()) continue;  // degenerate pair; other charts may answer
    if (r.is_constant()) continue;
    for (const Rat& aval : rational_roots(r, va)) {
      // Solve for vb on the slice and check all three forms.
      Poly univ;
      for (size_t i = 0; i < 3; ++i) {
        Poly s = g[i].substitute(va, Poly(aval));
        if (s.is_zero()) continue;
        univ = univ.is_zero() ? s : poly_gcd(univ, s);
      }
      if (univ.is_zero()) continue;
      std::vector<Rat> bs;
      if (univ.is_constant())
        continue;
      bs = rational_roots(univ, vb);
      for (const Rat& bval : bs) {
        std::map<Var, Rat> pt{{one, 1}, {va, aval}, {vb, bval}};
        bool all = true;
        for (size_t i = 0; i < 3; ++i)
          if (f[i].evaluate(pt) != 0) all = false;
        if (all) {
          std::array<Rat, 3> c;
          c[size_t(static_cast<int>(one))] = 1;  // relies on Var order x,y,z
          c[size_t(static_cast<int>(va))] = aval;
          c[size_t(static_cast<int>(vb))] = bval;
          return ProjectivePoint(c[0], c[1], c[2]);
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

namespace {

// Rational directions (x0:y0) on which the binary form vanishes.
std::vector<std::pair<Rat, Rat>> binary_form_rational_roots(const Poly& g) {
  std::vector<std::pair<Rat, Rat>> out;
  const Poly gy1 = g.substitute(Var::y, Poly(Rat(1)));
  if (!gy1.is_zero() && !gy1.is_constant())
    for (const Rat& r : rational_roots(gy1, Var::x)) out.emplace_back(r, 1);
  std::map<Var, Rat> at_inf{{Var::x, 1}, {Var::y, 0}};
  if (g.evaluate(at_inf) == 0) out.emplace_back(1, 0);
  return out;
}

}  // namespace

PlaneEndomorphism PlaneEndomorphism::validate(const HomogeneousForm& f0,
                                              const HomogeneousForm& f1,
                                              const HomogeneousForm& f2) {
  const std::array<HomogeneousForm, 3> f{f0, f1, f2};
  for (const auto& fi : f)
    if (fi.is_zero())
      throw degree_mismatch_error("coordinate form is identically zero");
  const int m = *f0.degree();
  if (f1.degree() != m || f2.degree() != m)
    throw degree_mismatch_error("coordinate forms have unequal degrees");

  // Pairwise common factors force a common zero by Bezout.
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = i + 1; j < 3; ++j) {
      Poly g = poly_gcd(f[i].poly(), f[j].poly());
      if (!g.is_constant()) {
        std::array<Poly, 3> raw{f[0].poly(), f[1].poly(), f[2].poly()};
        auto witness = rational_common_zero(raw);
        throw common_zero_error(
            "coordinate forms " + std::to_string(i) + "," + std::to_string(j) +
                " share the factor " + g.str(),
            witness, g.str());
      }
    }

  // Iterated-resultant base-point test under projection from (0:0:1),
  // retried with unimodular shears when the projected eliminations share a
  // root that rational enumeration cannot settle.
  //
  // Soundness: for a common zero P away from the projection center,
  // Res_z(g_i, g_j) vanishes at the projected direction of P, so a constant
  // gcd of the two resultants plus an explicit center check certifies
  // base-point-freeness outright, for any shear.
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  Poly last_gcd;
  for (int attempt = 0; attempt < 5; ++attempt) {
    std::array<std::array<int, 3>, 3> t{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    if (attempt > 0) t = shear_matrix(rng);
    std::array<Poly, 3> g;
    for (size_t i = 0; i < 3; ++i) g[i] = apply_matrix(f[i].poly(), t);

    // The projection center itself.
    std::map<Var, Rat> center{{Var::x, 0}, {Var::y, 0}, {Var::z, 1}};
    if (g[0].evaluate(center) == 0 && g[1].evaluate(center) == 0 &&
        g[2].evaluate(center) == 0) {
      ProjectivePoint w{Rat(t[0][2]), Rat(t[1][2]), Rat(t[2][2])};
      throw common_zero_error("common zero at " + w.str(), w, "");
    }

    // Pivot on the form of largest z-degree; if every form is z-free they
    // could only meet at the center, which was just excluded.
    size_t pivot = 0;
    for (size_t i = 1; i < 3; ++i)
      if (g[i].degree_in(Var::z) > g[pivot].degree_in(Var::z)) pivot = i;
    if (g[pivot].degree_in(Var::z) == 0) return PlaneEndomorphism(f, m);
    const size_t ia = (pivot + 1) % 3, ib = (pivot + 2) % 3;
    Poly r1 = resultant(g[pivot], g[ia], Var::z);
    Poly r2 = resultant(g[pivot], g[ib], Var::z);
    if (r1.is_constant() || r2.is_constant()) return PlaneEndomorphism(f, m);
    Poly common = poly_gcd(r1, r2);
    if (common.is_constant()) return PlaneEndomorphism(f, m);
    last_gcd = common;

    // Rational candidate directions: a nonconstant gcd of the three slice
    // polynomials proves a genuine common zero over that direction.
    for (const auto& [x0, y0] : binary_form_rational_roots(common)) {
      Poly slice_gcd;
      bool all_zero = true;
      for (size_t i = 0; i < 3; ++i) {
        Poly s = g[i].substitute(Var::x, Poly(x0)).substitute(Var::y, Poly(y0));
        if (s.is_zero()) continue;
        all_zero = false;
        slice_gcd = slice_gcd.is_zero() ? s.normalized() : poly_gcd(slice_gcd, s);
      }
      if (all_zero || !slice_gcd.is_constant()) {
        std::optional<ProjectivePoint> w;
        if (all_zero && (x0 != 0 || y0 != 0)) {
          // whole line over this direction vanishes; pick z = 0
          w = ProjectivePoint(x0, y0, 0);
        } else if (!slice_gcd.is_constant()) {
          auto zs = rational_roots(slice_gcd, Var::z);
          if (!zs.empty()) w = ProjectivePoint(x0, y0, zs.front());
        }
        if (w) {
          // Map the sheared witness back through t.
          Rat wx = Rat(t[0][0]) * Rat((*w)[0]) + Rat(t[0][1]) * Rat((*w)[1]) +
                   Rat(t[0][2]) * Rat((*w)[2]);
          Rat wy = Rat(t[1][0]) * Rat((*w)[0]) + Rat(t[1][1]) * Rat((*w)[1]) +
                   Rat(t[1][2]) * Rat((*w)[2]);
          Rat wz = Rat(t[2][0]) * Rat((*w)[0]) + Rat(t[2][1]) * Rat((*w)[1]) +
                   Rat(t[2][2]) * Rat((*w)[2]);
          ProjectivePoint back(wx, wy, wz);
          throw common_zero_error("common zero at " + back.str(), back,
                                  common.str());
        }
        throw common_zero_error(
            "common zero over an irrational direction of " + common.str(),
            std::nullopt, common.str());
      }
    }
    // All rational directions acquitted; remaining shared directions are
    // irrational and may be a projection artifact. Re-shear.
  }

  std::array<Poly, 3> raw{f[0].poly(), f[1].poly(), f[2].poly()};
  auto witness = rational_common_zero(raw);
  throw common_zero_error(
      "coordinate forms appear to share a projective zero (five shears)",
      witness, last_gcd.is_zero() ? std::string("") : last_gcd.str());
}

PlaneEndomorphism PlaneEndomorphism::parse(const std::string& f0,
                                           const std::string& f1,
                                           const std::string& f2) {
  return validate(HomogeneousForm::parse(f0), HomogeneousForm::parse(f1),
                  HomogeneousForm::parse(f2));
}

ProjectivePoint PlaneEndomorphism::evaluate(const ProjectivePoint& p) const {
  std::map<Var, Rat> pt{{Var::x, Rat(p[0])}, {Var::y, Rat(p[1])}, {Var::z, Rat(p[2])}};
  const Rat a = f_[0].poly().evaluate(pt);
  const Rat b = f_[1].poly().evaluate(pt);
  const Rat c = f_[2].poly().evaluate(pt);
  if (a == 0 && b == 0 && c == 0)
    throw invariant_violation_error("valid endomorphism evaluated to zero at " +
                                    p.str());
  return ProjectivePoint(a, b, c);
}

PlaneEndomorphism PlaneEndomorphism::compose_after(
    const PlaneEndomorphism& g) const {
  std::map<Var, Poly> repl{{Var::x, g.f_[0].poly()},
                           {Var::y, g.f_[1].poly()},
                           {Var::z, g.f_[2].poly()}};
  std::array<HomogeneousForm, 3> h;
  for (size_t i = 0; i < 3; ++i)
    h[i] = HomogeneousForm(f_[i].poly().substitute(repl));
  return validate(h[0], h[1], h[2]);
}

std::string PlaneEndomorphism::str() const {
  return "(" + f_[0].str() + " : " + f_[1].str() + " : " + f_[2].str() + ")";
}

PlaneEndomorphism power_map(int m) {
  if (m < 1) throw std::invalid_argument("power map needs m >= 1");
  return PlaneEndomorphism::validate(
      HomogeneousForm(Poly::variable(Var::x).pow(m)),
      HomogeneousForm(Poly::variable(Var::y).pow(m)),
      HomogeneousForm(Poly::variable(Var::z).pow(m)));
}

}  // namespace ramplane

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>

#include "ramplane/poly.hpp"

namespace ramplane {

// --- exact division ----------------------------------------------------------

std::optional<Poly> try_divide(const Poly& f, const Poly& g) {
  if (g.is_zero()) return std::nullopt;
  Poly rem = f, quot;
  const Monomial& lg = g.leading_monomial();
  const Rat& cg = g.leading_coeff();
  while (!rem.is_zero()) {
    const Monomial& lr = rem.leading_monomial();
    if (!lg.divides(lr)) return std::nullopt;
    Poly t = Poly::monomial(lr / lg, rem.leading_coeff() / cg);
    quot += t;
    rem -= t * g;
  }
  return quot;
}

Poly exact_divide(const Poly& f, const Poly& g) {
  auto q = try_divide(f, g);
  if (!q) throw std::logic_error("exact_divide: not divisible");
  return *q;
}

// --- gcd (primitive PRS) ------------------------------------------------------

namespace {

// Content of f viewed in R[v], R = Q[rest]: gcd of the v-coefficients.
Poly content_in(const Poly& f, Var v) {
  Poly c;
  for (const Poly& co : f.coeffs_in(v)) {
    if (co.is_zero()) continue;
    c = c.is_zero() ? co.normalized() : poly_gcd(c, co);
    if (c.is_constant()) break;
  }
  return c.is_zero() ? Poly(Rat(1)) : c;
}

Poly primitive_part_in(const Poly& f, Var v) {
  if (f.is_zero()) return f;
  return exact_divide(f, content_in(f, v));
}

// lc(g)^k * f reduced mod g in the variable v (pseudo-remainder).
Poly pseudo_rem(Poly f, const Poly& g, Var v) {
  const int dg = g.degree_in(v);
  const Poly lcg = g.coeffs_in(v)[size_t(dg)];
  const Poly vp = Poly::variable(v);
  while (!f.is_zero() && f.degree_in(v) >= dg) {
    const int df = f.degree_in(v);
    const Poly lcf = f.coeffs_in(v)[size_t(df)];
    f = lcg * f - lcf * g * vp.pow(df - dg);
  }
  return f;
}

}  // namespace

Poly poly_gcd(const Poly& f, const Poly& g) {
  if (f.is_zero()) return g.normalized();
  if (g.is_zero()) return f.normalized();
  if (f.is_constant() || g.is_constant()) return Poly(Rat(1));

  // Main variable: one used by both, else supports are disjoint and the gcd
  // is a constant.
  std::optional<Var> main;
  for (int i = 0; i < kNumVars; ++i) {
    Var v = static_cast<Var>(i);
    if (f.uses(v) && g.uses(v)) {
      main = v;
      break;
    }
  }
  if (!main) return Poly(Rat(1));
  const Var v = *main;

  const Poly cf = content_in(f, v);
  const Poly cg = content_in(g, v);
  const Poly c = poly_gcd(cf, cg);
  Poly fp = exact_divide(f, cf);
  Poly gp = exact_divide(g, cg);
  if (fp.degree_in(v) < gp.degree_in(v)) std::swap(fp, gp);
  while (!gp.is_zero()) {
    Poly r = pseudo_rem(fp, gp, v);
    fp = gp;
    gp = r.is_zero() ? r : primitive_part_in(r, v);
  }
  return (c * primitive_part_in(fp, v)).normalized();
}

// --- square-free decomposition (Yun) ------------------------------------------

namespace {

void merge_factor(std::vector<SquarefreeFactor>& out, const Poly& factor,
                  int mult) {
  Poly norm = factor.normalized();
  for (auto& sf : out) {
    if (sf.factor == norm && sf.multiplicity == mult) return;  // unreachable
  }
  out.push_back({norm, mult});
}

// Split a square-free polynomial into variable-separated parts and peel off
// small linear forms. Purely a refinement: the product is unchanged.
std::vector<Poly> refine_squarefree(const Poly& f) {
  std::vector<Poly> work{f}, done;
  // Separate factors by variable support: for square-free F and any variable
  // w, gcd(F, dF/dw) collects exactly the factors free of w.
  while (!work.empty()) {
    Poly cur = work.back();
    work.pop_back();
    bool split = false;
    for (Var w : cur.used_vars()) {
      Poly g = poly_gcd(cur, cur.derivative(w));
      if (!g.is_constant() && g.total_degree() < cur.total_degree()) {
        work.push_back(g);
        work.push_back(exact_divide(cur, g));
        split = true;
        break;
      }
    }
    if (!split) done.push_back(cur);
  }
  // Trial division by small linear forms in the used variables.
  std::vector<Poly> out;
  for (Poly cur : done) {
    if (cur.total_degree() >= 2) {
      const auto vars = cur.used_vars();
      std::vector<Poly> lines;
      const int box = 3;
      const int n = int(vars.size());
      std::vector<int> coef(size_t(n), -box);
      for (;;) {
        bool nonzero = false, first_pos = false, seen = false;
        int g = 0;
        for (int c : coef) {
          if (c != 0 && !seen) {
            seen = true;
            first_pos = c > 0;
          }
          if (c != 0) nonzero = true;
          g = std::gcd(g, c < 0 ? -c : c);
        }
        if (nonzero && first_pos && g == 1) {
          Poly line;
          for (int i = 0; i < n; ++i)
            line += Rat(coef[size_t(i)]) * Poly::variable(vars[size_t(i)]);
          lines.push_back(line);
        }
        int k = n - 1;
        while (k >= 0 && coef[size_t(k)] == box) coef[size_t(k--)] = -box;
        if (k < 0) break;
        ++coef[size_t(k)];
      }
      for (const Poly& line : lines) {
        if (cur.total_degree() < 1) break;
        if (auto q = try_divide(cur, line)) {
          out.push_back(line);
          cur = *q;
        }
      }
    }
    if (!cur.is_constant()) out.push_back(cur);
  }
  return out;
}

}  // namespace

std::vector<SquarefreeFactor> squarefree_decompose(const Poly& f) {
  if (f.is_zero())
    throw std::invalid_argument("squarefree_decompose: zero polynomial");
  std::vector<SquarefreeFactor> out;
  if (f.is_constant()) return out;

  const Var v = f.used_vars().front();
  const Poly cont = content_in(f, v);
  const Poly pp = exact_divide(f, cont);
  if (!cont.is_constant()) out = squarefree_decompose(cont);

  // Yun's algorithm on the v-primitive part.
  const Poly dp = pp.derivative(v);
  Poly g = poly_gcd(pp, dp);
  Poly c = exact_divide(pp, g);
  Poly d = exact_divide(dp, g) - c.derivative(v);
  int i = 1;
  while (!c.is_constant()) {
    Poly a = poly_gcd(c, d);
    if (!a.is_constant())
      for (const Poly& piece : refine_squarefree(a)) merge_factor(out, piece, i);
    c = exact_divide(c, a);
    d = exact_divide(d, a) - c.derivative(v);
    ++i;
  }

  std::sort(out.begin(), out.end(),
            [](const SquarefreeFactor& a, const SquarefreeFactor& b) {
              if (a.multiplicity != b.multiplicity)
                return a.multiplicity < b.multiplicity;
              return GrlexGreater()(a.factor.leading_monomial(),
                                    b.factor.leading_monomial());
            });
  return out;
}

// --- resultant -----------------------------------------------------------------

namespace {

// Fraction-free Bareiss determinant with polynomial entries.
Poly bareiss_det(std::vector<std::vector<Poly>> m) {
  const size_t n = m.size();
  if (n == 0) return Poly(Rat(1));
  int sign = 1;
  Poly prev(Rat(1));
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return Poly();
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j)
        m[i][j] = exact_divide(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
      m[i][k] = Poly();
    }
    prev = m[k][k];
  }
  return sign == 1 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

}  // namespace

Poly resultant(const Poly& f, const Poly& g, Var elim) {
  if (f.is_zero() || g.is_zero())
    throw std::invalid_argument("resultant: zero polynomial");
  const auto fc = f.coeffs_in(elim);
  const auto gc = g.coeffs_in(elim);
  const int df = int(fc.size()) - 1;
  const int dg = int(gc.size()) - 1;
  if (df == 0 && dg == 0)
    throw std::invalid_argument(
        "resultant: both inputs constant in the eliminated variable");
  if (df == 0) return fc[0].pow(dg);
  if (dg == 0) return gc[0].pow(df);

  const size_t n = size_t(df + dg);
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  for (int r = 0; r < dg; ++r)
    for (int j = 0; j <= df; ++j) m[size_t(r)][size_t(r + j)] = fc[size_t(df - j)];
  for (int r = 0; r < df; ++r)
    for (int j = 0; j <= dg; ++j)
      m[size_t(dg + r)][size_t(r + j)] = gc[size_t(dg - j)];
  return bareiss_det(std::move(m));
}

// --- rational roots -------------------------------------------------------------

namespace {

bool is_small_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int64_t next_prime(int64_t n) {
  while (!is_small_prime(n)) ++n;
  return n;
}

int64_t mod_pow(int64_t b, int64_t e, int64_t m) {
  int64_t r = 1;
  b %= m;
  while (e > 0) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

Int ext_gcd(const Int& a, const Int& b, Int& s, Int& t) {
  if (b == 0) {
    s = (a < 0) ? -1 : 1;
    t = 0;
    return boost::multiprecision::abs(a);
  }
  Int s1, t1;
  Int g = ext_gcd(b, a % b, s1, t1);
  s = t1;
  t = s1 - (a / b) * t1;
  return g;
}

Int mod_inverse(const Int& a, const Int& m) {
  Int s, t;
  Int g = ext_gcd(a % m, m, s, t);
  if (g != 1) throw std::logic_error("mod_inverse: not invertible");
  Int r = s % m;
  if (r < 0) r += m;
  return r;
}

Int horner_mod(const std::vector<Int>& c, const Int& x, const Int& m) {
  Int acc = 0;
  for (size_t i = c.size(); i-- > 0;) {
    acc = (acc * x + c[i]) % m;
    if (acc < 0) acc += m;
  }
  return acc;
}

// p/q = r (mod m) with |p| <= nbound, 0 < q <= dbound; requires
// m > 2*nbound*dbound for uniqueness. Verified by the caller regardless.
std::optional<std::pair<Int, Int>> rational_reconstruct(const Int& r,
                                                        const Int& m,
                                                        const Int& nbound,
                                                        const Int& dbound) {
  Int r0 = m, r1 = r % m, t0 = 0, t1 = 1;
  if (r1 < 0) r1 += m;
  while (r1 > nbound) {
    Int q = r0 / r1;
    Int r2 = r0 - q * r1;
    Int t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0) return std::nullopt;
  Int p = r1, q = t1;
  if (q < 0) {
    p = -p;
    q = -q;
  }
  if (q > dbound) return std::nullopt;
  if (boost::multiprecision::gcd(p, q) != 1) return std::nullopt;
  return std::make_pair(p, q);
}

}  // namespace

std::vector<Rat> rational_roots(const Poly& f, Var v) {
  if (f.is_zero()) throw std::invalid_argument("rational_roots: zero polynomial");
  for (Var w : f.used_vars())
    if (w != v)
      throw std::invalid_argument("rational_roots: polynomial is not univariate");

  std::vector<Rat> roots;
  if (f.is_constant()) return roots;

  // Square-free part, as a primitive integer coefficient vector.
  Poly s = exact_divide(f, poly_gcd(f, f.derivative(v))).normalized();
  auto spolys = s.coeffs_in(v);
  std::vector<Int> c(spolys.size());
  for (size_t i = 0; i < spolys.size(); ++i) c[i] = numerator(spolys[i].constant_term());

  size_t low = 0;
  while (low < c.size() && c[low] == 0) ++low;
  if (low > 0) {
    roots.push_back(0);
    c.erase(c.begin(), c.begin() + long(low));
  }
  const size_t n = c.size() - 1;  // degree
  if (n == 0) return roots;
  if (n == 1) {
    roots.push_back(Rat(-c[0], c[1]));
    std::sort(roots.begin(), roots.end());
    return roots;
  }

  const Int a0 = boost::multiprecision::abs(c[0]);
  const Int an = boost::multiprecision::abs(c[n]);
  const Int recon_bound = 2 * a0 * an + 1;

  std::vector<Int> dc(n);  // derivative coefficients
  for (size_t i = 1; i <= n; ++i) dc[i - 1] = Int(i) * c[i];

  auto verify = [&](const Int& p, const Int& q) {
    // sum c[i] * p^i * q^(n-i) == 0
    Int acc = 0, pp = 1;
    std::vector<Int> qp(n + 1);
    qp[0] = 1;
    for (size_t i = 1; i <= n; ++i) qp[i] = qp[i - 1] * q;
    for (size_t i = 0; i <= n; ++i) {
      acc += c[i] * pp * qp[n - i];
      pp *= p;
    }
    return acc == 0;
  };

  int64_t ell = 10007;
  for (int attempt = 0; attempt < 64; ++attempt, ell = next_prime(ell + 1)) {
    const Int L(ell);
    if (c[n] % L == 0) continue;
    // S must stay square-free mod ell: test gcd(S, S') = 1 in F_ell[T] via a
    // quick Euclid on int64 coefficient vectors.
    std::vector<int64_t> sm(n + 1), dm(n);
    for (size_t i = 0; i <= n; ++i) {
      Int r = c[i] % L;
      if (r < 0) r += L;
      sm[i] = int64_t(r);
    }
    for (size_t i = 0; i < n; ++i) {
      Int r = dc[i] % L;
      if (r < 0) r += L;
      dm[i] = int64_t(r);
    }
    auto deg_of = [](const std::vector<int64_t>& p) {
      int d = int(p.size()) - 1;
      while (d >= 0 && p[size_t(d)] == 0) --d;
      return d;
    };
    std::vector<int64_t> A = sm, B = dm;
    while (deg_of(B) >= 0) {
      int da = deg_of(A), db = deg_of(B);
      if (da < db) {
        std::swap(A, B);
        continue;
      }
      int64_t inv = mod_pow(B[size_t(db)], ell - 2, ell);
      int64_t q = A[size_t(da)] * inv % ell;
      for (int j = 0; j <= db; ++j) {
        A[size_t(da - db + j)] =
            ((A[size_t(da - db + j)] - q * B[size_t(j)]) % ell + ell) % ell;
      }
      if (deg_of(A) < deg_of(B)) std::swap(A, B);
    }
    if (deg_of(A) != 0) continue;  // not square-free mod ell; next prime

    // Roots mod ell by brute force.
    std::vector<int64_t> mod_roots;
    for (int64_t r = 0; r < ell; ++r) {
      int64_t acc = 0;
      for (size_t i = n + 1; i-- > 0;) acc = (acc * r + sm[i]) % ell;
      if (acc == 0) mod_roots.push_back(r);
    }

    for (int64_t r0 : mod_roots) {
      // Hensel lift the simple root to a modulus past the reconstruction bound.
      Int r = r0, modulus = L;
      while (modulus < recon_bound) {
        Int m2 = modulus * modulus;
        Int fr = horner_mod(c, r, m2);
        Int dfr = horner_mod(dc, r, m2);
        r = (r - fr * mod_inverse(dfr, m2)) % m2;
        if (r < 0) r += m2;
        modulus = m2;
      }
      auto pq = rational_reconstruct(r, modulus, a0, an);
      if (pq && verify(pq->first, pq->second))
        roots.push_back(Rat(pq->first, pq->second));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
  }
  throw std::logic_error("rational_roots: no usable prime found");
}

int vanishing_order(const Poly& f, const std::map<Var, Rat>& point) {
  if (f.is_zero()) throw std::invalid_argument("vanishing_order: zero polynomial");
  std::map<Var, Poly> shift;
  for (const auto& [v, val] : point)
    shift.emplace(v, Poly::variable(v) + Poly(val));
  const Poly g = f.substitute(shift);
  int best = std::numeric_limits<int>::max();
  for (const auto& [m, c] : g.terms()) {
    int d = 0;
    for (const auto& [v, val] : point) d += m[v];
    best = std::min(best, d);
  }
  return best;
}

}  // namespace ramplane

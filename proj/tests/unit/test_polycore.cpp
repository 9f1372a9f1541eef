#include <doctest.h>

#include <random>
#include <set>

#include "ramplane/forms.hpp"
#include "ramplane/poly.hpp"

using namespace ramplane;

namespace {

Poly P(const std::string& s) { return Poly::parse(s); }

// Cofactor-expansion determinant: the independent oracle for the resultant.
Poly naive_det(const std::vector<std::vector<Poly>>& m) {
  const size_t n = m.size();
  if (n == 0) return Poly(Rat(1));
  if (n == 1) return m[0][0];
  Poly acc;
  for (size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<Poly> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    Poly term = m[0][j] * naive_det(minor);
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

Poly naive_sylvester(const Poly& f, const Poly& g, Var v) {
  const auto fc = f.coeffs_in(v);
  const auto gc = g.coeffs_in(v);
  const int df = int(fc.size()) - 1, dg = int(gc.size()) - 1;
  std::vector<std::vector<Poly>> m(size_t(df + dg),
                                   std::vector<Poly>(size_t(df + dg)));
  for (int r = 0; r < dg; ++r)
    for (int j = 0; j <= df; ++j)
      m[size_t(r)][size_t(r + j)] = fc[size_t(df - j)];
  for (int r = 0; r < df; ++r)
    for (int j = 0; j <= dg; ++j)
      m[size_t(dg + r)][size_t(r + j)] = gc[size_t(dg - j)];
  return naive_det(m);
}

Poly random_poly(int deg, std::mt19937_64& rng, std::vector<Var> vars,
                 bool no_constant = false) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> pick(0, int(vars.size()) - 1);
  std::uniform_int_distribution<int> nterms(2, 6);
  Poly out;
  const int t = nterms(rng);
  for (int i = 0; i < t; ++i) {
    Monomial m;
    int budget = deg;
    for (int step = 0; step < 3 && budget > 0; ++step) {
      const Var v = vars[size_t(pick(rng))];
      std::uniform_int_distribution<int> e(0, budget);
      const int k = e(rng);
      m[v] = int16_t(m[v] + k);
      budget -= k;
    }
    if (no_constant && m.total_degree() == 0) continue;
    out += Poly::monomial(m, Rat(coef(rng)));
  }
  return out;
}

}  // namespace

TEST_CASE("parse/print round trip and the term grammar") {
  const Poly p = P("x^2*y + 3/2*z^3 - y*z^2");
  CHECK(p.str() == "x^2*y - y*z^2 + 3/2*z^3");  // canonical grlex order
  CHECK(Poly::parse(p.str()) == p);
  CHECK(P(" x ^ 2 * y+3/2 * z^3-y*z^2 ") == p);
  CHECK(P("0").is_zero());
  CHECK(P("-x + x").is_zero());
  CHECK(P("2x*y") == P("2*x*y"));
  CHECK_THROWS_AS(P("x^"), parse_error);
  CHECK_THROWS_AS(P("3//2*x"), parse_error);
  CHECK_THROWS_AS(P("q + 1"), parse_error);
}

TEST_CASE("ring arithmetic basics") {
  CHECK(P("x + y") * P("x - y") == P("x^2 - y^2"));
  const Poly sub = P("x*y*z").substitute(
      {{Var::x, P("x^2")}, {Var::y, P("y^2")}, {Var::z, P("z^2")}});
  CHECK(sub == P("x^2*y^2*z^2"));
  CHECK(P("x^2 + y").derivative(Var::x) == P("2*x"));
  CHECK(P("x + 1").pow(2) == P("x^2 + 2*x + 1"));
}

TEST_CASE("the odd-degree germ identity, expanded symbolically") {
  for (int m : {3, 5, 7}) {
    const Poly x = Poly::variable(Var::x), y = Poly::variable(Var::y);
    const Poly lhs =
        (Rat(1, 2) * (x.pow(m) - y.pow(m))).pow(2) + (x * y).pow(m);
    const Poly rhs = Rat(1, 4) * (x.pow(m) + y.pow(m)).pow(2);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("degree cap is enforced") {
  const Poly big = Poly::variable(Var::x).pow(40);
  CHECK_THROWS_AS(big * big, degree_cap_error);
}

TEST_CASE("gcd on the frozen examples") {
  CHECK(poly_gcd(P("x^2*y"), P("x*y^2")) == P("x*y"));
  // Euclid over Q(y) gives 1: any common factor divides both 2y^3 and
  // x^3 + y^3.
  CHECK(poly_gcd(P("x^3 + y^3"), P("x^3 - y^3")) == Poly(Rat(1)));
  const Poly f = P("2*x^2 - 2*y^2");
  CHECK(poly_gcd(f, f) == P("x^2 - y^2"));  // content 1, positive lead
}

TEST_CASE("gcd divides both inputs exactly on random pairs") {
  std::mt19937_64 rng(42);
  int nontrivial = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Poly common = random_poly(2, rng, {Var::x, Var::y, Var::z});
    Poly f = random_poly(2, rng, {Var::x, Var::y, Var::z}) * common;
    Poly g = random_poly(2, rng, {Var::x, Var::y, Var::z}) * common;
    if (f.is_zero() || g.is_zero()) continue;
    const Poly d = poly_gcd(f, g);
    CHECK(try_divide(f, d).has_value());
    CHECK(try_divide(g, d).has_value());
    if (!common.is_constant()) {
      CHECK(try_divide(d, common.normalized()).has_value());
      ++nontrivial;
    }
  }
  CHECK(nontrivial > 100);
}

TEST_CASE("square-free decomposition: frozen examples") {
  auto dec = squarefree_decompose(P("x^3*y^2"));
  REQUIRE(dec.size() == 2);
  CHECK(dec[0].factor == P("y"));
  CHECK(dec[0].multiplicity == 2);
  CHECK(dec[1].factor == P("x"));
  CHECK(dec[1].multiplicity == 3);

  // Jacobian of the squaring map: both the coarse and the fully split
  // answers are acceptable; this implementation splits.
  dec = squarefree_decompose(P("8*x*y*z"));
  REQUIRE(dec.size() == 3);
  for (const auto& sf : dec) CHECK(sf.multiplicity == 1);

  dec = squarefree_decompose(P("x^4*z + 2*x^2*y^2*z + y^4*z"));  // (x^2+y^2)^2 z
  REQUIRE(dec.size() == 2);
  CHECK(dec[0].factor == P("z"));
  CHECK(dec[0].multiplicity == 1);
  CHECK(dec[1].factor == P("x^2 + y^2"));
  CHECK(dec[1].multiplicity == 2);
}

TEST_CASE("square-free multiplicities add over products") {
  std::mt19937_64 rng(7);
  const std::vector<Poly> pool = {P("x"),     P("y"),         P("z"),
                                  P("x + y"), P("x - z"),     P("y + 2*z"),
                                  P("x^2 + y*z"), P("x*y + z^2")};
  std::uniform_int_distribution<int> mult(0, 3);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<int> mults(pool.size());
    Poly prod(Rat(1));
    int total = 0;
    for (size_t i = 0; i < pool.size(); ++i) {
      mults[i] = mult(rng);
      total += mults[i];
      if (total > 18) {
        mults[i] = 0;
        break;
      }
      prod = prod * pool[i].pow(mults[i]);
    }
    if (prod.is_constant()) continue;
    // Reconstruct the exponent of each pool element from the decomposition.
    const auto dec = squarefree_decompose(prod);
    Poly rebuilt(Rat(1));
    for (const auto& sf : dec) rebuilt = rebuilt * sf.factor.pow(sf.multiplicity);
    CHECK(rebuilt.normalized() == prod.normalized());
    for (size_t i = 0; i < pool.size(); ++i) {
      if (mults[i] == 0) continue;
      int found = 0;
      for (const auto& sf : dec)
        if (try_divide(sf.factor, pool[i].normalized()).has_value())
          found = sf.multiplicity;
      CHECK(found == mults[i]);
    }
  }
}

TEST_CASE("resultant: frozen examples against the cofactor oracle") {
  CHECK(resultant(P("y - x^2"), P("y"), Var::y) == P("x^2"));
  const Poly r = resultant(P("y^2 - x"), P("y^2 + x"), Var::y);
  CHECK(r == P("4*x^2"));
  CHECK(r == naive_sylvester(P("y^2 - x"), P("y^2 + x"), Var::y));
  // Shared factor involving y: identically zero.
  CHECK(resultant(P("x*y"), P("x*y + x*x"), Var::y).is_zero());
  CHECK_THROWS_AS(resultant(P("x"), P("x + 1"), Var::y), std::invalid_argument);
}

TEST_CASE("resultant is multiplicative and matches the oracle on random input") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    Poly f = random_poly(3, rng, {Var::x, Var::y});
    Poly g = random_poly(3, rng, {Var::x, Var::y});
    Poly h = random_poly(2, rng, {Var::x, Var::y});
    if (f.is_zero() || g.is_zero() || h.is_zero()) continue;
    if (f.degree_in(Var::y) == 0 && g.degree_in(Var::y) == 0) continue;
    const Poly direct = resultant(f, g, Var::y);
    CHECK(direct == naive_sylvester(f, g, Var::y));
    if ((f * h).degree_in(Var::y) == 0 && g.degree_in(Var::y) == 0) continue;
    const Poly prod = resultant(f * h, g, Var::y);
    const Poly split = resultant(f, g, Var::y) * resultant(h, g, Var::y);
    CHECK((prod == split || prod == -split));
  }
}

TEST_CASE("homogeneous arithmetic preserves degree bookkeeping") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> coef(-9, 9);
  for (int trial = 0; trial < 40; ++trial) {
    Poly f, g;
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; i + j <= 2; ++j) {
        Monomial m;
        m[Var::x] = int16_t(i);
        m[Var::y] = int16_t(j);
        m[Var::z] = int16_t(2 - i - j);
        f += Poly::monomial(m, Rat(coef(rng)));
        g += Poly::monomial(m, Rat(coef(rng)));
      }
    if (f.is_zero() || g.is_zero()) continue;
    CHECK(f.is_homogeneous());
    CHECK((f * g).is_homogeneous());
    CHECK((f * g).total_degree() == 4);
    CHECK((f + g).is_homogeneous());
  }
}

TEST_CASE("rational root extraction") {
  const Poly f = (P("x - 2")) * (P("5*x + 3")) * (P("x^2 + 1"));
  auto roots = rational_roots(f, Var::x);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == Rat(-3, 5));
  CHECK(roots[1] == Rat(2));

  // Zero root via a monomial factor, plus repeated factors.
  auto roots2 = rational_roots(P("x^3") * (P("x - 7")).pow(2), Var::x);
  REQUIRE(roots2.size() == 2);
  CHECK(roots2[0] == Rat(0));
  CHECK(roots2[1] == Rat(7));

  // No rational roots.
  CHECK(rational_roots(P("x^2 - 2"), Var::x).empty());
  CHECK(rational_roots(P("x^2 + 1"), Var::x).empty());

  // Large coefficients: (10007 x - 1)(x - 99991).
  const Poly big = P("10007*x - 1") * P("x - 99991");
  auto roots3 = rational_roots(big, Var::x);
  REQUIRE(roots3.size() == 2);
  CHECK(roots3[0] == Rat(1, 10007));
  CHECK(roots3[1] == Rat(99991));
}

TEST_CASE("rational roots on random products with planted roots") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> num(-30, 30), den(1, 12);
  for (int trial = 0; trial < 40; ++trial) {
    std::set<Rat> planted;
    Poly f(Rat(1));
    for (int i = 0; i < 3; ++i) {
      const Rat r(num(rng), den(rng));
      planted.insert(r);
      f = f * (Poly(Rat(denominator(r))) * Poly::variable(Var::x) -
               Poly(Rat(numerator(r))));
    }
    f = f * P("x^2 + 3");  // irrational padding
    const auto roots = rational_roots(f, Var::x);
    CHECK(std::set<Rat>(roots.begin(), roots.end()) == planted);
  }
}

TEST_CASE("homogeneous form wrapper enforces its invariants") {
  CHECK_THROWS_AS(HomogeneousForm(P("x^2 + y")), std::invalid_argument);
  CHECK_THROWS_AS(HomogeneousForm(P("u^2")), std::invalid_argument);
  const HomogeneousForm f = HomogeneousForm::parse("x^2 + y*z");
  CHECK(f.degree() == 2);
  CHECK(HomogeneousForm().degree() == std::nullopt);
  CHECK(f.dehomogenize(Var::z) == P("x^2 + y"));
}

TEST_CASE("affine polynomials reject mixed variable pairs") {
  const auto f = AffinePolynomial::parse(Var::x, Var::y, "x^2 + y");
  const auto g = AffinePolynomial::parse(Var::u, Var::v, "u*v");
  CHECK_THROWS_AS(f + g, std::invalid_argument);
  const auto h = AffinePolynomial::parse(Var::x, Var::y, "x - y");
  CHECK((f * h).poly() == P("x^2 + y") * P("x - y"));
}

TEST_CASE("vanishing order at shifted points") {
  CHECK(vanishing_order(P("y - x^2"), {{Var::x, 0}, {Var::y, 0}}) == 1);
  CHECK(vanishing_order(P("x^2*y^3"), {{Var::x, 0}, {Var::y, 0}}) == 5);
  CHECK(vanishing_order(P("x^2 + y^2 - 2"), {{Var::x, 1}, {Var::y, 1}}) == 1);
  CHECK(vanishing_order(P("x + 1"), {{Var::x, 0}, {Var::y, 0}}) == 0);
}

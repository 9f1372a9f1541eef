#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ramplane {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Total-degree cap for all products and substitutions. Everything in this
// toolkit lives at desk scale (map degree <= 5 or so); anything past this is
// a bug, not a workload.
constexpr int kMaxTotalDegree = 64;

constexpr int kNumVars = 5;

enum class Var : int { x = 0, y = 1, z = 2, u = 3, v = 4 };

char var_name(Var v);
std::optional<Var> var_from_name(char c);

struct Monomial {
  std::array<int16_t, kNumVars> e{};

  int total_degree() const {
    int t = 0;
    for (auto d : e) t += d;
    return t;
  }
  int operator[](Var v) const { return e[static_cast<int>(v)]; }
  int16_t& operator[](Var v) { return e[static_cast<int>(v)]; }
  bool operator==(const Monomial& o) const { return e == o.e; }
  bool divides(const Monomial& o) const {
    for (int i = 0; i < kNumVars; ++i)
      if (e[i] > o.e[i]) return false;
    return true;
  }
  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kNumVars; ++i) r.e[i] = int16_t(e[i] + o.e[i]);
    return r;
  }
  Monomial operator/(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kNumVars; ++i) r.e[i] = int16_t(e[i] - o.e[i]);
    return r;
  }
};

// Graded lexicographic order with x > y > z > u > v; the global term order
// used for canonical printing, leading terms and hashing.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int ta = a.total_degree(), tb = b.total_degree();
    if (ta != tb) return ta > tb;
    return a.e > b.e;  // lexicographic on (x,y,z,u,v) exponents
  }
};

class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class degree_cap_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact sparse multivariate polynomial over Q in the fixed variable universe
// {x,y,z,u,v}. Immutable in spirit: all operations return new values.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rat, GrlexGreater>;

  Poly() = default;
  explicit Poly(const Rat& c);
  explicit Poly(long c) : Poly(Rat(c)) {}
  static Poly variable(Var v);
  static Poly monomial(const Monomial& m, const Rat& c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_integer_constant() const;
  // Total degree; -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(Var v) const;
  bool uses(Var v) const { return degree_in(v) > 0; }
  std::vector<Var> used_vars() const;
  size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  // True when all terms share the same total degree (zero counts as
  // homogeneous of any degree).
  bool is_homogeneous() const;

  const Rat& coeff(const Monomial& m) const;
  Rat constant_term() const;
  // Leading term in the global grlex order. Requires nonzero.
  const Monomial& leading_monomial() const;
  const Rat& leading_coeff() const;

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly scaled(const Rat& c) const;
  Poly pow(int n) const;
  Poly derivative(Var v) const;

  // Simultaneous substitution var -> polynomial; variables absent from the
  // map are left alone.
  Poly substitute(const std::map<Var, Poly>& repl) const;
  Poly substitute(Var v, const Poly& p) const;

  Rat evaluate(const std::map<Var, Rat>& point) const;

  // Univariate view: coefficients of v^0..v^deg as polynomials in the
  // remaining variables.
  std::vector<Poly> coeffs_in(Var v) const;
  static Poly from_coeffs_in(Var v, const std::vector<Poly>& coeffs);

  // Content of the coefficient list over Z: the positive rational c such
  // that (1/c)*this has coprime integer coefficients. Zero for the zero
  // polynomial.
  Rat rational_content() const;
  // Primitive integer form with positive leading coefficient.
  Poly normalized() const;

  std::string str() const;
  static Poly parse(const std::string& text);

  size_t hash() const;

 private:
  void insert_term(const Monomial& m, const Rat& c);
  void check_degree_cap() const;

  TermMap terms_;
};

Poly operator*(const Rat& c, const Poly& p);

// --- division, gcd, decomposition ------------------------------------------

// Exact multivariate division; nullopt when g does not divide f.
std::optional<Poly> try_divide(const Poly& f, const Poly& g);
Poly exact_divide(const Poly& f, const Poly& g);

// GCD over Q[x,y,z,u,v], normalized (coprime integer coefficients, positive
// grlex-leading coefficient). Both inputs must be nonzero unless one is zero,
// in which case the normalization of the other is returned.
Poly poly_gcd(const Poly& f, const Poly& g);

struct SquarefreeFactor {
  Poly factor;       // square-free, normalized
  int multiplicity;  // >= 1
};

// f = c * prod(factor^multiplicity) with pairwise-coprime square-free
// factors. Factors are additionally split when a subproduct separates by
// variable support or by small linear forms; no irreducibility is claimed.
std::vector<SquarefreeFactor> squarefree_decompose(const Poly& f);

// Sylvester resultant eliminating `elim`. Errors when both inputs have
// degree zero in `elim` or either is the zero polynomial.
Poly resultant(const Poly& f, const Poly& g, Var elim);

// All rational roots of a nonzero univariate polynomial in `v`
// (deterministic; exact). Roots are returned without multiplicity.
std::vector<Rat> rational_roots(const Poly& f, Var v);

// Multiplicity of the given (affine, chart-local) point on the curve f = 0:
// the lowest total degree appearing after translating the point to the
// origin. Zero when f does not vanish there.
int vanishing_order(const Poly& f, const std::map<Var, Rat>& point);

}  // namespace ramplane

#pragma once

#include <optional>
#include <string>

#include "ramplane/poly.hpp"

namespace ramplane {

// A homogeneous form in (x,y,z). The zero form carries no degree.
class HomogeneousForm {
 public:
  HomogeneousForm() = default;  // zero form
  explicit HomogeneousForm(const Poly& p);
  static HomogeneousForm parse(const std::string& text);

  bool is_zero() const { return poly_.is_zero(); }
  // Degree of a nonzero form; the zero form has none.
  std::optional<int> degree() const;
  const Poly& poly() const { return poly_; }
  std::string str() const { return poly_.str(); }

  HomogeneousForm operator+(const HomogeneousForm& o) const;
  HomogeneousForm operator-(const HomogeneousForm& o) const;
  HomogeneousForm operator*(const HomogeneousForm& o) const;
  HomogeneousForm scaled(const Rat& c) const;
  HomogeneousForm pow(int n) const;
  bool operator==(const HomogeneousForm& o) const { return poly_ == o.poly_; }

  // Dehomogenize by setting `chart` to 1.
  Poly dehomogenize(Var chart) const;

 private:
  Poly poly_;
};

// A polynomial in a declared ordered pair of variables, e.g. (x,y) germs or
// their (u,v) targets.
class AffinePolynomial {
 public:
  AffinePolynomial(Var a, Var b, const Poly& p);
  static AffinePolynomial parse(Var a, Var b, const std::string& text);

  Var first() const { return a_; }
  Var second() const { return b_; }
  const Poly& poly() const { return poly_; }
  std::string str() const { return poly_.str(); }

  AffinePolynomial operator+(const AffinePolynomial& o) const;
  AffinePolynomial operator-(const AffinePolynomial& o) const;
  AffinePolynomial operator*(const AffinePolynomial& o) const;

 private:
  void check_compatible(const AffinePolynomial& o) const;

  Var a_ = Var::x, b_ = Var::y;
  Poly poly_;
};

}  // namespace ramplane

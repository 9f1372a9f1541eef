#include "ramplane/forms.hpp"

namespace ramplane {

HomogeneousForm::HomogeneousForm(const Poly& p) : poly_(p) {
  if (!p.is_homogeneous())
    throw std::invalid_argument("not homogeneous: " + p.str());
  for (Var v : p.used_vars())
    if (v != Var::x && v != Var::y && v != Var::z)
      throw std::invalid_argument("form uses a variable outside (x,y,z): " +
                                  p.str());
}

HomogeneousForm HomogeneousForm::parse(const std::string& text) {
  return HomogeneousForm(Poly::parse(text));
}

std::optional<int> HomogeneousForm::degree() const {
  if (poly_.is_zero()) return std::nullopt;
  return poly_.total_degree();
}

HomogeneousForm HomogeneousForm::operator+(const HomogeneousForm& o) const {
  return HomogeneousForm(poly_ + o.poly_);
}

HomogeneousForm HomogeneousForm::operator-(const HomogeneousForm& o) const {
  return HomogeneousForm(poly_ - o.poly_);
}

HomogeneousForm HomogeneousForm::operator*(const HomogeneousForm& o) const {
  return HomogeneousForm(poly_ * o.poly_);
}

HomogeneousForm HomogeneousForm::scaled(const Rat& c) const {
  return HomogeneousForm(poly_.scaled(c));
}

HomogeneousForm HomogeneousForm::pow(int n) const {
  return HomogeneousForm(poly_.pow(n));
}

Poly HomogeneousForm::dehomogenize(Var chart) const {
  return poly_.substitute(chart, Poly(Rat(1)));
}

AffinePolynomial::AffinePolynomial(Var a, Var b, const Poly& p)
    : a_(a), b_(b), poly_(p) {
  if (a == b) throw std::invalid_argument("affine variable pair must differ");
  for (Var v : p.used_vars())
    if (v != a && v != b)
      throw std::invalid_argument(
          "affine polynomial uses a variable outside its declared pair: " +
          p.str());
}

AffinePolynomial AffinePolynomial::parse(Var a, Var b,
                                         const std::string& text) {
  return AffinePolynomial(a, b, Poly::parse(text));
}

void AffinePolynomial::check_compatible(const AffinePolynomial& o) const {
  if (a_ != o.a_ || b_ != o.b_)
    throw std::invalid_argument("mixed incompatible variable sets: (" +
                                std::string(1, var_name(a_)) + "," +
                                std::string(1, var_name(b_)) + ") vs (" +
                                std::string(1, var_name(o.a_)) + "," +
                                std::string(1, var_name(o.b_)) + ")");
}

AffinePolynomial AffinePolynomial::operator+(const AffinePolynomial& o) const {
  check_compatible(o);
  return AffinePolynomial(a_, b_, poly_ + o.poly_);
}

AffinePolynomial AffinePolynomial::operator-(const AffinePolynomial& o) const {
  check_compatible(o);
  return AffinePolynomial(a_, b_, poly_ - o.poly_);
}

AffinePolynomial AffinePolynomial::operator*(const AffinePolynomial& o) const {
  check_compatible(o);
  return AffinePolynomial(a_, b_, poly_ * o.poly_);
}

}  // namespace ramplane

#pragma once

#include <array>
#include <optional>
#include <string>

#include "ramplane/forms.hpp"
#include "ramplane/poly.hpp"

namespace ramplane {

// A point of P^2(Q), stored as its canonical representative: coprime integer
// coordinates with the first nonzero one positive.
class ProjectivePoint {
 public:
  ProjectivePoint(const Rat& a, const Rat& b, const Rat& c);
  static ProjectivePoint parse(const std::string& text);  // "a:b:c"

  const std::array<Int, 3>& coords() const { return c_; }
  const Int& operator[](size_t i) const { return c_[i]; }
  // Index of the first nonzero coordinate.
  int pivot() const;
  std::string str() const;

  bool operator==(const ProjectivePoint& o) const { return c_ == o.c_; }
  bool operator!=(const ProjectivePoint& o) const { return c_ != o.c_; }
  bool operator<(const ProjectivePoint& o) const { return c_ < o.c_; }

 private:
  std::array<Int, 3> c_;
};

// Raised when the three coordinate forms of a would-be endomorphism share a
// projective zero. Carries a rational witness when one was found, otherwise a
// nonconstant form vanishing on the common locus.
class common_zero_error : public std::runtime_error {
 public:
  common_zero_error(const std::string& what,
                    std::optional<ProjectivePoint> witness,
                    std::string certificate)
      : std::runtime_error(what),
        witness(std::move(witness)),
        certificate(std::move(certificate)) {}

  std::optional<ProjectivePoint> witness;
  std::string certificate;
};

class degree_mismatch_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An endomorphism of P^2 given by three base-point-free forms of a common
// degree m. Topological degree m^2.
class PlaneEndomorphism {
 public:
  // Validates at construction: equal degrees and empty common zero locus.
  static PlaneEndomorphism validate(const HomogeneousForm& f0,
                                    const HomogeneousForm& f1,
                                    const HomogeneousForm& f2);
  static PlaneEndomorphism parse(const std::string& f0, const std::string& f1,
                                 const std::string& f2);

  int degree() const { return m_; }
  bool is_degree_one() const { return m_ == 1; }
  const HomogeneousForm& component(size_t i) const { return f_[i]; }
  const std::array<HomogeneousForm, 3>& components() const { return f_; }

  ProjectivePoint evaluate(const ProjectivePoint& p) const;
  PlaneEndomorphism compose_after(const PlaneEndomorphism& g) const;  // this∘g

  std::string str() const;

 private:
  PlaneEndomorphism(std::array<HomogeneousForm, 3> f, int m)
      : f_(std::move(f)), m_(m) {}

  std::array<HomogeneousForm, 3> f_;
  int m_ = 0;
};

// The power map (x^m : y^m : z^m).
PlaneEndomorphism power_map(int m);

}  // namespace ramplane

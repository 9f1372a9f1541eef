#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ramplane/poly.hpp"
#include "ramplane/projmap.hpp"

namespace ramplane {

// A finite set of distinct rational plane points.
class PointConfiguration {
 public:
  PointConfiguration() = default;
  explicit PointConfiguration(std::vector<ProjectivePoint> pts);

  const std::vector<ProjectivePoint>& points() const { return pts_; }
  size_t size() const { return pts_.size(); }

 private:
  std::vector<ProjectivePoint> pts_;
};

struct MultiplicityCondition {
  ProjectivePoint point;
  int multiplicity;  // r >= 1: all partials of order < r vanish
};

// Projective dimension of the linear system of degree-d curves through the
// configuration (simple base points) plus the extra multiplicity conditions.
// -1 means the system is empty. Conditions listed for a configuration point
// replace its simple-vanishing condition.
int linear_system_dimension(
    const PointConfiguration& config, int degree,
    const std::vector<MultiplicityCondition>& conditions = {});

// The curves of degree d through the conditions, as coefficient kernel forms.
std::vector<Poly> linear_system_basis(
    const PointConfiguration& config, int degree,
    const std::vector<MultiplicityCondition>& conditions = {});

struct NinePointCubicProfile {
  bool unique_cubic;       // the system of cubics has dimension exactly 0
  bool singular_at_member; // the unique cubic is singular at one of the nine
  // A completely ramified nine-point set must have a unique cubic singular
  // at a member; false flags the configuration as inadmissible for that.
  bool admissible() const { return unique_cubic && singular_at_member; }
};

struct ConstraintReport {
  std::vector<std::array<int, 3>> collinear_triples;
  std::vector<std::vector<int>> six_on_conic;
  std::vector<std::vector<int>> ten_on_cubic;
  std::optional<NinePointCubicProfile> nine_point;  // present iff |config| == 9

  bool clean() const {
    return collinear_triples.empty() && six_on_conic.empty() &&
           ten_on_cubic.empty();
  }
};

// Scans all subsets for degenerate incidences: collinear triples, six points
// on a conic, ten on a cubic; for nine points also the unique-cubic profile.
// Requires |config| <= 16.
ConstraintReport configuration_constraints(const PointConfiguration& config);

struct EpWitness {
  int t;                       // curve degree, 0 < t < s
  std::vector<int> subset;     // indices into the configuration
  Poly curve;                  // degree-t form through the subset
};

struct EpSearchResult {
  // Hypothesis bookkeeping for the Cayley-Bacharach style criterion.
  bool s_square_le_points;
  bool tau_large_enough;            // tau > s - 3 + |config|/s
  bool conditions_dependent;        // rank < |config| on degree-tau curves
  bool applicable() const {
    return s_square_le_points && tau_large_enough && conditions_dependent;
  }
  std::optional<EpWitness> witness;  // subset of >= t(tau-t+3) points on a
                                     // degree-t curve, when one exists
};

// Brute-force witness search: some 0 < t < s and a subset of at least
// t(tau-t+3) configuration points lying on a single degree-t curve.
// Requires |config| <= 14. The node budget guards the subset recursion.
EpSearchResult ellia_peskine_search(const PointConfiguration& config, int tau,
                                    int s, uint64_t node_budget = 1u << 22);

}  // namespace ramplane

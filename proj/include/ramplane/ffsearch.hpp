#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ramplane/projmap.hpp"
#include "ramplane/ramify.hpp"

namespace ramplane {

// A coordinate form reduced mod p, stored for fast evaluation.
struct PrimeFieldForm {
  int64_t p = 0;
  int degree = 0;
  std::vector<std::pair<Monomial, int64_t>> terms;
};

struct FiniteFieldMap {
  int64_t p = 0;
  int m = 0;
  std::array<PrimeFieldForm, 3> f;
};

// Reduce a map mod p; nullopt when p divides a coefficient denominator.
std::optional<FiniteFieldMap> reduce_map(const PlaneEndomorphism& f, int64_t p);

// Exhaustive base-point-freeness of the reduced map over F_p and F_{p^2}.
bool good_reduction(const FiniteFieldMap& map);

// Census over P^2(F_p): for every target point, the number of preimages in
// P^2(F_{p^e}), e in {1,2}. Points are indexed by encode_point/decode_point.
struct FfCensus {
  int64_t p = 0;
  int extension = 1;
  std::vector<int32_t> counts;  // size p^2 + p + 1
};

size_t point_table_size(int64_t p);
size_t encode_point(int64_t p, int64_t x, int64_t y, int64_t z);
std::array<int64_t, 3> decode_point(int64_t p, size_t index);

// `budget` is decremented per point evaluation; throws budget_exceeded_error
// when exhausted.
FfCensus ff_fiber_census(const FiniteFieldMap& map, int extension,
                         uint64_t& budget);

// Candidate completely ramified targets: census count exactly one.
std::vector<size_t> census_candidates(const FfCensus& census);

// Rational points of height <= `height` whose reduction is a candidate at
// every prime. Needs at least two primes.
std::vector<ProjectivePoint> lift_candidates(
    const std::vector<std::pair<int64_t, std::set<size_t>>>& per_prime,
    int height);

// Census + lift + symbolic verification for a single map.
struct CrPointsResult {
  std::vector<ProjectivePoint> verified;  // symbolically certified
  std::vector<ProjectivePoint> lifted;    // lift candidates before the check
  std::map<int64_t, std::vector<std::string>> census_candidates;  // per prime
  std::vector<int64_t> skipped_primes;    // bad reduction
  uint64_t evaluations_used = 0;
};

CrPointsResult completely_ramified_points(const PlaneEndomorphism& f,
                                          std::vector<int64_t> primes = {},
                                          int height = 12,
                                          uint64_t budget = 1ull << 32);

// First `count` primes above 2 m^2.
std::vector<int64_t> default_primes(int m, int count = 2);

struct SearchJob {
  enum class Family { power, perturbed_power, composition };
  Family family = Family::perturbed_power;
  int m = 2;
  int coeff_box = 1;  // perturbation coefficients range over [-box, box]
  std::vector<int> compose_exponents;  // for Family::composition
  std::vector<int64_t> primes;         // pairwise distinct, each > 2 m^2
  uint64_t seed = 0;
  uint64_t budget = 1ull << 32;
  int lift_height = 12;

  void check() const;
};

struct SearchMapRecord {
  std::array<std::string, 3> map;
  std::vector<std::string> verified_points;
  std::map<int64_t, std::vector<std::string>> census_candidates;
  std::vector<int64_t> skipped_primes;
  bool constraints_clean = false;
  bool discovery = false;  // more than three verified points
  std::string error;       // nonempty when the map could not be processed
  uint64_t evaluations = 0;
};

struct SearchReport {
  std::vector<SearchMapRecord> records;
  bool budget_exhausted = false;
  uint64_t evaluations = 0;
};

// Enumerates the family, runs the census/lift/verify pipeline per map and
// checks the nine-point constraints on every verified set. A certified
// violation of those constraints throws theorem_violation_error.
SearchReport run_search(const SearchJob& job, int jobs = 1);

}  // namespace ramplane

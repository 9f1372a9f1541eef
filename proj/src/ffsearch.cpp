#include "ramplane/ffsearch.hpp"

#include <algorithm>
#include <future>
#include <numeric>

#include "ramplane/errors.hpp"
#include "ramplane/pointconf.hpp"

namespace ramplane {

namespace {

int64_t mod_pow(int64_t b, int64_t e, int64_t p) {
  int64_t r = 1;
  b %= p;
  if (b < 0) b += p;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

int64_t mod_inv(int64_t a, int64_t p) { return mod_pow(a, p - 2, p); }

bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Smallest quadratic non-residue mod an odd prime.
int64_t find_nonresidue(int64_t p) {
  for (int64_t n = 2; n < p; ++n)
    if (mod_pow(n, (p - 1) / 2, p) == p - 1) return n;
  throw invariant_violation_error("no quadratic non-residue found");
}

// F_{p^2} = F_p[t] / (t^2 - nqr).
struct Fp2 {
  int64_t a = 0, b = 0;
  bool is_zero() const { return a == 0 && b == 0; }
  bool in_base() const { return b == 0; }
};

struct Fp2Ctx {
  int64_t p;
  int64_t nqr;

  Fp2 mul(const Fp2& x, const Fp2& y) const {
    return {(x.a * y.a + x.b * y.b % p * nqr) % p,
            (x.a * y.b + x.b * y.a) % p};
  }
  Fp2 add(const Fp2& x, const Fp2& y) const {
    return {(x.a + y.a) % p, (x.b + y.b) % p};
  }
  Fp2 scale(int64_t c, const Fp2& x) const {
    return {c * x.a % p, c * x.b % p};
  }
  Fp2 inv(const Fp2& x) const {
    // (a + bt)^-1 = (a - bt) / (a^2 - nqr b^2)
    int64_t norm = (x.a * x.a % p - x.b * x.b % p * nqr % p + p * 2) % p;
    if (norm == 0) throw invariant_violation_error("Fp2 inverse of zero");
    int64_t ninv = mod_inv(norm, p);
    return {x.a * ninv % p, (p - x.b % p) * ninv % p};
  }
};

// Evaluate a reduced form at a point of F_{p^2}^3 using power tables.
Fp2 eval_form(const Fp2Ctx& ctx, const PrimeFieldForm& form,
              const std::array<std::vector<Fp2>, 3>& powers) {
  Fp2 acc;
  for (const auto& [mono, coef] : form.terms) {
    Fp2 t{coef, 0};
    t = ctx.mul(t, powers[0][size_t(mono[Var::x])]);
    t = ctx.mul(t, powers[1][size_t(mono[Var::y])]);
    t = ctx.mul(t, powers[2][size_t(mono[Var::z])]);
    acc = ctx.add(acc, t);
  }
  return acc;
}

std::array<std::vector<Fp2>, 3> power_tables(const Fp2Ctx& ctx,
                                             const std::array<Fp2, 3>& pt,
                                             int m) {
  std::array<std::vector<Fp2>, 3> tables;
  for (size_t i = 0; i < 3; ++i) {
    tables[i].resize(size_t(m) + 1);
    tables[i][0] = {1, 0};
    for (int e = 1; e <= m; ++e)
      tables[i][size_t(e)] = ctx.mul(tables[i][size_t(e - 1)], pt[i]);
  }
  return tables;
}

// Enumerate canonical representatives of P^2(F_{p^e}) and hand each to fn.
template <typename Fn>
void for_each_projective_point(const Fp2Ctx& ctx, int extension, Fn&& fn) {
  const int64_t p = ctx.p;
  std::vector<Fp2> field;
  if (extension == 1) {
    for (int64_t a = 0; a < p; ++a) field.push_back({a, 0});
  } else {
    for (int64_t a = 0; a < p; ++a)
      for (int64_t b = 0; b < p; ++b) field.push_back({a, b});
  }
  const Fp2 one{1, 0}, zero{0, 0};
  for (const Fp2& y : field)
    for (const Fp2& z : field) fn(std::array<Fp2, 3>{one, y, z});
  for (const Fp2& z : field) fn(std::array<Fp2, 3>{zero, one, z});
  fn(std::array<Fp2, 3>{zero, zero, one});
}

}  // namespace

std::optional<FiniteFieldMap> reduce_map(const PlaneEndomorphism& f,
                                         int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("modulus must be prime");
  FiniteFieldMap out;
  out.p = p;
  out.m = f.degree();
  for (size_t i = 0; i < 3; ++i) {
    PrimeFieldForm pf;
    pf.p = p;
    pf.degree = f.degree();
    for (const auto& [mono, coef] : f.component(i).poly().terms()) {
      const Int num = numerator(coef) % p;
      const Int den = denominator(coef) % p;
      if (den == 0) return std::nullopt;
      int64_t n = int64_t(num);
      if (n < 0) n += p;
      const int64_t c = n * mod_inv(int64_t(den), p) % p;
      if (c != 0) pf.terms.emplace_back(mono, c);
    }
    if (pf.terms.empty()) return std::nullopt;  // form collapsed mod p
    out.f[i] = std::move(pf);
  }
  return out;
}

bool good_reduction(const FiniteFieldMap& map) {
  for (int e : {1, 2}) {
    const Fp2Ctx ctx{map.p, find_nonresidue(map.p)};
    bool ok = true;
    for_each_projective_point(ctx, e, [&](const std::array<Fp2, 3>& pt) {
      if (!ok) return;
      const auto tables = power_tables(ctx, pt, map.m);
      if (eval_form(ctx, map.f[0], tables).is_zero() &&
          eval_form(ctx, map.f[1], tables).is_zero() &&
          eval_form(ctx, map.f[2], tables).is_zero())
        ok = false;
    });
    if (!ok) return false;
  }
  return true;
}

size_t point_table_size(int64_t p) { return size_t(p) * size_t(p) + size_t(p) + 1; }

size_t encode_point(int64_t p, int64_t x, int64_t y, int64_t z) {
  // canonical representative: first nonzero coordinate is 1
  if (x == 1) return size_t(y) * size_t(p) + size_t(z);
  if (x == 0 && y == 1) return size_t(p) * size_t(p) + size_t(z);
  if (x == 0 && y == 0 && z == 1) return size_t(p) * size_t(p) + size_t(p);
  throw std::invalid_argument("point is not canonical");
}

std::array<int64_t, 3> decode_point(int64_t p, size_t index) {
  const size_t pp = size_t(p) * size_t(p);
  if (index < pp) return {1, int64_t(index / size_t(p)), int64_t(index % size_t(p))};
  if (index < pp + size_t(p)) return {0, 1, int64_t(index - pp)};
  return {0, 0, 1};
}

FfCensus ff_fiber_census(const FiniteFieldMap& map, int extension,
                         uint64_t& budget) {
  if (extension != 1 && extension != 2)
    throw std::invalid_argument("extension degree must be 1 or 2");
  const Fp2Ctx ctx{map.p, find_nonresidue(map.p)};
  FfCensus census;
  census.p = map.p;
  census.extension = extension;
  census.counts.assign(point_table_size(map.p), 0);

  bool exhausted = false;
  for_each_projective_point(ctx, extension, [&](const std::array<Fp2, 3>& pt) {
    if (exhausted) return;
    if (budget == 0) {
      exhausted = true;
      return;
    }
    --budget;
    const auto tables = power_tables(ctx, pt, map.m);
    std::array<Fp2, 3> img{eval_form(ctx, map.f[0], tables),
                           eval_form(ctx, map.f[1], tables),
                           eval_form(ctx, map.f[2], tables)};
    size_t first = 3;
    for (size_t i = 0; i < 3; ++i)
      if (!img[i].is_zero()) {
        first = i;
        break;
      }
    if (first == 3)
      throw invariant_violation_error("reduced map has a base point");
    const Fp2 inv = ctx.inv(img[first]);
    for (auto& c : img) c = ctx.mul(c, inv);
    for (const auto& c : img)
      if (!c.in_base()) return;  // image outside P^2(F_p)
    ++census.counts[encode_point(map.p, img[0].a, img[1].a, img[2].a)];
  });
  if (exhausted)
    throw budget_exceeded_error("finite-field census ran out of budget");
  return census;
}

std::vector<size_t> census_candidates(const FfCensus& census) {
  std::vector<size_t> out;
  for (size_t i = 0; i < census.counts.size(); ++i)
    if (census.counts[i] == 1) out.push_back(i);
  return out;
}

std::vector<ProjectivePoint> lift_candidates(
    const std::vector<std::pair<int64_t, std::set<size_t>>>& per_prime,
    int height) {
  if (per_prime.size() < 2)
    throw std::invalid_argument("candidate lifting needs at least two primes");
  if (height < 1) throw std::invalid_argument("lift height must be positive");

  std::vector<ProjectivePoint> out;
  for (int a = 0; a <= height; ++a) {
    const int blo = (a == 0) ? 0 : -height;
    for (int b = blo; b <= height; ++b) {
      const int clo = (a == 0 && b == 0) ? 1 : -height;
      for (int c = clo; c <= height; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        if (a == 0 && b == 0 && c != 1) continue;       // canonical: (0,0,1)
        if (a == 0 && b < 0) continue;                  // first nonzero positive
        if (a == 0 && b > 0 && std::gcd(b, std::abs(c)) != 1) continue;
        if (a > 0 && std::gcd(std::gcd(a, std::abs(b)), std::abs(c)) != 1)
          continue;
        bool all = true;
        for (const auto& [p, cand] : per_prime) {
          int64_t xr = a % p, yr = ((b % p) + p) % p, zr = ((c % p) + p) % p;
          if (xr == 0 && yr == 0 && zr == 0) {
            all = false;  // cannot happen for coprime triples
            break;
          }
          // canonicalize mod p
          int64_t lead = xr != 0 ? xr : (yr != 0 ? yr : zr);
          const int64_t inv = mod_inv(lead, p);
          xr = xr * inv % p;
          yr = yr * inv % p;
          zr = zr * inv % p;
          if (!cand.count(encode_point(p, xr, yr, zr))) {
            all = false;
            break;
          }
        }
        if (all) out.push_back(ProjectivePoint(Rat(a), Rat(b), Rat(c)));
      }
    }
  }
  return out;
}

std::vector<int64_t> default_primes(int m, int count) {
  std::vector<int64_t> out;
  int64_t p = 2 * int64_t(m) * m + 1;
  while (int(out.size()) < count) {
    while (!is_prime(p)) ++p;
    out.push_back(p++);
  }
  return out;
}

CrPointsResult completely_ramified_points(const PlaneEndomorphism& f,
                                          std::vector<int64_t> primes,
                                          int height, uint64_t budget) {
  if (primes.empty()) primes = default_primes(f.degree());
  const uint64_t initial_budget = budget;
  CrPointsResult res;
  std::vector<std::pair<int64_t, std::set<size_t>>> per_prime;
  for (int64_t p : primes) {
    auto reduced = reduce_map(f, p);
    if (!reduced || !good_reduction(*reduced)) {
      res.skipped_primes.push_back(p);
      continue;
    }
    FfCensus census = ff_fiber_census(*reduced, 2, budget);
    std::set<size_t> cand;
    std::vector<std::string> names;
    for (size_t idx : census_candidates(census)) {
      cand.insert(idx);
      const auto pt = decode_point(p, idx);
      names.push_back(std::to_string(pt[0]) + ":" + std::to_string(pt[1]) +
                      ":" + std::to_string(pt[2]));
    }
    res.census_candidates.emplace(p, std::move(names));
    per_prime.emplace_back(p, std::move(cand));
  }
  if (per_prime.size() < 2)
    throw std::invalid_argument(
        "fewer than two usable primes for candidate lifting");

  res.lifted = lift_candidates(per_prime, height);
  for (const auto& pt : res.lifted)
    if (fiber(f, pt).status == CrStatus::yes) res.verified.push_back(pt);
  res.evaluations_used = initial_budget - budget;
  return res;
}

// --- the search harness --------------------------------------------------------------

void SearchJob::check() const {
  if (budget == 0) throw std::invalid_argument("budget must be positive");
  if (m < 2 || m > 4)
    throw std::invalid_argument("search families cover 2 <= m <= 4");
  if (coeff_box < 0 || coeff_box > 1)
    throw std::invalid_argument("coefficient box is limited to [-1,1]");
  std::set<int64_t> seen;
  for (int64_t p : primes) {
    if (p <= 2 * int64_t(m) * m)
      throw std::invalid_argument("primes must exceed 2 m^2");
    if (!seen.insert(p).second)
      throw std::invalid_argument("primes must be pairwise distinct");
  }
  if (family == Family::composition && compose_exponents.size() < 2)
    throw std::invalid_argument("composition families need >= 2 exponents");
}

namespace {

// All degree-(m-2) forms with coefficients in [-box, box].
std::vector<Poly> perturbation_forms(int m, int box) {
  std::vector<Monomial> monos;
  const int d = m - 2;
  for (int i = d; i >= 0; --i)
    for (int j = d - i; j >= 0; --j) {
      Monomial mo;
      mo[Var::x] = int16_t(i);
      mo[Var::y] = int16_t(j);
      mo[Var::z] = int16_t(d - i - j);
      monos.push_back(mo);
    }
  std::vector<Poly> out;
  std::vector<int> coef(monos.size(), -box);
  for (;;) {
    Poly g;
    for (size_t i = 0; i < monos.size(); ++i)
      g += Poly::monomial(monos[i], Rat(coef[i]));
    out.push_back(g);
    size_t k = monos.size();
    while (k > 0 && coef[k - 1] == box) coef[--k] = -box;
    if (k == 0) break;
    ++coef[k - 1];
  }
  return out;
}

std::vector<PlaneEndomorphism> enumerate_family(const SearchJob& job) {
  std::vector<PlaneEndomorphism> maps;
  switch (job.family) {
    case SearchJob::Family::power:
      maps.push_back(power_map(job.m));
      break;
    case SearchJob::Family::perturbed_power: {
      const Poly x = Poly::variable(Var::x), y = Poly::variable(Var::y),
                 z = Poly::variable(Var::z);
      for (const Poly& g : perturbation_forms(job.m, job.coeff_box)) {
        const Poly f2 = z.pow(job.m) + x * y * g;
        maps.push_back(PlaneEndomorphism::validate(
            HomogeneousForm(x.pow(job.m)), HomogeneousForm(y.pow(job.m)),
            HomogeneousForm(f2)));
      }
      break;
    }
    case SearchJob::Family::composition: {
      PlaneEndomorphism f = power_map(job.compose_exponents[0]);
      for (size_t i = 1; i < job.compose_exponents.size(); ++i)
        f = power_map(job.compose_exponents[i]).compose_after(f);
      maps.push_back(f);
      break;
    }
  }
  return maps;
}

SearchMapRecord process_map(const PlaneEndomorphism& f, const SearchJob& job,
                            uint64_t& budget) {
  SearchMapRecord rec;
  for (size_t i = 0; i < 3; ++i) rec.map[i] = f.component(i).str();
  CrPointsResult cr;
  try {
    std::vector<int64_t> primes = job.primes;
    if (primes.empty()) primes = default_primes(f.degree());
    cr = completely_ramified_points(f, primes, job.lift_height, budget);
    budget -= cr.evaluations_used;
    rec.evaluations = cr.evaluations_used;
  } catch (const budget_exceeded_error&) {
    throw;
  } catch (const std::exception& e) {
    rec.error = e.what();
    return rec;
  }
  rec.census_candidates = cr.census_candidates;
  rec.skipped_primes = cr.skipped_primes;
  for (const auto& p : cr.verified) rec.verified_points.push_back(p.str());
  rec.discovery = cr.verified.size() > 3;

  // Verified sets must satisfy the nine-point constraints.
  if (cr.verified.size() > 9)
    throw theorem_violation_error("a map verified more than nine completely "
                                  "ramified points");
  const PointConfiguration config(cr.verified);
  const ConstraintReport constraints = configuration_constraints(config);
  rec.constraints_clean =
      constraints.collinear_triples.empty() && constraints.six_on_conic.empty();
  if (!rec.constraints_clean)
    throw theorem_violation_error(
        "verified completely ramified points violate the line/conic "
        "constraints");
  if (cr.verified.size() == 9 &&
      (!constraints.nine_point || !constraints.nine_point->admissible()))
    throw theorem_violation_error(
        "nine verified points lack the unique singular cubic");
  return rec;
}

}  // namespace

SearchReport run_search(const SearchJob& job, int jobs) {
  job.check();
  const auto maps = enumerate_family(job);
  SearchReport report;
  uint64_t budget = job.budget;

  if (jobs <= 1) {
    for (const auto& f : maps) {
      try {
        report.records.push_back(process_map(f, job, budget));
      } catch (const budget_exceeded_error&) {
        report.budget_exhausted = true;
        break;
      }
    }
  } else {
    // Map-level parallelism with a per-map budget share; records are merged
    // in family order so the report is independent of scheduling.
    const uint64_t share = job.budget / maps.size();
    std::vector<std::future<SearchMapRecord>> futures;
    for (const auto& f : maps)
      futures.push_back(std::async(std::launch::async, [&f, &job, share]() {
        uint64_t local = share;
        return process_map(f, job, local);
      }));
    for (auto& fut : futures) {
      try {
        report.records.push_back(fut.get());
      } catch (const budget_exceeded_error&) {
        report.budget_exhausted = true;
      }
    }
  }
  for (const auto& rec : report.records) report.evaluations += rec.evaluations;
  return report;
}

}  // namespace ramplane

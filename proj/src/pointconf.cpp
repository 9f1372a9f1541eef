#include "ramplane/pointconf.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "ramplane/errors.hpp"

namespace ramplane {

namespace {
const std::array<Var, 3> kXYZ{Var::x, Var::y, Var::z};
}

PointConfiguration::PointConfiguration(std::vector<ProjectivePoint> pts)
    : pts_(std::move(pts)) {
  std::set<ProjectivePoint> seen;
  for (const auto& p : pts_)
    if (!seen.insert(p).second)
      throw std::invalid_argument("configuration points must be distinct: " +
                                  p.str());
}

// --- exact linear algebra ------------------------------------------------------

namespace {

// Row echelon over Q with full pivoting by column order; returns rank.
int row_reduce(std::vector<std::vector<Rat>>& m) {
  const size_t rows = m.size();
  if (rows == 0) return 0;
  const size_t cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    const Rat inv = Rat(1) / m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rat factor = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= factor * m[r][j];
    }
    ++r;
  }
  return int(r);
}

int matrix_rank(std::vector<std::vector<Rat>> m) { return row_reduce(m); }

// Basis of the right kernel (column vectors) of m.
std::vector<std::vector<Rat>> kernel_basis(std::vector<std::vector<Rat>> m) {
  if (m.empty()) return {};
  const size_t cols = m[0].size();
  row_reduce(m);
  // Locate pivot columns.
  std::vector<int> pivot_of_col(cols, -1);
  size_t r = 0;
  for (size_t c = 0; c < cols && r < m.size(); ++c) {
    if (m[r][c] != 0) pivot_of_col[c] = int(r++);
  }
  std::vector<std::vector<Rat>> basis;
  for (size_t c = 0; c < cols; ++c) {
    if (pivot_of_col[c] != -1) continue;
    std::vector<Rat> v(cols, 0);
    v[c] = 1;
    for (size_t d = 0; d < cols; ++d)
      if (pivot_of_col[d] != -1) v[d] = -m[size_t(pivot_of_col[d])][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Monomials of total degree d in (x,y,z), grlex order.
std::vector<Monomial> degree_monomials(int d) {
  std::vector<Monomial> out;
  for (int i = d; i >= 0; --i)
    for (int j = d - i; j >= 0; --j) {
      Monomial m;
      m[Var::x] = int16_t(i);
      m[Var::y] = int16_t(j);
      m[Var::z] = int16_t(d - i - j);
      out.push_back(m);
    }
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
    return GrlexGreater()(a, b);
  });
  return out;
}

// Rows imposed by one multiplicity condition: vanishing of all partials of
// order < r of the chart-dehomogenized curve at the point, chart at the
// first nonzero coordinate.
void append_condition_rows(const std::vector<Monomial>& monos,
                           const ProjectivePoint& p, int r,
                           std::vector<std::vector<Rat>>& rows) {
  const int k = p.pivot();
  std::array<Var, 2> rest{};
  size_t ri = 0;
  for (int i = 0; i < 3; ++i)
    if (i != k) rest[ri++] = kXYZ[size_t(i)];
  const Rat pk{p[size_t(k)]};
  const std::map<Var, Rat> at{
      {rest[0], Rat(p[size_t(static_cast<int>(rest[0]))]) / pk},
      {rest[1], Rat(p[size_t(static_cast<int>(rest[1]))]) / pk}};

  for (int i = 0; i < r; ++i)
    for (int j = 0; i + j < r; ++j) {
      std::vector<Rat> row;
      row.reserve(monos.size());
      for (const Monomial& mono : monos) {
        Poly m = Poly::monomial(mono, 1).substitute(kXYZ[size_t(k)],
                                                    Poly(Rat(1)));
        for (int a = 0; a < i; ++a) m = m.derivative(rest[0]);
        for (int b = 0; b < j; ++b) m = m.derivative(rest[1]);
        row.push_back(m.is_zero() ? Rat(0) : m.evaluate(at));
      }
      rows.push_back(std::move(row));
    }
}

std::vector<std::vector<Rat>> evaluation_matrix(
    const PointConfiguration& config, int degree,
    const std::vector<MultiplicityCondition>& conditions) {
  if (degree < 1) throw std::invalid_argument("system degree must be >= 1");
  const auto monos = degree_monomials(degree);
  std::vector<std::vector<Rat>> rows;

  std::set<ProjectivePoint> overridden;
  for (const auto& mc : conditions) {
    if (mc.multiplicity < 1)
      throw std::invalid_argument("multiplicity conditions need r >= 1");
    overridden.insert(mc.point);
    append_condition_rows(monos, mc.point, mc.multiplicity, rows);
  }
  for (const auto& p : config.points())
    if (!overridden.count(p)) append_condition_rows(monos, p, 1, rows);
  if (rows.empty()) rows.emplace_back(monos.size(), Rat(0));
  return rows;
}

}  // namespace

int linear_system_dimension(
    const PointConfiguration& config, int degree,
    const std::vector<MultiplicityCondition>& conditions) {
  const auto rows = evaluation_matrix(config, degree, conditions);
  const int monos = int(rows[0].size());
  const int rank = matrix_rank(rows);
  return (monos - 1) - rank;  // projective dimension; -1 when empty
}

std::vector<Poly> linear_system_basis(
    const PointConfiguration& config, int degree,
    const std::vector<MultiplicityCondition>& conditions) {
  const auto monos = degree_monomials(degree);
  const auto rows = evaluation_matrix(config, degree, conditions);
  std::vector<Poly> out;
  for (const auto& v : kernel_basis(rows)) {
    Poly f;
    for (size_t i = 0; i < monos.size(); ++i)
      f += Poly::monomial(monos[i], v[i]);
    // Clear denominators for a tidy integral representative.
    out.push_back(f.normalized());
  }
  return out;
}

// --- configuration constraints ---------------------------------------------------

namespace {

bool points_on_common_curve(const PointConfiguration& config,
                            const std::vector<int>& subset, int degree) {
  std::vector<ProjectivePoint> pts;
  for (int i : subset) pts.push_back(config.points()[size_t(i)]);
  return linear_system_dimension(PointConfiguration(std::move(pts)), degree) >=
         0;
}

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(static_cast<size_t>(k), 0);
  for (int i = 0; i < k; ++i) idx[size_t(i)] = i;
  for (;;) {
    fn(idx);
    int i = k - 1;
    while (i >= 0 && idx[size_t(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[size_t(i)];
    for (int j = i + 1; j < k; ++j) idx[size_t(j)] = idx[size_t(j - 1)] + 1;
  }
}

}  // namespace

ConstraintReport configuration_constraints(const PointConfiguration& config) {
  const int n = int(config.size());
  if (n > 16)
    throw std::invalid_argument(
        "configuration_constraints handles at most 16 points");
  ConstraintReport rep;
  if (n >= 3) {
    for_each_subset(n, 3, [&](const std::vector<int>& s) {
      // Collinear iff the 3x3 coordinate determinant vanishes.
      std::array<std::array<Rat, 3>, 3> m;
      for (size_t r = 0; r < 3; ++r)
        for (size_t c = 0; c < 3; ++c)
          m[r][c] = Rat(config.points()[size_t(s[r])][c]);
      const Rat det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                      m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                      m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
      if (det == 0) rep.collinear_triples.push_back({s[0], s[1], s[2]});
    });
  }
  if (n >= 6) {
    for_each_subset(n, 6, [&](const std::vector<int>& s) {
      if (points_on_common_curve(config, s, 2)) rep.six_on_conic.push_back(s);
    });
  }
  if (n >= 10) {
    for_each_subset(n, 10, [&](const std::vector<int>& s) {
      if (points_on_common_curve(config, s, 3)) rep.ten_on_cubic.push_back(s);
    });
  }
  if (n == 9) {
    NinePointCubicProfile prof{false, false};
    const int dim = linear_system_dimension(config, 3);
    prof.unique_cubic = (dim == 0);
    if (prof.unique_cubic) {
      const auto basis = linear_system_basis(config, 3);
      if (basis.size() == 1) {
        const Poly& cubic = basis[0];
        for (const auto& p : config.points()) {
          const std::map<Var, Rat> at{{Var::x, Rat(p[0])},
                                      {Var::y, Rat(p[1])},
                                      {Var::z, Rat(p[2])}};
          bool grad_zero = true;
          for (Var v : kXYZ)
            if (cubic.derivative(v).evaluate(at) != 0) grad_zero = false;
          if (grad_zero) {
            prof.singular_at_member = true;
            break;
          }
        }
      }
    }
    rep.nine_point = prof;
  }
  return rep;
}

// --- Cayley-Bacharach style subset search ------------------------------------------

namespace {

struct SubsetSearcher {
  const std::vector<std::vector<Rat>>& rows;
  int need;      // required subset size
  int max_rank;  // evaluation rank must stay <= max_rank
  uint64_t budget;
  uint64_t nodes = 0;
  std::vector<std::vector<Rat>> basis;  // reduced rows of the chosen subset
  std::vector<int> chosen;
  std::optional<std::vector<int>> found;

  // Reduce a row against the basis; true if it is independent.
  static bool reduce(std::vector<Rat> row,
                     const std::vector<std::vector<Rat>>& basis,
                     std::vector<Rat>* out) {
    for (const auto& b : basis) {
      size_t lead = 0;
      while (lead < b.size() && b[lead] == 0) ++lead;
      if (lead == b.size()) continue;
      if (row[lead] != 0) {
        const Rat f = row[lead] / b[lead];
        for (size_t j = lead; j < row.size(); ++j) row[j] -= f * b[j];
      }
    }
    for (const auto& v : row)
      if (v != 0) {
        *out = std::move(row);
        return true;
      }
    return false;
  }

  void dfs(size_t i) {
    if (found) return;
    if (++nodes > budget)
      throw budget_exceeded_error("subset search exceeded its node budget");
    if (int(chosen.size()) >= need) {
      found = chosen;
      return;
    }
    if (chosen.size() + (rows.size() - i) < size_t(need)) return;
    if (i == rows.size()) return;

    // Include point i when the rank stays within bounds.
    std::vector<Rat> reduced;
    const bool indep = reduce(rows[i], basis, &reduced);
    if (!indep || int(basis.size()) + 1 <= max_rank) {
      chosen.push_back(int(i));
      if (indep) basis.push_back(reduced);
      dfs(i + 1);
      if (indep) basis.pop_back();
      chosen.pop_back();
      if (found) return;
    }
    // Skip point i.
    dfs(i + 1);
  }
};

}  // namespace

EpSearchResult ellia_peskine_search(const PointConfiguration& config, int tau,
                                    int s, uint64_t node_budget) {
  const int n = int(config.size());
  if (n > 14)
    throw std::invalid_argument("ellia_peskine_search handles at most 14 points");
  if (s < 1 || tau < 1) throw std::invalid_argument("tau and s must be positive");

  EpSearchResult res;
  res.s_square_le_points = (Int(s) * s <= n);
  // tau > s - 3 + n/s as rationals.
  res.tau_large_enough = Rat(tau) > Rat(s) - 3 + Rat(n, s);
  if (n == 0) {
    res.conditions_dependent = false;
    return res;
  }
  res.conditions_dependent =
      linear_system_dimension(config, tau) > (tau * (tau + 3)) / 2 - n;

  for (int t = 1; t < s && !res.witness; ++t) {
    const int need = t * (tau - t + 3);
    if (need <= 0) continue;
    if (need > n) continue;
    const int max_rank = t * (t + 3) / 2;  // monomial count minus one

    // One evaluation row per point on the degree-t monomials.
    const auto monos = degree_monomials(t);
    std::vector<std::vector<Rat>> rows;
    for (const auto& p : config.points()) {
      std::vector<std::vector<Rat>> one;
      append_condition_rows(monos, p, 1, one);
      rows.push_back(std::move(one[0]));
    }

    SubsetSearcher searcher{rows, need, max_rank, node_budget};
    searcher.dfs(0);
    if (searcher.found) {
      EpWitness w;
      w.t = t;
      w.subset = *searcher.found;
      std::vector<ProjectivePoint> pts;
      for (int i : w.subset) pts.push_back(config.points()[size_t(i)]);
      const auto basis = linear_system_basis(PointConfiguration(pts), t);
      if (basis.empty())
        throw invariant_violation_error(
            "witness subset admits no curve of the claimed degree");
      w.curve = basis.front();
      res.witness = std::move(w);
    }
  }
  return res;
}

}  // namespace ramplane

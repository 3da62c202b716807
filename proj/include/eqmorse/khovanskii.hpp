#pragma once

// Lattice-point bounds for the index of a polynomial field in {Q >= 0}.
// O(d, m) counts integer points of the box 0 <= x_i <= m_i - 1 whose sum s
// satisfies (sum m - d - n)/2 <= s <= (sum m - n)/2. The equivariant version
// takes, for each fixed subspace V, the minimum over coordinate projections
// that are onto V.

#include <algorithm>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eqmorse/burnside.hpp"
#include "eqmorse/error.hpp"
#include "eqmorse/poly.hpp"
#include "eqmorse/symmetry.hpp"

namespace eqmorse {

/// Number of box points per coordinate sum: dist[s] = #{x : sum x = s}.
inline std::vector<long long> box_sum_distribution(const std::vector<int>& ms) {
  std::vector<long long> dist{1};
  for (int m : ms) {
    std::vector<long long> next(dist.size() + static_cast<std::size_t>(m) - 1, 0);
    for (std::size_t s = 0; s < dist.size(); ++s)
      for (int x = 0; x < m; ++x) next[s + static_cast<std::size_t>(x)] += dist[s];
    dist = std::move(next);
  }
  return dist;
}

/// Box points whose sum s satisfies lo2 <= 2s <= hi2.
inline long long count_in_window(const std::vector<int>& ms, long long lo2, long long hi2) {
  long long total = 0;
  auto dist = box_sum_distribution(ms);
  for (std::size_t s = 0; s < dist.size(); ++s) {
    long long two_s = 2 * static_cast<long long>(s);
    if (two_s >= lo2 && two_s <= hi2) total += dist[s];
  }
  return total;
}

inline void validate_bound_params(int d, const std::vector<int>& ms) {
  if (d < 0) throw Error(ErrorKind::InvalidParams, "degree d must be nonnegative");
  for (int m : ms)
    if (m < 1) throw Error(ErrorKind::InvalidParams, "every m_i must be at least 1");
}

inline long long lattice_bound(int d, const std::vector<int>& ms) {
  validate_bound_params(d, ms);
  long long sum_m = 0;
  for (int m : ms) sum_m += m;
  const auto n = static_cast<long long>(ms.size());
  return count_in_window(ms, sum_m - d - n, sum_m - n);
}

struct SubspaceBound {
  long long value = 1;
  std::vector<int> subset;  // chosen coordinates J, 0-based
  int d_V = 0;
};

/// All size-l coordinate subsets in lexicographic order.
inline std::vector<std::vector<int>> coordinate_subsets(int n, int l) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == l) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Minimum of O(d_V, m_J) over subsets J whose coordinate projection maps V
/// onto R^J; ties keep the first J in lexicographic order.
inline SubspaceBound subspace_bound(const Eigen::MatrixXd& basis, int d_v, const std::vector<int>& ms, double rank_tol = 1e-8) {
  validate_bound_params(d_v, ms);
  const auto n = static_cast<int>(basis.rows());
  const auto l = static_cast<int>(basis.cols());
  if (static_cast<int>(ms.size()) != n) throw Error(ErrorKind::InvalidParams, "need one m_i per coordinate");
  SubspaceBound best;
  best.d_V = d_v;
  if (l == 0) return best;
  bool found = false;
  for (const auto& j : coordinate_subsets(n, l)) {
    Eigen::MatrixXd rows(l, l);
    for (int r = 0; r < l; ++r) rows.row(r) = basis.row(j[static_cast<std::size_t>(r)]);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows);
    if (svd.singularValues().minCoeff() <= rank_tol) continue;
    std::vector<int> mj;
    for (int i : j) mj.push_back(ms[static_cast<std::size_t>(i)]);
    long long b = lattice_bound(d_v, mj);
    if (!found || b < best.value) {
      best.value = b;
      best.subset = j;
      found = true;
    }
  }
  if (!found) throw Error(ErrorKind::NoSurjectiveProjection, "no coordinate projection is onto the fixed subspace");
  return best;
}

inline SubspaceBound subspace_bound(const FixedSubspace& v, const Poly& q, const std::vector<int>& ms, double rank_tol = 1e-8,
                                    double degree_rel = 1e-9) {
  return subspace_bound(v.basis, restricted_degree(q, v, degree_rel), ms, rank_tol);
}

/// Component degree bounds: explicit ones if given, else max(1, deg) sorted
/// non-increasing.
inline std::vector<int> resolve_degree_bounds(const VectorField& v) {
  std::vector<int> ms = v.degree_bounds.empty() ? v.inferred_degree_bounds() : v.degree_bounds;
  std::sort(ms.begin(), ms.end(), std::greater<>());
  return ms;
}

struct BoundRow {
  std::string label;
  long long bound = 0;
  long long value = 0;   // ch_H of the index
  long long margin = 0;  // bound - |value|
  std::vector<int> subset_J;
  int d_V = 0;
  bool applicable = true;
  bool holds = true;
};

struct BoundsReport {
  int d = 0;
  std::vector<int> ms;
  bool infinity_passed = true;
  std::string infinity_note;
  std::vector<BoundRow> rows;

  bool passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const BoundRow& r) { return !r.applicable || r.holds; });
  }
};

/// |ch_H(ind)| <= O(V^H; d_V, m) for every class. With `fixed_degree` set,
/// that degree replaces d_V (the ball case uses 2 throughout).
inline BoundsReport verify_bounds(const Symmetry& sym, const CharacterVector& ch, const VectorField& v, const Poly& q,
                                  const std::vector<int>& ms, const Tolerances& tol, int fixed_degree = -1) {
  BoundsReport rep;
  rep.d = q.degree();
  rep.ms = ms;
  InfinityReport inf = infinity_check(v, tol.infinity_common_zero);
  rep.infinity_passed = inf.applicable && inf.passed;
  rep.infinity_note = inf.note;
  for (std::size_t c = 0; c < sym.class_count(); ++c) {
    BoundRow row;
    row.label = sym.table.classes[c].label;
    const int d_v = fixed_degree >= 0 ? fixed_degree : restricted_degree(q, sym.fixed[c], tol.restricted_degree);
    SubspaceBound b = subspace_bound(sym.fixed[c].basis, std::max(d_v, 0), ms, tol.rank);
    row.bound = b.value;
    row.subset_J = b.subset;
    row.d_V = b.d_V;
    row.value = ch.values.at(c);
    row.margin = row.bound - (row.value < 0 ? -row.value : row.value);
    row.applicable = rep.infinity_passed;
    row.holds = row.margin >= 0;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace eqmorse

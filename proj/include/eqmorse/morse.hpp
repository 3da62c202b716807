#pragma once

// The equivariant Morse formula on both sides: the index assembled from local
// degrees at zeros, and the index read off the boundary strata of every fixed
// set X^H. verify_identities runs both and records the named checks.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eqmorse/boundary.hpp"
#include "eqmorse/burnside.hpp"
#include "eqmorse/config.hpp"
#include "eqmorse/error.hpp"
#include "eqmorse/poly.hpp"
#include "eqmorse/strata.hpp"
#include "eqmorse/symmetry.hpp"
#include "eqmorse/zeros.hpp"

namespace eqmorse {

struct Check {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  std::string detail;
};

/// Strata counts of one fixed set X^H.
struct ClassStrata {
  std::string label;
  int order = 0;
  int fixed_dim = 0;
  int chi_X = 0;
  int chi_d1_plus = 0, chi_d1_minus = 0;
  int chi_d2_plus = 0, chi_d2_minus = 0;
  long long strata_sum = 0;  // chi(X^H) - chi(d1+) + chi(d2+)
  long long zero_sum = 0;    // sum of sign det(J on V^H) over zeros fixed by H
  long long ch_index = 0;    // ch_H of the locally assembled index
};

struct MorseAnalysis {
  int dim = 0;
  std::optional<BoundaryTrace> trace;        // n = 2
  std::optional<Stratification> strata;      // n = 2
  std::vector<std::optional<Strata1D>> lines;  // per class with d_H = 1
  std::vector<ZeroPoint> zeros;
  DegreeBalance balance;
  std::vector<ClassStrata> per_class;
  BurnsideElement index_local, index_strata;
  BurnsideElement chi_G_X, chi_G_d1_plus, chi_G_d2_plus;
  std::vector<Check> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

/// Strata of the fixed sets of every subgroup class.
inline std::vector<ClassStrata> class_strata(const VectorField& v, const Domain& dom, const Symmetry& sym, const Tolerances& tol,
                                             const std::optional<Stratification>& planar, std::vector<std::optional<Strata1D>>& lines) {
  std::vector<ClassStrata> rows;
  lines.assign(sym.class_count(), std::nullopt);
  const double q_scale = ball_scale(dom.q, dom.bounding_radius);
  for (std::size_t c = 0; c < sym.class_count(); ++c) {
    ClassStrata row;
    row.label = sym.table.classes[c].label;
    row.order = sym.representative(c).order();
    row.fixed_dim = sym.fixed[c].dim_fixed();
    if (row.fixed_dim == 2) {
      if (!planar) throw Error(ErrorKind::DimensionMismatch, "planar strata missing for a two-dimensional fixed set");
      row.chi_X = planar->chi_X;
      row.chi_d1_plus = planar->chi_d1_plus;
      row.chi_d1_minus = planar->chi_d1_minus;
      row.chi_d2_plus = planar->chi_d2_plus;
      row.chi_d2_minus = planar->chi_d2_minus;
    } else if (row.fixed_dim == 1) {
      lines[c] = strata_1d(v, dom, sym.fixed[c].basis.col(0), tol);
      row.chi_X = lines[c]->chi_X;
      row.chi_d1_plus = lines[c]->chi_d1_plus;
      row.chi_d1_minus = lines[c]->chi_d1_minus;
    } else {
      double q0 = dom.q.eval(Eigen::VectorXd::Zero(dom.dim()));
      if (std::abs(q0) < tol.zero_boundary_margin * q_scale)
        throw Error(ErrorKind::ZeroOnBoundary, "the origin, a fixed point of every element, lies on Q = 0");
      row.chi_X = q0 > 0.0 ? 1 : 0;
    }
    row.strata_sum = row.chi_X - row.chi_d1_plus + row.chi_d2_plus;
    rows.push_back(row);
  }
  return rows;
}

/// Characters -> A(G) for the per-class values chosen by `pick`.
template <class F>
BurnsideElement from_class_values(const std::vector<ClassStrata>& rows, const MarksTable& t, F&& pick) {
  CharacterVector c;
  for (const auto& r : rows) c.values.push_back(pick(r));
  return from_characters(c, t);
}

inline BurnsideElement index_via_strata(const std::vector<ClassStrata>& rows, const MarksTable& t) {
  return from_class_values(rows, t, [](const ClassStrata& r) { return r.strata_sum; });
}

/// Sum of sign det(J restricted to V^H) over zeros whose stabilizer contains H.
inline long long fixed_zero_sum(const std::vector<ZeroPoint>& zeros, const Subgroup& h, const FixedSubspace& fs) {
  long long s = 0;
  for (const auto& z : zeros) {
    if (!h.is_subset_of(z.stabilizer)) continue;
    if (fs.dim_fixed() == 0) {
      s += 1;
      continue;
    }
    Eigen::MatrixXd m = fs.basis.transpose() * z.jacobian * fs.basis;
    s += m.determinant() > 0.0 ? 1 : -1;
  }
  return s;
}

namespace detail {

inline double hausdorff(const std::vector<Eigen::VectorXd>& a, const std::vector<Eigen::VectorXd>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto one_way = [](const auto& p, const auto& q) {
    double worst = 0.0;
    for (const auto& x : p) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& y : q) best = std::min(best, (x - y).norm());
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(one_way(a, b), one_way(b, a));
}

/// Points where the traced boundary crosses the line t u, moved onto Q = 0
/// along the line, with the sign of h = <v, grad Q> there.
inline std::vector<std::pair<Eigen::VectorXd, bool>> boundary_line_crossings(const VectorField& v, const Domain& dom,
                                                                             const BoundaryTrace& trace, const Eigen::VectorXd& u) {
  std::vector<std::pair<Eigen::VectorXd, bool>> out;
  Poly ql = restrict_to_line(dom.q, u);
  Poly dql = ql.derivative(0);
  PolyJet qj(dom.q);
  FieldJet fj(v);
  Eigen::Vector2d w(-u(1), u(0));
  for (const auto& loop : trace.loops) {
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const Eigen::Vector2d& a = loop.points[i];
      const Eigen::Vector2d& b = loop.at(static_cast<long long>(i) + 1);
      double sa = a.dot(w), sb = b.dot(w);
      if ((sa >= 0.0) == (sb >= 0.0)) continue;
      Eigen::Vector2d p = a + (sa / (sa - sb)) * (b - a);
      double t = p.x() * u(0) + p.y() * u(1);
      for (int it = 0; it < 20; ++it) {
        double d = dql.eval(std::span<const double>(&t, 1));
        if (d == 0.0) break;
        double step = ql.eval(std::span<const double>(&t, 1)) / d;
        t -= step;
        if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(t))) break;
      }
      Eigen::VectorXd x = t * u;
      double h = fj.value(x).dot(qj.gradient(x));
      out.emplace_back(x, h > 0.0);
    }
  }
  return out;
}

}  // namespace detail

inline Check check_morse_equality(const MorseAnalysis& a, const MarksTable& t) {
  Check c{"MORSE_EQUALITY", a.index_local == a.index_strata, 0.0, ""};
  c.detail = "local: " + to_string(a.index_local, t) + "; strata: " + to_string(a.index_strata, t);
  for (std::size_t i = 0; i < a.index_local.coefficients.size(); ++i)
    c.residual += std::abs(double(a.index_local.coefficients[i] - a.index_strata.coefficients[i]));
  return c;
}

inline Check check_ch_consistency(const MorseAnalysis& a) {
  Check c{"CH_CONSISTENCY", true, 0.0, ""};
  for (const auto& r : a.per_class) {
    if (r.ch_index != r.zero_sum) {
      c.passed = false;
      c.residual += std::abs(double(r.ch_index - r.zero_sum));
      c.detail += r.label + ": ch " + std::to_string(r.ch_index) + " vs zeros " + std::to_string(r.zero_sum) + "; ";
    }
  }
  if (c.passed) c.detail = "ch_H(ind) matches the fixed-point index sum for every class";
  return c;
}

inline Check check_fixed_strata(const MorseAnalysis& a, const VectorField& v, const Domain& dom, const Symmetry& sym, const Tolerances& tol) {
  Check c{"LEMMA_2_1", true, 0.0, ""};
  const double cut = tol.strata_hausdorff * dom.bounding_radius;
  int lines_checked = 0;
  for (std::size_t k = 0; k < sym.class_count(); ++k) {
    if (!a.lines[k] || !a.trace) continue;
    ++lines_checked;
    const auto& line = *a.lines[k];
    const Eigen::VectorXd& u = line.direction;
    std::vector<Eigen::VectorXd> ends_all, ends_plus, cross_all, cross_plus;
    for (const auto& e : line.endpoints) {
      ends_all.push_back(e.point);
      if (e.inward) ends_plus.push_back(e.point);
    }
    for (const auto& [x, plus] : detail::boundary_line_crossings(v, dom, *a.trace, u)) {
      cross_all.push_back(x);
      if (plus) cross_plus.push_back(x);
    }
    double d = std::max(detail::hausdorff(ends_all, cross_all), detail::hausdorff(ends_plus, cross_plus));
    // Tangencies must avoid the fixed line.
    Eigen::Vector2d w(-u(1), u(0));
    for (const auto& tp : a.strata->tangency_points) {
      if (std::abs(tp.location.dot(w)) <= cut) {
        d = std::numeric_limits<double>::infinity();
        c.detail += "tangency on the fixed line of " + sym.table.classes[k].label + "; ";
      }
    }
    c.residual = std::max(c.residual, d);
    if (!(d <= cut)) {
      c.passed = false;
      char buf[128];
      std::snprintf(buf, sizeof buf, "%s: Hausdorff distance %.3g exceeds %.3g; ", sym.table.classes[k].label.c_str(), d, cut);
      c.detail += buf;
    }
  }
  if (c.passed)
    c.detail = lines_checked ? "fixed-line strata agree with the planar strata on " + std::to_string(lines_checked) + " line(s)"
                             : "no one-dimensional fixed sets";
  return c;
}

inline Check check_divisibility(const MorseAnalysis& a, const Symmetry& sym) {
  Check c{"COROLLARY_2_1", true, 0.0, ""};
  long long count = 0;
  if (a.strata) {
    count = static_cast<long long>(a.strata->tangency_points.size());
  } else {
    for (const auto& l : a.lines)
      if (l) {
        count = static_cast<long long>(l->endpoints.size());
        break;
      }
  }
  const long long g = sym.effective_order();
  const long long divisor = g % 2 == 0 ? g : 2 * g;
  c.passed = count % divisor == 0;
  c.residual = static_cast<double>(count % divisor);
  c.detail = "|d_n X| = " + std::to_string(count) + ", required divisor " + std::to_string(divisor) + " (effective |G| = " +
             std::to_string(g) + ")";
  return c;
}

inline Check check_boundary_identity(const MorseAnalysis& a, const MarksTable& t) {
  BurnsideElement rhs = a.index_local + a.chi_G_d1_plus - a.chi_G_d2_plus;
  Check c{"COROLLARY_3_2", a.chi_G_X == rhs, 0.0, ""};
  for (std::size_t i = 0; i < rhs.coefficients.size(); ++i) c.residual += std::abs(double(a.chi_G_X.coefficients[i] - rhs.coefficients[i]));
  c.detail = "chi_G(X) = " + to_string(a.chi_G_X, t) + "; ind + chi_G(d1+) - chi_G(d2+) = " + to_string(rhs, t);
  return c;
}

inline Check check_zero_completeness(const MorseAnalysis& a) {
  Check c{"ZERO_COMPLETENESS", a.balance.balanced(), std::abs(double(a.balance.boundary_degree - a.balance.index_sum)), ""};
  c.detail = "boundary degree " + std::to_string(a.balance.boundary_degree) + ", sum of zero indices " + std::to_string(a.balance.index_sum);
  return c;
}

/// Refuses inputs whose Q or v is not invariant under the action.
inline void require_invariant(const VectorField& v, const Domain& dom, const Symmetry& sym, const Tolerances& tol) {
  auto rq = check_invariance(sym.rep, sym.group, dom.q, tol.invariance);
  if (!rq.passed) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "Q is not invariant (element %d, residual %.3g)", rq.offending_element, rq.worst_residual);
    throw Error(ErrorKind::NotInvariant, buf);
  }
  auto rv = check_invariance(sym.rep, sym.group, v, tol.invariance);
  if (!rv.passed) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "the field is not equivariant (element %d, residual %.3g)", rv.offending_element, rv.worst_residual);
    throw Error(ErrorKind::NotInvariant, buf);
  }
}

/// Full analysis: strata, zeros, both index routes and every named check.
inline MorseAnalysis verify_identities(const VectorField& v, const Domain& dom, const Symmetry& sym, const Tolerances& tol) {
  const int n = v.dim();
  if (n != dom.dim() || n != sym.dim()) throw Error(ErrorKind::DimensionMismatch, "field, domain and representation dimensions differ");
  if (n < 1 || n > 2) throw Error(ErrorKind::UnsupportedDimension, "stratification implemented for n <= 2");
  certify_compact(dom);
  require_invariant(v, dom, sym, tol);

  MorseAnalysis a;
  a.dim = n;
  if (n == 2) {
    a.trace = trace_boundary(dom, tol);
    a.strata = compute_strata(v, dom, *a.trace, tol);
  }
  a.per_class = class_strata(v, dom, sym, tol, a.strata, a.lines);

  auto balance = [&](const std::vector<ZeroPoint>& zs) {
    if (n == 2) return degree_balance_2d(v, *a.trace, zs, tol.integrality);
    Eigen::VectorXd u = Eigen::VectorXd::Ones(1);
    return degree_balance_1d(strata_1d(v, dom, u, tol), zs);
  };
  a.zeros = find_zeros(v, dom, sym, tol, tol.zero_seed_grid);
  a.balance = balance(a.zeros);
  if (!a.balance.balanced()) {
    a.zeros = find_zeros(v, dom, sym, tol, 4 * tol.zero_seed_grid);
    a.balance = balance(a.zeros);
  }

  a.index_local = assemble_index_local(a.zeros, sym, tol.zero_dedup * dom.bounding_radius);
  a.index_strata = index_via_strata(a.per_class, sym.table);
  CharacterVector ch = ch_map(a.index_local, sym.table);
  for (std::size_t c = 0; c < sym.class_count(); ++c) {
    a.per_class[c].ch_index = ch.values[c];
    a.per_class[c].zero_sum = fixed_zero_sum(a.zeros, sym.representative(c), sym.fixed[c]);
  }
  a.chi_G_X = from_class_values(a.per_class, sym.table, [](const ClassStrata& r) { return r.chi_X; });
  a.chi_G_d1_plus = from_class_values(a.per_class, sym.table, [](const ClassStrata& r) { return r.chi_d1_plus; });
  a.chi_G_d2_plus = from_class_values(a.per_class, sym.table, [](const ClassStrata& r) { return r.chi_d2_plus; });

  a.checks.push_back(check_morse_equality(a, sym.table));
  a.checks.push_back(check_ch_consistency(a));
  a.checks.push_back(check_fixed_strata(a, v, dom, sym, tol));
  a.checks.push_back(check_divisibility(a, sym));
  a.checks.push_back(check_boundary_identity(a, sym.table));
  a.checks.push_back(check_zero_completeness(a));
  return a;
}

}  // namespace eqmorse

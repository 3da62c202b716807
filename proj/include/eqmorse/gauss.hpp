#pragma once

// Degrees of the outward-normal (Gauss) map of X^H for each subgroup class,
// compared with chi(X^H) - ind and with the boundary strata of a nonvanishing
// invariant field; plus the total-curvature integral of planar boundaries.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eqmorse/boundary.hpp"
#include "eqmorse/burnside.hpp"
#include "eqmorse/config.hpp"
#include "eqmorse/error.hpp"
#include "eqmorse/morse.hpp"
#include "eqmorse/poly.hpp"
#include "eqmorse/strata.hpp"
#include "eqmorse/symmetry.hpp"
#include "eqmorse/zeros.hpp"

namespace eqmorse {

/// Sum over loops of the winding number of -grad Q / |grad Q|.
inline int gauss_degree_2d(const BoundaryTrace& trace, const Domain& dom, double integrality = 0.01) {
  PolyJet q(dom.q);
  double total = 0.0;
  for (const auto& loop : trace.loops) {
    double wind = 0.0;
    const std::size_t m = loop.size();
    std::vector<Eigen::Vector2d> nrm(m);
    for (std::size_t i = 0; i < m; ++i) {
      Eigen::VectorXd g = q.gradient(as_dynamic(loop.points[i]));
      nrm[i] = {-g(0), -g(1)};
    }
    for (std::size_t i = 0; i < m; ++i) {
      const auto& a = nrm[i];
      const auto& b = nrm[(i + 1) % m];
      wind += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
    }
    wind /= 2.0 * std::numbers::pi;
    if (std::abs(wind - std::round(wind)) > integrality) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "normal-map winding %.6f of a boundary loop is not an integer", wind);
      throw Error(ErrorKind::NonIntegerWinding, buf);
    }
    total += std::round(wind);
  }
  return static_cast<int>(total);
}

/// Degree on a line: one per right endpoint, i.e. the number of intervals.
inline int gauss_degree_1d(const std::vector<std::pair<double, double>>& intervals) { return static_cast<int>(intervals.size()); }

/// (1/2pi) times the integral of signed curvature along the loops, using the
/// circumscribed-circle curvature at each vertex and trapezoidal arc length.
inline double curvature_integral(const BoundaryTrace& trace) {
  double total = 0.0;
  for (const auto& loop : trace.loops) {
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const auto k = static_cast<long long>(i);
      Eigen::Vector2d a = loop.at(k) - loop.at(k - 1);
      Eigen::Vector2d b = loop.at(k + 1) - loop.at(k);
      Eigen::Vector2d c = loop.at(k + 1) - loop.at(k - 1);
      double denom = a.norm() * b.norm() * c.norm();
      if (denom == 0.0) continue;
      double kappa = 2.0 * (a.x() * b.y() - a.y() * b.x()) / denom;
      total += kappa * 0.5 * (a.norm() + b.norm());
    }
  }
  return total / (2.0 * std::numbers::pi);
}

struct GaussRow {
  std::string label;
  int fixed_dim = 0;
  long long direct_degree = 0;    // winding / interval count
  long long strata_degree = 0;    // chi(d1+) - chi(d2+)
  long long euler_minus_index = 0;  // chi(X^H) - ch_H(ind)
  std::optional<double> curvature;  // d_H = 2 only
  long long curvature_rhs = 0;
  double curvature_residual = 0.0;
};

struct GaussReport {
  std::vector<GaussRow> per_class;
  BurnsideElement deg_G;
  BurnsideElement strata_G;
  std::vector<Check> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

/// Refuses fields with a zero in X_Q: grid screen, boundary points, Newton
/// search, and the origin whenever some subgroup fixes only the origin.
inline void require_nonvanishing(const VectorField& w, const Domain& dom, const Symmetry& sym, const Tolerances& tol,
                                 const std::optional<BoundaryTrace>& trace) {
  const double r = dom.bounding_radius;
  const double floor = tol.nonvanishing_floor * ball_scale(w, r);
  const int n = w.dim();
  const Eigen::VectorXd origin = Eigen::VectorXd::Zero(n);
  if (dom.q.eval(origin) >= 0.0) {
    for (std::size_t c = 0; c < sym.class_count(); ++c)
      if (sym.fixed[c].dim_fixed() == 0)
        throw Error(ErrorKind::FieldVanishes, "class " + sym.table.classes[c].label +
                                                  " fixes only the origin, which lies in X_Q, so every invariant field vanishes there");
  }
  auto test = [&](const Eigen::VectorXd& x) {
    if (w.eval(x).norm() < floor) throw Error(ErrorKind::FieldVanishes, "the field vanishes at " + detail::vec_text(x));
  };
  const int g = tol.nonvanishing_grid;
  for (int j = 0; j < (n == 2 ? g : 1); ++j)
    for (int i = 0; i < g; ++i) {
      Eigen::VectorXd x(n);
      x(0) = -r + (i + 0.5) * 2.0 * r / g;
      if (n == 2) x(1) = -r + (j + 0.5) * 2.0 * r / g;
      if (dom.q.eval(x) >= 0.0) test(x);
    }
  if (trace)
    for (const auto& loop : trace->loops)
      for (const auto& p : loop.points) test(as_dynamic(p));
  auto zeros = find_zeros(w, dom, sym, tol, tol.zero_seed_grid);
  if (!zeros.empty()) throw Error(ErrorKind::FieldVanishes, "the field vanishes at " + detail::vec_text(zeros.front().location));
}

inline GaussReport equivariant_gauss_degree(const VectorField& w, const Domain& dom, const Symmetry& sym, const Tolerances& tol) {
  const int n = w.dim();
  if (n != dom.dim() || n != sym.dim()) throw Error(ErrorKind::DimensionMismatch, "field, domain and representation dimensions differ");
  if (n < 1 || n > 2) throw Error(ErrorKind::UnsupportedDimension, "Gauss degrees implemented for n <= 2");
  certify_compact(dom);
  require_invariant(w, dom, sym, tol);

  std::optional<BoundaryTrace> trace;
  if (n == 2) trace = trace_boundary(dom, tol);
  require_nonvanishing(w, dom, sym, tol, trace);

  // The strata route reuses the full Morse analysis of w.
  MorseAnalysis m = verify_identities(w, dom, sym, tol);
  if (!m.index_local.is_zero())
    throw Error(ErrorKind::FieldVanishes, "the index of the field is nonzero, so it has zeros in X_Q");

  GaussReport rep;
  CharacterVector direct, strata, euler;
  const CharacterVector ind = ch_map(m.index_local, sym.table);
  for (std::size_t c = 0; c < sym.class_count(); ++c) {
    const auto& cs = m.per_class[c];
    GaussRow row;
    row.label = cs.label;
    row.fixed_dim = cs.fixed_dim;
    if (cs.fixed_dim == 2) {
      row.direct_degree = gauss_degree_2d(*m.trace, dom, tol.integrality);
      row.curvature = curvature_integral(*m.trace);
    } else if (cs.fixed_dim == 1) {
      row.direct_degree = gauss_degree_1d(m.lines[c]->intervals);
    }
    row.strata_degree = cs.chi_d1_plus - cs.chi_d2_plus;
    row.euler_minus_index = cs.chi_X - ind.values[c];
    row.curvature_rhs = row.strata_degree;
    if (row.curvature) row.curvature_residual = std::abs(*row.curvature - double(row.curvature_rhs));
    direct.values.push_back(row.direct_degree);
    strata.values.push_back(row.strata_degree);
    euler.values.push_back(row.euler_minus_index);
    rep.per_class.push_back(row);
  }
  rep.deg_G = from_characters(direct, sym.table);
  rep.strata_G = from_characters(strata, sym.table);
  BurnsideElement euler_G = from_characters(euler, sym.table);

  Check agree{"GAUSS_DEGREE", rep.deg_G == rep.strata_G && rep.deg_G == euler_G, 0.0, ""};
  for (std::size_t c = 0; c < direct.values.size(); ++c)
    agree.residual += std::abs(double(direct.values[c] - strata.values[c])) + std::abs(double(direct.values[c] - euler.values[c]));
  agree.detail = "Deg_G = " + to_string(rep.deg_G, sym.table) + "; strata: " + to_string(rep.strata_G, sym.table) +
                 "; chi_G(X) - Ind_G: " + to_string(euler_G, sym.table);
  rep.checks.push_back(agree);

  Check curv{"CURVATURE", true, 0.0, ""};
  for (const auto& row : rep.per_class) {
    if (!row.curvature) continue;
    curv.residual = std::max(curv.residual, row.curvature_residual);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s: %.6f vs %lld; ", row.label.c_str(), *row.curvature, row.curvature_rhs);
    curv.detail += buf;
  }
  curv.passed = curv.residual <= tol.curvature_residual;
  if (curv.detail.empty()) curv.detail = "no planar fixed sets";
  rep.checks.push_back(curv);

  Check euler_check{"GAUSS_EULER", m.chi_G_X == m.index_local + rep.deg_G, 0.0,
                    "chi_G(X) = " + to_string(m.chi_G_X, sym.table) + "; Ind_G + Deg_G = " + to_string(m.index_local + rep.deg_G, sym.table)};
  rep.checks.push_back(euler_check);
  for (const auto& c : m.checks) rep.checks.push_back(c);
  return rep;
}

}  // namespace eqmorse

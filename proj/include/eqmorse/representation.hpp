#pragma once

// Orthogonal actions of a finite permutation group on R^n.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eqmorse/error.hpp"
#include "eqmorse/group.hpp"
#include "eqmorse/poly.hpp"

namespace eqmorse {

struct OrthRep {
  int dim = 0;
  std::vector<Eigen::MatrixXd> matrices;  // one per group element, element order
  double tol = 1e-9;

  const Eigen::MatrixXd& operator()(int element) const { return matrices[static_cast<std::size_t>(element)]; }
  int group_order() const { return static_cast<int>(matrices.size()); }
};

inline double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline Eigen::MatrixXd rotation_matrix(int m) {
  if (m < 1) throw Error(ErrorKind::ValidationError, "rotation order must be >= 1");
  const double t = 2.0 * std::numbers::pi / m;
  Eigen::MatrixXd r(2, 2);
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return r;
}

/// Reflection across the line spanned by (a, b).
inline Eigen::MatrixXd reflection_matrix(double a, double b) {
  const double n = std::hypot(a, b);
  if (n == 0.0) throw Error(ErrorKind::ValidationError, "reflection axis must be nonzero");
  Eigen::Vector2d u(a / n, b / n);
  Eigen::MatrixXd r = 2.0 * u * u.transpose() - Eigen::Matrix2d::Identity();
  return r;
}

/// Matrices for every element by evaluating the breadth-first words of the
/// closure. Verifies orthogonality and the homomorphism property exhaustively.
inline OrthRep build_representation(const FiniteGroup& g, const std::vector<Eigen::MatrixXd>& generator_matrices, int dim,
                                    double tol = 1e-9) {
  if (generator_matrices.size() != g.generators.size())
    throw Error(ErrorKind::ValidationError, "expected " + std::to_string(g.generators.size()) + " generator matrices, got " +
                                                std::to_string(generator_matrices.size()));
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
  for (std::size_t i = 0; i < generator_matrices.size(); ++i) {
    const auto& m = generator_matrices[i];
    if (m.rows() != dim || m.cols() != dim)
      throw Error(ErrorKind::DimensionMismatch, "generator matrix " + std::to_string(i) + " is not " + std::to_string(dim) + "x" + std::to_string(dim));
    double r = max_abs(m.transpose() * m - id);
    if (r > tol) throw Error(ErrorKind::NotOrthogonal, "generator matrix " + std::to_string(i) + " has ||M^T M - I||_max = " + std::to_string(r));
  }

  OrthRep rep;
  rep.dim = dim;
  rep.tol = tol;
  rep.matrices.resize(static_cast<std::size_t>(g.order()));
  rep.matrices[static_cast<std::size_t>(g.identity_index)] = id;
  // words point to earlier elements, so element order is a valid evaluation order
  for (int e = 0; e < g.order(); ++e) {
    int parent = g.word_parent[static_cast<std::size_t>(e)];
    if (parent < 0) continue;
    rep.matrices[static_cast<std::size_t>(e)] =
        generator_matrices[static_cast<std::size_t>(g.word_generator[static_cast<std::size_t>(e)])] * rep.matrices[static_cast<std::size_t>(parent)];
  }

  for (int e = 0; e < g.order(); ++e) {
    double r = max_abs(rep(e).transpose() * rep(e) - id);
    if (r > tol) throw Error(ErrorKind::NotOrthogonal, "element " + std::to_string(e) + " has ||M^T M - I||_max = " + std::to_string(r));
  }
  for (int a = 0; a < g.order(); ++a) {
    for (int b = 0; b < g.order(); ++b) {
      double r = max_abs(rep(g.mul(a, b)) - rep(a) * rep(b));
      if (r > 10.0 * tol) {
        throw Error(ErrorKind::NotAHomomorphism, "M(" + to_cycle_string(g.elements[static_cast<std::size_t>(a)]) + " * " +
                                                     to_cycle_string(g.elements[static_cast<std::size_t>(b)]) + ") differs from the product by " + std::to_string(r));
      }
    }
  }
  return rep;
}

/// Permutation generators for a finite matrix group, from the left-regular
/// action on its own elements. Element order: breadth-first in the generators.
inline std::vector<Permutation> permutations_from_matrices(const std::vector<Eigen::MatrixXd>& gens, int dim, int cap = 64,
                                                          double tol = 1e-6) {
  std::vector<Eigen::MatrixXd> elems{Eigen::MatrixXd::Identity(dim, dim)};
  auto find = [&](const Eigen::MatrixXd& m) -> int {
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (max_abs(elems[i] - m) < tol) return static_cast<int>(i);
    return -1;
  };
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& s : gens) {
      Eigen::MatrixXd c = s * elems[head];
      if (find(c) >= 0) continue;
      if (static_cast<int>(elems.size()) >= cap) throw Error(ErrorKind::ClosureExceedsCap, "matrix group exceeds cap of " + std::to_string(cap));
      elems.push_back(c);
    }
  }
  std::vector<Permutation> out;
  for (const auto& s : gens) {
    Permutation p(elems.size());
    for (std::size_t i = 0; i < elems.size(); ++i) {
      int j = find(s * elems[i]);
      if (j < 0) throw Error(ErrorKind::NotAHomomorphism, "matrix group is not closed within tolerance");
      p[i] = j;
    }
    out.push_back(std::move(p));
  }
  return out;
}

// ---------------------------------------------------------------------------

struct FixedSubspace {
  int class_index = -1;
  Eigen::MatrixXd basis;  // n x d_H, orthonormal columns
  int dim_fixed() const { return static_cast<int>(basis.cols()); }
};

/// Orthonormal basis of (R^n)^H. The basis is canonical: Gram-Schmidt on the
/// projections of the standard basis vectors, first nonzero coordinate positive.
inline FixedSubspace fixed_subspace(const OrthRep& rep, const Subgroup& h, double rank_tol = 1e-8) {
  const int n = rep.dim;
  FixedSubspace fs;
  Eigen::MatrixXd stacked(static_cast<Eigen::Index>(h.member_indices.size()) * n, n);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  for (std::size_t k = 0; k < h.member_indices.size(); ++k)
    stacked.block(static_cast<Eigen::Index>(k) * n, 0, n, n) = rep(h.member_indices[k]) - id;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() ? sv(0) : 0.0;
  Eigen::MatrixXd null_basis;
  if (smax == 0.0) {
    null_basis = id;
  } else {
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > rank_tol * smax) ++rank;
    null_basis = svd.matrixV().rightCols(n - rank);
  }
  const Eigen::MatrixXd proj = null_basis * null_basis.transpose();
  std::vector<Eigen::VectorXd> cols;
  for (int i = 0; i < n && static_cast<Eigen::Index>(cols.size()) < null_basis.cols(); ++i) {
    Eigen::VectorXd w = proj.col(i);
    for (const auto& b : cols) w -= b.dot(w) * b;
    if (w.norm() < 1e-6) continue;
    w.normalize();
    for (int k = 0; k < n; ++k) {
      if (std::abs(w(k)) > 1e-12) {
        if (w(k) < 0) w = -w;
        break;
      }
    }
    cols.push_back(w);
  }
  fs.basis.resize(n, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) fs.basis.col(static_cast<Eigen::Index>(c)) = cols[c];
  return fs;
}

/// {g : ||g x - x|| <= tol * max(1, ||x||)}, verified to be a subgroup.
inline Subgroup stabilizer(const FiniteGroup& g, const OrthRep& rep, const Eigen::VectorXd& x, double tol = 1e-6) {
  const double cut = tol * std::max(1.0, x.norm());
  ElementMask m = 0;
  for (int e = 0; e < g.order(); ++e)
    if ((rep(e) * x - x).norm() <= cut) m |= bit(e);
  if (!is_subgroup_mask(g, m)) throw Error(ErrorKind::StabilizerNotClosed, "points fixed within tolerance do not form a subgroup; the point is too close to a fixed set");
  return Subgroup::from_mask(m);
}

/// Elements acting trivially.
inline Subgroup kernel(const FiniteGroup& g, const OrthRep& rep) {
  ElementMask m = 0;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(rep.dim, rep.dim);
  for (int e = 0; e < g.order(); ++e)
    if (max_abs(rep(e) - id) <= 10.0 * rep.tol) m |= bit(e);
  return Subgroup::from_mask(m);
}

// ---------------------------------------------------------------------------
// Invariance

struct InvarianceReport {
  bool passed = true;
  double worst_residual = 0.0;
  int offending_element = -1;
};

/// g . p := p o rho(g)^{-1}
inline Poly act(const OrthRep& rep, const FiniteGroup& g, int e, const Poly& p) { return compose_linear(p, rep(g.inv(e))); }

/// g . v := rho(g) v(rho(g)^{-1} x)
inline VectorField act(const OrthRep& rep, const FiniteGroup& g, int e, const VectorField& v) {
  std::vector<Poly> pulled;
  for (const auto& c : v.components) pulled.push_back(act(rep, g, e, c));
  VectorField out = v;
  for (int i = 0; i < v.dim(); ++i) {
    Poly s(v.dim());
    for (int j = 0; j < v.dim(); ++j) {
      double a = rep(e)(i, j);
      if (a != 0.0) s += pulled[static_cast<std::size_t>(j)] * a;
    }
    out.components[static_cast<std::size_t>(i)] = s.prune();
  }
  return out;
}

inline InvarianceReport check_invariance(const OrthRep& rep, const FiniteGroup& g, const Poly& q, double rel = 1e-8) {
  InvarianceReport r;
  const double scale = std::max(q.max_abs_coeff(), 1e-300);
  for (int e = 0; e < g.order(); ++e) {
    double res = Poly::max_coeff_diff(compose_linear(q, rep(e)), q) / scale;
    if (res > r.worst_residual) {
      r.worst_residual = res;
      if (res > rel) r.offending_element = e;
    }
  }
  r.passed = r.worst_residual <= rel;
  return r;
}

inline InvarianceReport check_invariance(const OrthRep& rep, const FiniteGroup& g, const VectorField& v, double rel = 1e-8) {
  InvarianceReport r;
  const double scale = std::max(v.max_abs_coeff(), 1e-300);
  for (int e = 0; e < g.order(); ++e) {
    VectorField w = act(rep, g, e, v);
    double res = 0.0;
    for (int i = 0; i < v.dim(); ++i)
      res = std::max(res, Poly::max_coeff_diff(w.components[static_cast<std::size_t>(i)], v.components[static_cast<std::size_t>(i)]) / scale);
    if (res > r.worst_residual) {
      r.worst_residual = res;
      if (res > rel) r.offending_element = e;
    }
  }
  r.passed = r.worst_residual <= rel;
  return r;
}

/// Group average (1/|G|) sum_g g . v, which is invariant.
inline VectorField symmetrize(const OrthRep& rep, const FiniteGroup& g, const VectorField& v) {
  VectorField out = v;
  for (auto& c : out.components) c = Poly(v.dim());
  for (int e = 0; e < g.order(); ++e) {
    VectorField w = act(rep, g, e, v);
    for (int i = 0; i < v.dim(); ++i) out.components[static_cast<std::size_t>(i)] += w.components[static_cast<std::size_t>(i)];
  }
  for (auto& c : out.components) c = (c * (1.0 / g.order())).prune();
  return out;
}

inline int restricted_degree(const Poly& q, const FixedSubspace& v, double rel = 1e-9) { return restricted_degree(q, v.basis, rel); }

}  // namespace eqmorse

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "eqmorse/burnside.hpp"
#include "eqmorse/group.hpp"
#include "eqmorse/representation.hpp"

namespace eqmorse {

/// A finite group acting orthogonally on R^n, with its subgroup classes,
/// table of marks and one fixed subspace per class representative.
struct Symmetry {
  FiniteGroup group;
  MarksTable table;
  OrthRep rep;
  std::vector<FixedSubspace> fixed;

  int dim() const { return rep.dim; }
  std::size_t class_count() const { return table.size(); }
  const Subgroup& representative(std::size_t cls) const { return table.classes[cls].representative; }

  /// |G| / |kernel of the action|.
  int effective_order() const { return group.order() / kernel(group, rep).order(); }
};

inline Symmetry make_symmetry(FiniteGroup g, OrthRep rep, double rank_tol = 1e-8) {
  Symmetry s;
  s.group = std::move(g);
  s.rep = std::move(rep);
  s.table = marks_table(s.group);
  for (std::size_t c = 0; c < s.table.size(); ++c) {
    FixedSubspace fs = fixed_subspace(s.rep, s.table.classes[c].representative, rank_tol);
    fs.class_index = static_cast<int>(c);
    s.fixed.push_back(std::move(fs));
  }
  return s;
}

inline Symmetry make_symmetry(const std::vector<Permutation>& generators, const std::vector<Eigen::MatrixXd>& matrices, int dim,
                              double orth_tol = 1e-9, int cap = 64) {
  FiniteGroup g = group_closure(generators, cap);
  OrthRep rep = build_representation(g, matrices, dim, orth_tol);
  return make_symmetry(std::move(g), std::move(rep));
}

inline Symmetry trivial_symmetry(int dim) { return make_symmetry({}, {}, dim); }

}  // namespace eqmorse

#pragma once

// Groups, representations and the scenario fields shared by the test suites.

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eqmorse/eqmorse.hpp"

namespace eqtest {

using namespace eqmorse;

struct GroupCase {
  std::string name;
  std::vector<std::string> cycles;
  std::vector<Eigen::MatrixXd> matrices;  // a faithful planar action
  int order;
  int classes;  // conjugacy classes of subgroups
};

inline Eigen::MatrixXd diag2(double a, double b) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

inline std::vector<GroupCase> small_groups() {
  return {
      {"Z2", {"(0 1)"}, {diag2(1, -1)}, 2, 2},
      {"Z3", {"(0 1 2)"}, {rotation_matrix(3)}, 3, 2},
      {"Z4", {"(0 1 2 3)"}, {rotation_matrix(4)}, 4, 3},
      {"Z2xZ2", {"(0 1)", "(2 3)"}, {diag2(-1, 1), diag2(1, -1)}, 4, 5},
      {"S3", {"(0 1 2)", "(1 2)"}, {rotation_matrix(3), reflection_matrix(1, 0)}, 6, 4},
      {"D4", {"(0 1 2 3)", "(1 3)"}, {rotation_matrix(4), reflection_matrix(1, 0)}, 8, 8},
  };
}

inline std::vector<Permutation> perms(const std::vector<std::string>& cycles) {
  std::vector<Permutation> out;
  for (const auto& c : cycles) out.push_back(parse_cycles(c));
  return out;
}

inline FiniteGroup group_of(const GroupCase& g) { return group_closure(perms(g.cycles)); }

inline Symmetry symmetry_of(const GroupCase& g) { return make_symmetry(perms(g.cycles), g.matrices, 2); }

inline VectorField field(const std::vector<std::string>& comps) {
  std::vector<Poly> ps;
  for (const auto& c : comps) ps.push_back(parse_poly(c, static_cast<int>(comps.size())));
  return VectorField::from_components(std::move(ps));
}

inline Domain domain(const std::string& q, double radius, int n = 2) { return Domain{parse_poly(q, n), radius}; }

inline Domain unit_disk() { return domain("1 - x^2 - y^2", 1.5); }
inline Domain annulus() { return domain("-(x^2 + y^2 - 1/4)*(x^2 + y^2 - 4)", 2.5); }

inline Symmetry z2_flip() { return make_symmetry({parse_cycles("(0 1)")}, {diag2(1, -1)}, 2); }
inline Symmetry z3_rotation() { return make_symmetry({parse_cycles("(0 1 2)")}, {rotation_matrix(3)}, 2); }
inline Symmetry s3_planar() { return symmetry_of(small_groups()[4]); }

/// Scenario with the Burnside element written as {label: coefficient}.
struct Scenario {
  std::string name;
  Symmetry sym;
  VectorField v;
  Domain dom;
  std::map<std::string, long long> expected;
};

inline std::vector<Scenario> morse_scenarios() {
  return {
      {"z2_saddle", z2_flip(), field({"x", "-y"}), unit_disk(), {{"H2_0", 1}, {"H1_0", -1}}},
      {"z3_sink", z3_rotation(), field({"-x", "-y"}), unit_disk(), {{"H3_0", 1}}},
      {"trivial_constant", trivial_symmetry(2), field({"1", "0"}), unit_disk(), {}},
      {"z2_annulus", z2_flip(), field({"1", "0"}), annulus(), {}},
  };
}

inline std::string problem_text(const std::string& body) { return "{\"schema\": 1, " + body + "}"; }

}  // namespace eqtest

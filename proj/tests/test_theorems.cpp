// Morse identities, lattice-point bounds and Gauss-map degrees.

#include <gtest/gtest.h>

#include <functional>

#include "support.hpp"

using namespace eqtest;

namespace {

// Points of the box prod [0, m_i - 1] with 2s in [sum m - d - n, sum m - n].
long long brute_lattice(int d, const std::vector<int>& ms) {
  const int n = static_cast<int>(ms.size());
  int sum_m = 0;
  for (int m : ms) sum_m += m;
  std::vector<int> x(ms.size(), 0);
  long long count = 0;
  for (;;) {
    int s = 0;
    for (int xi : x) s += xi;
    if (2 * s >= sum_m - d - n && 2 * s <= sum_m - n) ++count;
    std::size_t i = 0;
    while (i < x.size() && ++x[i] == ms[i]) x[i++] = 0;
    if (i == x.size()) break;
  }
  return count;
}

void partitions(int max_sum, int max_part, std::vector<int>& cur, const std::function<void(const std::vector<int>&)>& f) {
  if (!cur.empty()) f(cur);
  for (int p = std::min(max_part, max_sum); p >= 1; --p) {
    cur.push_back(p);
    partitions(max_sum - p, p, cur, f);
    cur.pop_back();
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// morse

TEST(Morse, ScenarioIndicesAgreeOnBothRoutes) {
  Tolerances tol;
  for (const auto& sc : morse_scenarios()) {
    auto a = verify_identities(sc.v, sc.dom, sc.sym, tol);
    EXPECT_EQ(labelled(a.index_local, sc.sym.table), sc.expected) << sc.name;
    EXPECT_EQ(a.index_local, a.index_strata) << sc.name;
    for (const auto& c : a.checks) EXPECT_TRUE(c.passed) << sc.name << " " << c.name << ": " << c.detail;
  }
}

TEST(Morse, SaddleTangencyCountIsDivisible) {
  Tolerances tol;
  auto sc = morse_scenarios()[0];
  auto a = verify_identities(sc.v, sc.dom, sc.sym, tol);
  EXPECT_EQ(a.strata->tangency_points.size(), 4u);
  EXPECT_EQ(a.strata->tangency_points.size() % (2 * 2), 0u);
}

TEST(Morse, FreeOrbitOfZeros) {
  // Antipodal Z2; the zeros (+-1/2, 0) form one free orbit, the origin is fixed.
  Symmetry anti = make_symmetry({parse_cycles("(0 1)")}, {diag2(-1, -1)}, 2);
  Tolerances tol;
  auto a = verify_identities(field({"x^3 - x/4", "y"}), unit_disk(), anti, tol);
  ASSERT_EQ(a.zeros.size(), 3u);
  int free_zeros = 0;
  for (const auto& z : a.zeros) free_zeros += z.stabilizer.order() == 1;
  EXPECT_EQ(free_zeros, 2);
  EXPECT_EQ(labelled(a.index_local, anti.table), (std::map<std::string, long long>{{"H2_0", 1}}));
  EXPECT_EQ(a.index_local, a.index_strata);
  EXPECT_TRUE(a.passed());
}

TEST(Morse, DihedralCubic) {
  Tolerances tol;
  Symmetry s = s3_planar();
  auto a = verify_identities(field({"x^2 - y^2 - x/2", "-2*x*y - y/2"}), unit_disk(), s, tol);
  EXPECT_EQ(labelled(a.index_local, s.table), (std::map<std::string, long long>{{"H2_0", -1}, {"H6_0", 1}}));
  EXPECT_EQ(ch_map(a.index_local, s.table).values, (std::vector<long long>{-2, 0, 1, 1}));
  EXPECT_TRUE(a.passed());
}

TEST(Morse, OneDimensionalProblem) {
  Tolerances tol;
  Symmetry s = make_symmetry({parse_cycles("(0 1)")}, {Eigen::MatrixXd::Constant(1, 1, -1.0)}, 1);
  // x^3 - x/4 on [-1, 1]: zeros -1/2, 0, 1/2 with signs +, -, +
  auto a = verify_identities(field({"x^3 - x/4"}), domain("1 - x^2", 1.5, 1), s, tol);
  EXPECT_EQ(a.zeros.size(), 3u);
  EXPECT_EQ(labelled(a.index_local, s.table), (std::map<std::string, long long>{{"H2_0", 1}}));
  EXPECT_TRUE(a.passed());
}

TEST(Morse, RefusesNonInvariantFields) {
  Tolerances tol;
  try {
    verify_identities(field({"x", "1 + y"}), unit_disk(), z2_flip(), tol);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotInvariant);
    EXPECT_FALSE(e.hypothesis().empty());
  }
}

// ---------------------------------------------------------------------------
// khovanskii

TEST(Khovanskii, SmallValues) {
  EXPECT_EQ(lattice_bound(2, {2}), 1);
  EXPECT_EQ(lattice_bound(2, {2, 2}), 3);
  EXPECT_EQ(lattice_bound(0, {1, 1, 1}), 1);
  EXPECT_EQ(lattice_bound(2, {1, 1}), 1);
  EXPECT_THROW(lattice_bound(-1, {1}), Error);
  EXPECT_THROW(lattice_bound(2, {0, 1}), Error);
}

TEST(Khovanskii, MatchesBoxEnumeration) {
  std::vector<int> cur;
  int cases = 0;
  partitions(14, 14, cur, [&](const std::vector<int>& ms) {
    for (int d = 0; d <= 6; ++d) {
      ASSERT_EQ(lattice_bound(d, ms), brute_lattice(d, ms));
      ++cases;
    }
  });
  EXPECT_GT(cases, 1000);
}

TEST(Khovanskii, BoundIsOrderInsensitive) {
  EXPECT_EQ(lattice_bound(3, {4, 2, 1}), lattice_bound(3, {1, 4, 2}));
  EXPECT_EQ(lattice_bound(3, {4, 2, 1}), lattice_bound(3, {2, 1, 4}));
}

TEST(Khovanskii, SubspaceProjections) {
  Eigen::MatrixXd xaxis(2, 1);
  xaxis << 1, 0;
  auto b = subspace_bound(xaxis, 2, {3, 2});
  EXPECT_EQ(b.value, lattice_bound(2, {3}));
  EXPECT_EQ(b.subset, (std::vector<int>{0}));
  Eigen::MatrixXd diag(2, 1);
  diag << std::sqrt(0.5), std::sqrt(0.5);
  auto c = subspace_bound(diag, 2, {3, 2});
  EXPECT_EQ(c.value, std::min(lattice_bound(2, {3}), lattice_bound(2, {2})));
  EXPECT_EQ(c.subset, (std::vector<int>{1}));
  Eigen::MatrixXd yaxis(2, 1);
  yaxis << 0, 1;
  EXPECT_EQ(subspace_bound(yaxis, 2, {3, 2}).subset, (std::vector<int>{1}));
}

TEST(Khovanskii, ScenarioBoundsHold) {
  Tolerances tol;
  for (int i : {0, 1}) {
    auto sc = morse_scenarios()[static_cast<std::size_t>(i)];
    auto a = verify_identities(sc.v, sc.dom, sc.sym, tol);
    auto rep = verify_bounds(sc.sym, ch_map(a.index_local, sc.sym.table), sc.v, sc.dom.q, {1, 1}, tol);
    EXPECT_TRUE(rep.infinity_passed);
    EXPECT_TRUE(rep.passed()) << sc.name;
    for (const auto& row : rep.rows) EXPECT_LE(std::abs(row.value), row.bound);
  }
}

TEST(Khovanskii, BallCaseUsesDegreeTwo) {
  // On a round ball the bound for a linear field is O(2; 1, ..., 1) = 1 on
  // every fixed subspace.
  Tolerances tol;
  for (double r2 : {0.25, 1.0, 4.0}) {
    Domain d{parse_poly(std::to_string(r2) + " - x^2 - y^2", 2), 1.5 * std::sqrt(r2) + 0.5};
    auto sc = morse_scenarios()[0];
    auto a = verify_identities(sc.v, d, sc.sym, tol);
    auto rep = verify_bounds(sc.sym, ch_map(a.index_local, sc.sym.table), sc.v, d.q, {1, 1}, tol, 2);
    for (const auto& row : rep.rows) {
      EXPECT_EQ(row.d_V, 2);
      EXPECT_EQ(row.bound, 1);
      EXPECT_TRUE(row.holds);
    }
  }
}

// ---------------------------------------------------------------------------
// gauss

TEST(Gauss, DiskDegreeAndCurvature) {
  Tolerances tol;
  auto g = equivariant_gauss_degree(field({"1", "0"}), unit_disk(), z2_flip(), tol);
  EXPECT_TRUE(g.passed());
  ASSERT_TRUE(g.per_class[0].curvature.has_value());
  EXPECT_NEAR(*g.per_class[0].curvature, 1.0, 1e-3);
  EXPECT_EQ(g.per_class[0].direct_degree, 1);
  EXPECT_EQ(g.per_class[1].direct_degree, 1);
}

TEST(Gauss, AnnulusIsFieldIndependent) {
  Tolerances tol;
  auto a = equivariant_gauss_degree(field({"1", "0"}), annulus(), z2_flip(), tol);
  auto b = equivariant_gauss_degree(field({"3 + x + y^2", "y/2"}), annulus(), z2_flip(), tol);
  EXPECT_TRUE(a.passed());
  EXPECT_TRUE(b.passed());
  EXPECT_EQ(a.deg_G, b.deg_G);
  EXPECT_NEAR(*a.per_class[0].curvature, 0.0, 1e-3);
}

TEST(Gauss, CurvatureOfAnEllipse) {
  Tolerances tol;
  auto tr = trace_boundary(domain("1 - x^2/4 - y^2", 2.5), tol);
  EXPECT_NEAR(curvature_integral(tr), 1.0, 1e-3);
}

TEST(Gauss, ForcedZeroIsRefused) {
  Tolerances tol;
  try {
    equivariant_gauss_degree(field({"-x", "-y"}), unit_disk(), z3_rotation(), tol);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::FieldVanishes);
  }
}

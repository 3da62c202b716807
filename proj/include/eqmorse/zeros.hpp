#pragma once

// Zeros of an equivariant field inside X_Q and their local equivariant
// degrees. Zeros are located by Newton's method from a seed grid plus seeds on
// every fixed line, then closed under the group action.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "eqmorse/boundary.hpp"
#include "eqmorse/burnside.hpp"
#include "eqmorse/config.hpp"
#include "eqmorse/error.hpp"
#include "eqmorse/poly.hpp"
#include "eqmorse/strata.hpp"
#include "eqmorse/symmetry.hpp"

namespace eqmorse {

struct ZeroPoint {
  Eigen::VectorXd location;
  Eigen::MatrixXd jacobian;
  int sign = 0;                 // sign det J
  Subgroup stabilizer;          // G_x as a subgroup of G
  int stabilizer_class = -1;    // class of G_x in G

  // local equivariant degree, an element of A(G_x)
  EmbeddedGroup local_group;
  MarksTable local_table;
  CharacterVector local_characters;
  BurnsideElement local_degree;
};

inline constexpr double kSmaleAlpha0 = 0.1576;  // (13 - 3 sqrt 17) / 4, rounded down

namespace detail {

inline std::optional<Eigen::VectorXd> newton_zero(const FieldJet& v, Eigen::VectorXd x, double radius, double v_scale, double residual) {
  for (int it = 0; it < 60; ++it) {
    Eigen::VectorXd f = v.value(x);
    if (f.norm() <= 1e-3 * residual * v_scale) break;
    Eigen::MatrixXd j = v.jacobian(x);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(j);
    if (!lu.isInvertible()) return std::nullopt;
    Eigen::VectorXd step = lu.solve(f);
    x -= step;
    if (!(x.norm() <= 4.0 * radius)) return std::nullopt;
    if (step.norm() <= 1e-15 * std::max(1.0, x.norm())) break;
  }
  if (!(v.value(x).norm() <= residual * v_scale)) return std::nullopt;
  return x;
}

inline std::optional<double> newton_1d(const Poly& f, const Poly& df, double t, double radius) {
  for (int it = 0; it < 60; ++it) {
    double y = f.eval(std::span<const double>(&t, 1));
    double d = df.eval(std::span<const double>(&t, 1));
    if (d == 0.0) return std::nullopt;
    double step = y / d;
    t -= step;
    if (!(std::abs(t) <= 4.0 * radius)) return std::nullopt;
    if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(t))) break;
  }
  return t;
}

/// Smale's alpha for a polynomial system at x: beta * gamma with
/// beta = |J^-1 v(x)| and gamma = max_k (|J^-1| |D^k v(x)| / k!)^(1/(k-1)).
/// Below alpha_0 ~ 0.1577 Newton converges quadratically to a simple zero
/// within 2 beta of x. Infinite when J is singular.
inline double smale_alpha(const VectorField& v, const Eigen::VectorXd& x) {
  const int n = v.dim();
  Eigen::MatrixXd j(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) j(i, k) = v.components[static_cast<std::size_t>(i)].derivative(k).eval(x);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(j, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double smin = svd.singularValues()(n - 1);
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  const double jinv = 1.0 / smin;
  const double beta = (svd.solve(v.eval(x))).norm();
  int deg = 0;
  for (const auto& c : v.components) deg = std::max(deg, c.degree());
  double gamma = 0.0;
  double fact = 1.0;
  for (int k = 2; k <= deg; ++k) {
    fact *= k;
    // Frobenius norm of the symmetric k-tensor bounds its operator norm.
    double frob2 = 0.0;
    for (const auto& comp : v.components) {
      for (int a = 0; a <= (n == 2 ? k : 0); ++a) {
        Poly d = comp;
        for (int t = 0; t < (n == 2 ? a : k); ++t) d = d.derivative(0);
        if (n == 2)
          for (int t = 0; t < k - a; ++t) d = d.derivative(1);
        double val = d.eval(x);
        double multiplicity = 1.0;
        if (n == 2) multiplicity = std::tgamma(k + 1.0) / (std::tgamma(a + 1.0) * std::tgamma(k - a + 1.0));
        frob2 += multiplicity * val * val;
      }
    }
    gamma = std::max(gamma, std::pow(jinv * std::sqrt(frob2) / fact, 1.0 / (k - 1)));
  }
  return beta * gamma;
}

inline std::string vec_text(const Eigen::VectorXd& x) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%.6g", i ? ", " : "", x(i));
    s += buf;
  }
  return s + ")";
}

}  // namespace detail

/// Local equivariant degree of a zero: for each subgroup class K of G_x the
/// sign of det(J restricted to the K-fixed subspace), then back-solved in A(G_x).
inline void attach_local_degree(ZeroPoint& z, const Symmetry& sym, double det_floor) {
  z.local_group = embed_subgroup(sym.group, z.stabilizer);
  z.local_table = marks_table(z.local_group.group);
  z.local_characters.values.assign(z.local_table.size(), 0);
  for (std::size_t c = 0; c < z.local_table.size(); ++c) {
    Subgroup k = Subgroup::from_mask(z.local_group.parent_mask(z.local_table.classes[c].representative.mask));
    FixedSubspace fs = fixed_subspace(sym.rep, k);
    const int d = fs.dim_fixed();
    long long s = 1;
    if (d > 0) {
      Eigen::MatrixXd m = fs.basis.transpose() * z.jacobian * fs.basis;
      double det = m.determinant();
      if (std::abs(det) < std::pow(det_floor, d)) {
        throw Error(ErrorKind::RestrictedDegenerate,
                    "the Jacobian restricted to a fixed subspace is singular at the zero " + detail::vec_text(z.location));
      }
      s = det > 0.0 ? 1 : -1;
    }
    z.local_characters.values[c] = s;
  }
  z.local_degree = from_characters(z.local_characters, z.local_table);
}

inline std::vector<ZeroPoint> find_zeros(const VectorField& v, const Domain& dom, const Symmetry& sym, const Tolerances& tol,
                                         int seed_grid) {
  const int n = v.dim();
  if (n != dom.dim() || n != sym.dim()) throw Error(ErrorKind::DimensionMismatch, "field, domain and representation dimensions differ");
  if (n > 2) throw Error(ErrorKind::UnsupportedDimension, "zero search implemented for n <= 2");
  const double r = dom.bounding_radius;
  const double v_scale = ball_scale(v, r);
  const double q_scale = ball_scale(dom.q, r);
  FieldJet fj(v);

  std::vector<Eigen::VectorXd> found;
  auto add = [&](const Eigen::VectorXd& x) {
    for (const auto& y : found)
      if ((x - y).norm() <= tol.zero_dedup * r) return false;
    found.push_back(x);
    return true;
  };
  auto try_seed = [&](const Eigen::VectorXd& x0) {
    if (auto x = detail::newton_zero(fj, x0, r, v_scale, tol.zero_residual)) add(*x);
  };

  if (n == 2) {
    const double h = 2.0 * r / seed_grid;
    for (int j = 0; j < seed_grid; ++j)
      for (int i = 0; i < seed_grid; ++i) {
        Eigen::VectorXd x(2);
        x << -r + (i + 0.5) * h, -r + (j + 0.5) * h;
        try_seed(x);
      }
  }
  for (std::size_t c = 0; c < sym.class_count(); ++c) {
    const auto& fs = sym.fixed[c];
    if (fs.dim_fixed() == 0) try_seed(Eigen::VectorXd::Zero(n));
    if (fs.dim_fixed() != 1) continue;
    Eigen::VectorXd u = fs.basis.col(0);
    Poly f = restrict_to_line(v, u);
    Poly df = f.derivative(0);
    const int seeds = tol.zero_seeds_per_line + (n == 1 ? seed_grid : 0);
    for (int k = 0; k < seeds; ++k) {
      double t0 = -r + (k + 0.5) * 2.0 * r / seeds;
      if (auto t = detail::newton_1d(f, df, t0, r)) try_seed(*t * u);
    }
  }

  // Close the set under the group action.
  for (std::size_t i = 0; i < found.size(); ++i)
    for (int e = 0; e < sym.group.order(); ++e) {
      Eigen::VectorXd y = sym.rep(e) * found[i];
      bool known = std::any_of(found.begin(), found.end(), [&](const Eigen::VectorXd& w) { return (w - y).norm() <= tol.zero_dedup * r; });
      if (!known) {
        if (auto x = detail::newton_zero(fj, y, r, v_scale, tol.zero_residual)) add(*x);
      }
    }

  const double det_floor = tol.simple_zero_floor * v_scale / r;
  std::vector<ZeroPoint> zeros;
  for (const auto& x : found) {
    double q = dom.q.eval(x);
    if (std::abs(q) < tol.zero_boundary_margin * q_scale)
      throw Error(ErrorKind::ZeroOnBoundary, "the field has a zero on Q = 0 at " + detail::vec_text(x));
    if (q < 0.0) continue;
    ZeroPoint z;
    z.location = x;
    z.jacobian = fj.jacobian(x);
    double det = z.jacobian.determinant();
    if (std::abs(det) < std::pow(det_floor, n))
      throw Error(ErrorKind::DegenerateZero, "the zero at " + detail::vec_text(x) + " is not simple");
    if (double alpha = detail::smale_alpha(v, x); !(alpha < kSmaleAlpha0))
      throw Error(ErrorKind::DegenerateZero, "the zero near " + detail::vec_text(x) + " cannot be certified simple (alpha = " +
                                                 std::to_string(alpha) + ")");
    z.sign = det > 0.0 ? 1 : -1;
    z.stabilizer = stabilizer(sym.group, sym.rep, x, tol.stabilizer);
    z.stabilizer_class = sym.table.class_of(z.stabilizer.mask);
    attach_local_degree(z, sym, det_floor);
    zeros.push_back(std::move(z));
  }
  auto key = [](const Eigen::VectorXd& x) {
    std::vector<long long> k;
    for (Eigen::Index i = 0; i < x.size(); ++i) k.push_back(std::llround(x(i) * 1e8));
    return k;
  };
  std::sort(zeros.begin(), zeros.end(), [&](const ZeroPoint& a, const ZeroPoint& b) { return key(a.location) < key(b.location); });
  return zeros;
}

// ---------------------------------------------------------------------------
// Completeness: the boundary degree of v must equal the sum of zero indices.

struct DegreeBalance {
  int boundary_degree = 0;
  int index_sum = 0;
  double boundary_winding = 0.0;
  bool balanced() const { return boundary_degree == index_sum; }
};

/// Winding number of v along the oriented boundary loops.
inline double boundary_winding(const VectorField& v, const BoundaryTrace& trace) {
  FieldJet fj(v);
  double total = 0.0;
  for (const auto& loop : trace.loops) {
    const std::size_t m = loop.size();
    std::vector<Eigen::Vector2d> f(m);
    for (std::size_t i = 0; i < m; ++i) {
      Eigen::VectorXd y = fj.value(as_dynamic(loop.points[i]));
      f[i] = {y(0), y(1)};
    }
    for (std::size_t i = 0; i < m; ++i) {
      const auto& a = f[i];
      const auto& b = f[(i + 1) % m];
      total += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
    }
  }
  return total / (2.0 * std::numbers::pi);
}

inline DegreeBalance degree_balance_2d(const VectorField& v, const BoundaryTrace& trace, const std::vector<ZeroPoint>& zeros,
                                       double integrality) {
  DegreeBalance b;
  b.boundary_winding = boundary_winding(v, trace);
  if (std::abs(b.boundary_winding - std::round(b.boundary_winding)) > integrality) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "winding number %.6f of the field along the boundary is not an integer", b.boundary_winding);
    throw Error(ErrorKind::NonIntegerWinding, buf);
  }
  b.boundary_degree = static_cast<int>(std::lround(b.boundary_winding));
  for (const auto& z : zeros) b.index_sum += z.sign;
  return b;
}

/// On a line: sum over intervals of (sgn f(b) - sgn f(a)) / 2.
inline DegreeBalance degree_balance_1d(const Strata1D& s, const std::vector<ZeroPoint>& zeros) {
  DegreeBalance b;
  int twice = 0;
  for (const auto& e : s.endpoints) twice += (e.left ? -1 : 1) * (e.f > 0.0 ? 1 : -1);
  b.boundary_degree = twice / 2;
  b.boundary_winding = twice / 2.0;
  for (const auto& z : zeros) b.index_sum += z.sign;
  return b;
}

// ---------------------------------------------------------------------------
// Assembly of the index from local degrees

struct ZeroOrbit {
  std::vector<std::size_t> members;  // indices into the zero list
  std::size_t representative = 0;
};

inline std::vector<ZeroOrbit> zero_orbits(const std::vector<ZeroPoint>& zeros, const Symmetry& sym, double dedup) {
  std::vector<ZeroOrbit> out;
  std::vector<char> used(zeros.size(), 0);
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    if (used[i]) continue;
    ZeroOrbit o;
    o.representative = i;
    for (std::size_t j = i; j < zeros.size(); ++j) {
      if (used[j]) continue;
      for (int e = 0; e < sym.group.order(); ++e) {
        if ((sym.rep(e) * zeros[i].location - zeros[j].location).norm() <= dedup) {
          o.members.push_back(j);
          used[j] = 1;
          break;
        }
      }
    }
    const auto orbit_size = static_cast<long long>(o.members.size());
    if (orbit_size * zeros[i].stabilizer.order() != sym.group.order()) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "orbit of %s has %lld points but |G|/|G_x| = %d", detail::vec_text(zeros[i].location).c_str(),
                    orbit_size, sym.group.order() / zeros[i].stabilizer.order());
      throw Error(ErrorKind::OrbitInconsistent, buf);
    }
    out.push_back(std::move(o));
  }
  return out;
}

/// Sum over zero orbits of the induced local degrees.
inline BurnsideElement assemble_index_local(const std::vector<ZeroPoint>& zeros, const Symmetry& sym, double dedup) {
  BurnsideElement total = BurnsideElement::zero(sym.table);
  for (const auto& o : zero_orbits(zeros, sym, dedup)) {
    const auto& z = zeros[o.representative];
    total += induce(sym.table, z.local_group, z.local_table, z.local_degree);
  }
  return total;
}

}  // namespace eqmorse

#pragma once

// Tracing of the plane curve Q = 0 by marching squares. Loops are oriented so
// that X_Q = {Q >= 0} lies to the left; saddle cells are resolved with the
// value at the cell centre, which keeps the orientation consistent.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eqmorse/config.hpp"
#include "eqmorse/error.hpp"
#include "eqmorse/poly.hpp"

namespace eqmorse {

inline Eigen::VectorXd as_dynamic(const Eigen::Vector2d& p) {
  Eigen::VectorXd x(2);
  x << p.x(), p.y();
  return x;
}

struct BoundaryLoop {
  std::vector<Eigen::Vector2d> points;  // cyclic, closing point not repeated
  int orientation = 1;                  // +1: X_Q on the left
  double turning = 0.0;                 // total exterior angle / 2pi
  int turning_number = 0;

  std::size_t size() const { return points.size(); }
  const Eigen::Vector2d& at(long long i) const {
    const auto m = static_cast<long long>(points.size());
    return points[static_cast<std::size_t>(((i % m) + m) % m)];
  }
  /// Point at polyline parameter s (segment index + fraction), not projected.
  Eigen::Vector2d lerp(double s) const {
    double fl = std::floor(s);
    auto i = static_cast<long long>(fl);
    double f = s - fl;
    return (1.0 - f) * at(i) + f * at(i + 1);
  }
};

struct BoundaryTrace {
  std::vector<BoundaryLoop> loops;
  double step = 0.0;  // grid spacing
  int grid = 0;
};

/// Newton projection onto Q = 0 along the gradient.
class BoundaryProjector {
 public:
  BoundaryProjector(const Domain& dom, const Tolerances& tol)
      : q_(dom.q), scale_(ball_scale(dom.q, dom.bounding_radius)), radius_(dom.bounding_radius), tol_(tol) {}

  double q_scale() const { return scale_; }
  const PolyJet& jet() const { return q_; }

  Eigen::Vector2d project(Eigen::Vector2d p) const {
    const double gfloor = tol_.singular_boundary * scale_ / radius_;
    for (int it = 0; it < 60; ++it) {
      Eigen::VectorXd x = as_dynamic(p);
      double v = q_.value(x);
      Eigen::VectorXd g = q_.gradient(x);
      double gn = g.norm();
      if (gn < gfloor) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "grad Q vanishes near (%.6g, %.6g) on Q = 0", p.x(), p.y());
        throw Error(ErrorKind::SingularBoundary, buf);
      }
      if (std::abs(v) <= tol_.boundary_polish * scale_) return p;
      p -= (v / (gn * gn)) * Eigen::Vector2d(g(0), g(1));
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "projection onto Q = 0 did not converge near (%.6g, %.6g)", p.x(), p.y());
    throw Error(ErrorKind::SingularBoundary, buf);
  }

 private:
  PolyJet q_;
  double scale_;
  double radius_;
  Tolerances tol_;
};

namespace detail {

inline double turning_of(const std::vector<Eigen::Vector2d>& pts) {
  const std::size_t m = pts.size();
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    Eigen::Vector2d a = pts[i] - pts[(i + m - 1) % m];
    Eigen::Vector2d b = pts[(i + 1) % m] - pts[i];
    total += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
  }
  return total / (2.0 * std::numbers::pi);
}

}  // namespace detail

inline BoundaryTrace trace_boundary(const Domain& dom, const Tolerances& tol) {
  if (dom.dim() != 2) throw Error(ErrorKind::UnsupportedDimension, "boundary tracing needs a planar domain");
  const int n = tol.grid_resolution;
  if (n < 8) throw Error(ErrorKind::InvalidParams, "grid resolution must be at least 8");
  const double big_l = 1.02 * dom.bounding_radius;
  const double h = 2.0 * big_l / n;
  // Irrational-ish offsets keep grid nodes off symmetry axes.
  const double ox = -big_l + 0.1234567 * h;
  const double oy = -big_l + 0.0765432 * h;
  const int w = n + 1;

  std::vector<double> qv(static_cast<std::size_t>(w) * static_cast<std::size_t>(w));
  for (int j = 0; j < w; ++j)
    for (int i = 0; i < w; ++i) {
      double xy[2] = {ox + i * h, oy + j * h};
      qv[static_cast<std::size_t>(j * w + i)] = dom.q.eval(std::span<const double>(xy, 2));
    }
  auto node = [&](int i, int j) { return static_cast<std::size_t>(j * w + i); };
  auto inside = [&](int i, int j) { return qv[node(i, j)] >= 0.0; };
  auto hid = [&](int i, int j) { return static_cast<std::int64_t>(2 * (j * w + i)); };
  auto vid = [&](int i, int j) { return static_cast<std::int64_t>(2 * (j * w + i) + 1); };

  for (int k = 0; k < w; ++k) {
    if (inside(k, 0) || inside(k, n) || inside(0, k) || inside(n, k))
      throw Error(ErrorKind::NotCompact, "Q >= 0 on the edge of the tracing box");
  }

  std::vector<std::int64_t> next(static_cast<std::size_t>(2 * w * w), -1);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      bool in[4] = {inside(i, j), inside(i + 1, j), inside(i + 1, j + 1), inside(i, j + 1)};
      std::int64_t e[4] = {hid(i, j), vid(i + 1, j), hid(i, j + 1), vid(i, j)};
      int starts[2], ends[2], ns = 0, ne = 0;
      for (int k = 0; k < 4; ++k) {
        bool a = in[k], b = in[(k + 1) % 4];
        if (a && !b) starts[ns++] = k;
        if (!a && b) ends[ne++] = k;
      }
      if (ns == 0) continue;
      if (ns == 1) {
        next[static_cast<std::size_t>(e[starts[0]])] = e[ends[0]];
        continue;
      }
      double c[2] = {ox + (i + 0.5) * h, oy + (j + 0.5) * h};
      bool centre_in = dom.q.eval(std::span<const double>(c, 2)) >= 0.0;
      for (int s = 0; s < 2; ++s) {
        int k = starts[s];
        int end = centre_in ? (k + 1) % 4 : (k + 3) % 4;
        next[static_cast<std::size_t>(e[k])] = e[end];
      }
    }

  BoundaryProjector proj(dom, tol);
  auto crossing = [&](std::int64_t id) {
    auto cell = static_cast<int>(id / 2);
    int i = cell % w, j = cell / w;
    int i2 = (id % 2 == 0) ? i + 1 : i;
    int j2 = (id % 2 == 0) ? j : j + 1;
    double qa = qv[node(i, j)], qb = qv[node(i2, j2)];
    double t = qa / (qa - qb);
    Eigen::Vector2d a(ox + i * h, oy + j * h), b(ox + i2 * h, oy + j2 * h);
    return proj.project(a + t * (b - a));
  };

  BoundaryTrace out;
  out.step = h;
  out.grid = n;
  std::vector<char> seen(next.size(), 0);
  for (std::size_t id0 = 0; id0 < next.size(); ++id0) {
    if (next[id0] < 0 || seen[id0]) continue;
    BoundaryLoop loop;
    auto cur = static_cast<std::int64_t>(id0);
    do {
      if (cur < 0 || seen[static_cast<std::size_t>(cur)]) throw Error(ErrorKind::OpenContour, "contour segments do not close up");
      seen[static_cast<std::size_t>(cur)] = 1;
      loop.points.push_back(crossing(cur));
      cur = next[static_cast<std::size_t>(cur)];
    } while (cur != static_cast<std::int64_t>(id0));

    std::vector<Eigen::Vector2d> kept;
    for (const auto& p : loop.points)
      if (kept.empty() || (p - kept.back()).norm() >= 0.05 * h) kept.push_back(p);
    while (kept.size() > 1 && (kept.front() - kept.back()).norm() < 0.05 * h) kept.pop_back();
    if (kept.size() < 3) throw Error(ErrorKind::OpenContour, "a boundary component is below the grid resolution");
    loop.points = std::move(kept);

    // Orientation audit: grad Q must point to the left of the traversal.
    double side = 0.0;
    for (std::size_t k = 0; k < loop.size(); ++k) {
      Eigen::Vector2d d = loop.at(static_cast<long long>(k) + 1) - loop.points[k];
      Eigen::VectorXd g = proj.jet().gradient(as_dynamic(loop.points[k]));
      side += -d.y() * g(0) + d.x() * g(1);
    }
    if (side < 0.0) std::reverse(loop.points.begin(), loop.points.end());
    loop.orientation = 1;
    loop.turning = detail::turning_of(loop.points);
    loop.turning_number = static_cast<int>(std::lround(loop.turning));
    out.loops.push_back(std::move(loop));
  }
  return out;
}

/// chi(X_Q) as the sum of the turning numbers of the oriented boundary loops.
inline int domain_euler(const BoundaryTrace& trace, double integrality = 0.01) {
  int chi = 0;
  for (const auto& l : trace.loops) {
    if (std::abs(l.turning - std::round(l.turning)) > integrality) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "turning number %.6f of a boundary loop is not an integer", l.turning);
      throw Error(ErrorKind::NonIntegerTurning, buf);
    }
    chi += static_cast<int>(std::lround(l.turning));
  }
  return chi;
}

struct LoopLocation {
  int loop = -1;
  std::size_t index = 0;
  double distance = 0.0;
};

inline LoopLocation nearest_loop_point(const BoundaryTrace& t, const Eigen::Vector2d& p) {
  LoopLocation best;
  best.distance = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < t.loops.size(); ++l)
    for (std::size_t i = 0; i < t.loops[l].size(); ++i) {
      double d = (t.loops[l].points[i] - p).norm();
      if (d < best.distance) best = {static_cast<int>(l), i, d};
    }
  return best;
}

}  // namespace eqmorse

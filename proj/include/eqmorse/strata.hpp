#pragma once

// Boundary strata of X_Q for a field v. With h = <v, grad Q> restricted to
// Q = 0, d1+ is {h > 0}, d2 is {h = 0} and a tangency is plus when the
// derivative of h along v is positive. On a line the boundary is a set of
// interval endpoints and the plus part is where v points inward.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <vector>

#include <Eigen/Dense>

#include "eqmorse/boundary.hpp"
#include "eqmorse/config.hpp"
#include "eqmorse/error.hpp"
#include "eqmorse/poly.hpp"

namespace eqmorse {

struct TangencyPoint {
  Eigen::Vector2d location;
  double h_derivative = 0.0;  // D_v h at the point
  bool is_plus = false;
  int loop = 0;
  double position = 0.0;      // polyline parameter along its loop
};

struct Arc {
  int loop = 0;
  int sign = 0;               // sign of h on the arc
  int begin = -1, end = -1;   // tangency indices; -1 for a whole loop
  double begin_position = 0.0, end_position = 0.0;
  bool whole_loop() const { return begin < 0; }
};

struct Stratification {
  std::vector<Arc> plus_arcs, minus_arcs;
  std::vector<TangencyPoint> tangency_points;
  std::vector<std::vector<double>> h;  // h at each loop point
  int chi_X = 0;
  int chi_d1_plus = 0, chi_d1_minus = 0;
  int chi_d2_plus = 0, chi_d2_minus = 0;
};

namespace detail {

class StrataEvaluator {
 public:
  StrataEvaluator(const VectorField& v, const Domain& dom, const Tolerances& tol) : v_(v), proj_(dom, tol) {}

  const BoundaryProjector& projector() const { return proj_; }

  Eigen::Vector2d field(const Eigen::Vector2d& p) const {
    Eigen::VectorXd f = v_.value(as_dynamic(p));
    return {f(0), f(1)};
  }
  double h(const Eigen::Vector2d& p) const {
    Eigen::VectorXd x = as_dynamic(p);
    return v_.value(x).dot(proj_.jet().gradient(x));
  }
  /// grad h = J_v^T grad Q + H_Q v.
  Eigen::Vector2d grad_h(const Eigen::Vector2d& p) const {
    Eigen::VectorXd x = as_dynamic(p);
    Eigen::VectorXd g = v_.jacobian(x).transpose() * proj_.jet().gradient(x) + proj_.jet().hessian(x) * v_.value(x);
    return {g(0), g(1)};
  }
  double q(const Eigen::Vector2d& p) const { return proj_.jet().value(as_dynamic(p)); }
  Eigen::Vector2d grad_q(const Eigen::Vector2d& p) const {
    Eigen::VectorXd g = proj_.jet().gradient(as_dynamic(p));
    return {g(0), g(1)};
  }

 private:
  FieldJet v_;
  BoundaryProjector proj_;
};

/// Golden-section minimisation of f over [a, b].
template <class F>
double golden_min(F&& f, double a, double b, double& fmin) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 80 && (b - a) > 1e-14; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  double x = fc < fd ? c : d;
  fmin = std::min(fc, fd);
  return x;
}

inline std::string point_text(const Eigen::Vector2d& p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g)", p.x(), p.y());
  return buf;
}

}  // namespace detail

inline Stratification compute_strata(const VectorField& v, const Domain& dom, const BoundaryTrace& trace, const Tolerances& tol) {
  if (v.dim() != 2 || dom.dim() != 2) throw Error(ErrorKind::DimensionMismatch, "planar stratification needs n = 2");
  detail::StrataEvaluator ev(v, dom, tol);
  const double r = dom.bounding_radius;
  const double v_scale = ball_scale(v, r);

  Stratification st;
  st.chi_X = domain_euler(trace, tol.integrality);

  double h_scale = 0.0, dvh_scale = 0.0, vmax = 0.0;
  std::vector<std::vector<double>> vnorm(trace.loops.size());
  for (std::size_t l = 0; l < trace.loops.size(); ++l) {
    const auto& loop = trace.loops[l];
    st.h.emplace_back(loop.size());
    vnorm[l].resize(loop.size());
    for (std::size_t i = 0; i < loop.size(); ++i) {
      const auto& p = loop.points[i];
      Eigen::Vector2d f = ev.field(p);
      st.h[l][i] = f.dot(ev.grad_q(p));
      vnorm[l][i] = f.norm();
      vmax = std::max(vmax, f.norm());
      h_scale = std::max(h_scale, f.norm() * ev.grad_q(p).norm());
      dvh_scale = std::max(dvh_scale, f.norm() * ev.grad_h(p).norm());
    }
  }
  h_scale = std::max(h_scale, 1e-300);
  dvh_scale = std::max(dvh_scale, 1e-300);

  auto on_curve = [&](const BoundaryLoop& loop, double s) { return ev.projector().project(loop.lerp(s)); };
  auto boundary_zero = [&](const Eigen::Vector2d& p) {
    throw Error(ErrorKind::BoundaryZero, "the field vanishes on Q = 0 near " + detail::point_text(p));
  };

  for (std::size_t l = 0; l < trace.loops.size(); ++l) {
    const auto& loop = trace.loops[l];
    const auto m = static_cast<long long>(loop.size());
    const auto& hv = st.h[l];
    auto hat = [&](long long i) { return hv[static_cast<std::size_t>(((i % m) + m) % m)]; };
    auto vat = [&](long long i) { return vnorm[l][static_cast<std::size_t>(((i % m) + m) % m)]; };
    auto sgn = [](double x) { return x > 0.0 ? 1 : -1; };

    // Zeros of v on the curve between samples.
    for (long long i = 0; i < m; ++i) {
      if (vat(i) > vat(i - 1) || vat(i) > vat(i + 1) || vat(i) > 0.1 * vmax) continue;
      double fmin = 0.0;
      double s = detail::golden_min([&](double t) { return ev.field(on_curve(loop, t)).norm(); }, double(i - 1), double(i + 1), fmin);
      if (fmin < tol.boundary_field_floor * v_scale) boundary_zero(on_curve(loop, s));
    }

    // Touching zeros of h: no sign change but |h| nearly vanishes.
    for (long long i = 0; i < m; ++i) {
      double a = std::abs(hat(i));
      if (a > std::abs(hat(i - 1)) || a > std::abs(hat(i + 1)) || a > 1e-3 * h_scale) continue;
      if (sgn(hat(i - 1)) != sgn(hat(i)) || sgn(hat(i)) != sgn(hat(i + 1))) continue;
      double fmin = 0.0;
      double s = detail::golden_min([&](double t) { return std::abs(ev.h(on_curve(loop, t))); }, double(i - 1), double(i + 1), fmin);
      if (fmin < tol.genericity_floor * h_scale) {
        Eigen::Vector2d p = on_curve(loop, s);
        if (ev.field(p).norm() < tol.boundary_field_floor * v_scale * 1e3) boundary_zero(p);
        throw Error(ErrorKind::GenericityFailure, "h touches zero without changing sign near " + detail::point_text(p));
      }
    }

    std::vector<TangencyPoint> local;
    for (long long i = 0; i < m; ++i) {
      if (sgn(hat(i)) == sgn(hat(i + 1))) continue;
      double lo = 0.0, hi = 1.0;
      const int s_lo = sgn(hat(i));
      for (int it = 0; it < 60 && hi - lo > 1e-15; ++it) {
        double mid = 0.5 * (lo + hi);
        if (sgn(ev.h(on_curve(loop, double(i) + mid))) == s_lo)
          lo = mid;
        else
          hi = mid;
      }
      double frac = 0.5 * (lo + hi);
      Eigen::Vector2d p = on_curve(loop, double(i) + frac);

      // Newton on {Q = 0, h = 0}; keep a step only if it lowers the residual.
      auto resid = [&](const Eigen::Vector2d& x) {
        return std::abs(ev.q(x)) / ev.projector().q_scale() + std::abs(ev.h(x)) / h_scale;
      };
      for (int it = 0; it < 8; ++it) {
        Eigen::Matrix2d jm;
        jm.row(0) = ev.grad_q(p).transpose();
        jm.row(1) = ev.grad_h(p).transpose();
        if (std::abs(jm.determinant()) < 1e-300) break;
        Eigen::Vector2d step = jm.partialPivLu().solve(Eigen::Vector2d(ev.q(p), ev.h(p)));
        if (step.norm() > trace.step) break;
        Eigen::Vector2d cand = p - step;
        if (resid(cand) >= resid(p)) break;
        p = cand;
      }

      Eigen::Vector2d f = ev.field(p);
      if (f.norm() < tol.boundary_field_floor * v_scale) boundary_zero(p);
      double dvh = ev.grad_h(p).dot(f);
      if (std::abs(dvh) < tol.genericity_floor * dvh_scale || std::abs(ev.h(p)) > tol.tangency_residual * h_scale) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "degenerate tangency near %s: D_v h = %.3g (scale %.3g)", detail::point_text(p).c_str(), dvh, dvh_scale);
        throw Error(ErrorKind::GenericityFailure, buf);
      }
      TangencyPoint t;
      t.location = p;
      t.h_derivative = dvh;
      t.is_plus = dvh > 0.0;
      t.loop = static_cast<int>(l);
      t.position = double(i) + frac;
      local.push_back(t);
    }

    const std::size_t k = local.size();
    const int base = static_cast<int>(st.tangency_points.size());
    if (k % 2 != 0) throw Error(ErrorKind::InconsistentStrata, "odd number of tangencies on a boundary loop");
    if (k == 0) {
      Arc a;
      a.loop = static_cast<int>(l);
      a.sign = sgn(hat(0));
      (a.sign > 0 ? st.plus_arcs : st.minus_arcs).push_back(a);
    }
    int prev_sign = 0;
    for (std::size_t a = 0; a < k; ++a) {
      std::size_t b = (a + 1) % k;
      double s0 = local[a].position, s1 = local[b].position;
      if (s1 <= s0) s1 += double(m);
      Arc arc;
      arc.loop = static_cast<int>(l);
      arc.begin = base + static_cast<int>(a);
      arc.end = base + static_cast<int>(b);
      arc.begin_position = s0;
      arc.end_position = s1;
      arc.sign = sgn(ev.h(on_curve(loop, 0.5 * (s0 + s1))));
      if (arc.sign == prev_sign) throw Error(ErrorKind::InconsistentStrata, "consecutive boundary arcs carry the same sign of h");
      prev_sign = arc.sign;
      (arc.sign > 0 ? st.plus_arcs : st.minus_arcs).push_back(arc);
    }
    for (const auto& t : local) st.tangency_points.push_back(t);
  }

  for (const auto& a : st.plus_arcs)
    if (!a.whole_loop()) ++st.chi_d1_plus;
  for (const auto& a : st.minus_arcs)
    if (!a.whole_loop()) ++st.chi_d1_minus;
  for (const auto& t : st.tangency_points) (t.is_plus ? st.chi_d2_plus : st.chi_d2_minus) += 1;
  return st;
}

// ---------------------------------------------------------------------------
// One-dimensional strata along a line t -> t u

/// p restricted to the line t -> t u, as a polynomial in t.
inline Poly restrict_to_line(const Poly& p, const Eigen::VectorXd& u) {
  return compose_linear(p, Eigen::MatrixXd(u));
}

/// <v(t u), u> as a polynomial in t.
inline Poly restrict_to_line(const VectorField& v, const Eigen::VectorXd& u) {
  Poly f(1);
  for (int i = 0; i < v.dim(); ++i) f += u(i) * restrict_to_line(v.components[static_cast<std::size_t>(i)], u);
  return f;
}

struct LineEndpoint {
  double t = 0.0;
  Eigen::VectorXd point;
  double f = 0.0;        // <v, u> at the endpoint
  bool left = false;     // lower end of its interval
  bool inward = false;   // v points into the interval
};

struct Strata1D {
  Eigen::VectorXd direction;
  std::vector<std::pair<double, double>> intervals;
  std::vector<LineEndpoint> endpoints;
  int chi_X = 0;
  int chi_d1_plus = 0, chi_d1_minus = 0;
};

/// Intervals of {t : Q(t u) >= 0} within |t| <= 1.02 R.
inline std::vector<std::pair<double, double>> line_intervals(const Domain& dom, const Eigen::VectorXd& u, int samples) {
  Poly q = restrict_to_line(dom.q, u);
  Poly dq = q.derivative(0);
  const double big_l = 1.02 * dom.bounding_radius;
  auto val = [&](double t) { return q.eval(std::span<const double>(&t, 1)); };
  if (val(-big_l) >= 0.0 || val(big_l) >= 0.0) throw Error(ErrorKind::NotCompact, "X_Q meets the end of a sampled line");

  auto root = [&](double a, double b) {
    const bool a_in = val(a) >= 0.0;
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, big_l); ++it) {
      double m = 0.5 * (a + b);
      if ((val(m) >= 0.0) == a_in)
        a = m;
      else
        b = m;
    }
    double t = 0.5 * (a + b);
    for (int it = 0; it < 3; ++it) {
      double d = dq.eval(std::span<const double>(&t, 1));
      if (d == 0.0) break;
      double nt = t - val(t) / d;
      if (nt < a - (b - a) || nt > b + (b - a)) break;
      t = nt;
    }
    return t;
  };

  std::vector<std::pair<double, double>> out;
  const double dt = 2.0 * big_l / samples;
  double prev_t = -big_l;
  bool prev_in = false;
  double open = 0.0;
  for (int k = 1; k <= samples; ++k) {
    double t = (k == samples) ? big_l : -big_l + k * dt;
    bool in = val(t) >= 0.0;
    if (in && !prev_in) open = root(prev_t, t);
    if (!in && prev_in) out.emplace_back(open, root(prev_t, t));
    prev_in = in;
    prev_t = t;
  }
  return out;
}

inline Strata1D strata_1d(const VectorField& v, const Domain& dom, const Eigen::VectorXd& u, const Tolerances& tol) {
  if (u.size() != v.dim() || dom.dim() != v.dim()) throw Error(ErrorKind::DimensionMismatch, "line direction does not match the field");
  Strata1D s;
  s.direction = u;
  s.intervals = line_intervals(dom, u, tol.line_samples);
  Poly f = restrict_to_line(v, u);
  const double v_scale = ball_scale(v, dom.bounding_radius);
  s.chi_X = static_cast<int>(s.intervals.size());
  for (const auto& [a, b] : s.intervals) {
    for (int side = 0; side < 2; ++side) {
      LineEndpoint e;
      e.t = side == 0 ? a : b;
      e.left = side == 0;
      e.point = e.t * u;
      e.f = f.eval(std::span<const double>(&e.t, 1));
      if (std::abs(e.f) < tol.boundary_field_floor * v_scale) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "the field vanishes at the endpoint t = %.6g of a fixed interval", e.t);
        throw Error(ErrorKind::EndpointZero, buf);
      }
      e.inward = e.left ? e.f > 0.0 : e.f < 0.0;
      (e.inward ? s.chi_d1_plus : s.chi_d1_minus) += 1;
      s.endpoints.push_back(e);
    }
  }
  return s;
}

}  // namespace eqmorse

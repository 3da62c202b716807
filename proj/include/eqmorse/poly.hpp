#pragma once

// Sparse multivariate polynomials with real coefficients, the polynomial
// vector fields built from them, and compact domains X_Q = {Q >= 0}.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "eqmorse/config.hpp"
#include "eqmorse/error.hpp"

namespace eqmorse {

using Exponent = std::vector<int>;

inline int total_degree(const Exponent& e) {
  int s = 0;
  for (int x : e) s += x;
  return s;
}

class Poly {
 public:
  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, double c) {
    Poly p(nvars);
    p.add_term(Exponent(static_cast<std::size_t>(nvars), 0), c);
    return p;
  }
  static Poly variable(int nvars, int i) {
    Exponent e(static_cast<std::size_t>(nvars), 0);
    e.at(static_cast<std::size_t>(i)) = 1;
    Poly p(nvars);
    p.add_term(e, 1.0);
    return p;
  }

  int nvars() const { return nvars_; }
  const std::map<Exponent, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Maximum total degree of stored terms; -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [e, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

  double coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0.0 : it->second;
  }

  void add_term(const Exponent& e, double c) {
    if (static_cast<int>(e.size()) != nvars_) throw Error(ErrorKind::DimensionMismatch, "exponent length does not match nvars");
    for (int x : e)
      if (x < 0) throw Error(ErrorKind::DimensionMismatch, "negative exponent");
    if (c == 0.0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0.0) terms_.erase(it);
    }
  }

  /// Drops coefficients with |c| <= rel * max|c|.
  Poly& prune(double rel = 1e-14) {
    double cut = rel * max_abs_coeff();
    for (auto it = terms_.begin(); it != terms_.end();) {
      if (std::abs(it->second) <= cut)
        it = terms_.erase(it);
      else
        ++it;
    }
    return *this;
  }

  double eval(std::span<const double> x) const {
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
      double t = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        for (int k = 0; k < e[i]; ++k) t *= x[i];
      sum += t;
    }
    return sum;
  }
  double eval(const Eigen::VectorXd& x) const { return eval(std::span<const double>(x.data(), static_cast<std::size_t>(x.size()))); }
  double operator()(const Eigen::VectorXd& x) const { return eval(x); }

  Poly derivative(int var) const {
    Poly d(nvars_);
    for (const auto& [e, c] : terms_) {
      int k = e[static_cast<std::size_t>(var)];
      if (k == 0) continue;
      Exponent f = e;
      f[static_cast<std::size_t>(var)] = k - 1;
      d.add_term(f, c * k);
    }
    return d;
  }

  Poly homogeneous_part(int deg) const {
    Poly h(nvars_);
    for (const auto& [e, c] : terms_)
      if (total_degree(e) == deg) h.add_term(e, c);
    return h;
  }

  Poly& operator+=(const Poly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  Poly& operator*=(double s) {
    if (s == 0.0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, double s) { return a *= s; }
  friend Poly operator*(double s, Poly a) { return a *= s; }
  friend Poly operator-(Poly a) { return a *= -1.0; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_same(b);
    Poly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e = ea;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  Poly pow(int k) const {
    Poly r = constant(nvars_, 1.0);
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
  }

  /// Largest coefficientwise difference.
  static double max_coeff_diff(const Poly& a, const Poly& b) {
    double m = 0.0;
    for (const auto& [e, c] : a.terms_) m = std::max(m, std::abs(c - b.coeff(e)));
    for (const auto& [e, c] : b.terms_)
      if (!a.terms_.count(e)) m = std::max(m, std::abs(c));
    return m;
  }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void check_same(const Poly& o) const {
    if (o.nvars_ != nvars_) throw Error(ErrorKind::DimensionMismatch, "polynomials in different numbers of variables");
  }

  int nvars_ = 0;
  std::map<Exponent, double> terms_;
};

// ---------------------------------------------------------------------------
// Jets

struct Jet {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

/// Polynomial with its first and second partial derivatives precomputed.
class PolyJet {
 public:
  PolyJet() = default;
  explicit PolyJet(const Poly& p) : p_(p) {
    const int n = p.nvars();
    for (int i = 0; i < n; ++i) d_.push_back(p.derivative(i));
    for (int i = 0; i < n; ++i) {
      std::vector<Poly> row;
      for (int j = 0; j < n; ++j) row.push_back(d_[static_cast<std::size_t>(i)].derivative(j));
      dd_.push_back(std::move(row));
    }
  }

  const Poly& poly() const { return p_; }
  double value(const Eigen::VectorXd& x) const { return p_.eval(x); }

  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const {
    Eigen::VectorXd g(static_cast<Eigen::Index>(d_.size()));
    for (std::size_t i = 0; i < d_.size(); ++i) g(static_cast<Eigen::Index>(i)) = d_[i].eval(x);
    return g;
  }

  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const {
    const auto n = static_cast<Eigen::Index>(d_.size());
    Eigen::MatrixXd h(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) h(i, j) = dd_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].eval(x);
    return h;
  }

  Jet jet(const Eigen::VectorXd& x, int order) const {
    Jet j;
    j.value = value(x);
    if (order >= 1) j.gradient = gradient(x);
    if (order >= 2) j.hessian = hessian(x);
    return j;
  }

 private:
  Poly p_;
  std::vector<Poly> d_;
  std::vector<std::vector<Poly>> dd_;
};

inline Jet eval_jet(const Poly& p, const Eigen::VectorXd& x, int order) { return PolyJet(p).jet(x, order); }

// ---------------------------------------------------------------------------
// Linear substitution

/// p(A y): `a` is n x l with n == p.nvars(); the result has l variables.
inline Poly compose_linear(const Poly& p, const Eigen::MatrixXd& a, double prune_rel = 1e-14) {
  if (a.rows() != p.nvars()) throw Error(ErrorKind::DimensionMismatch, "substitution matrix has " + std::to_string(a.rows()) + " rows for a polynomial in " + std::to_string(p.nvars()) + " variables");
  const int l = static_cast<int>(a.cols());
  const int n = p.nvars();
  int maxdeg = std::max(0, p.degree());

  std::vector<std::vector<Poly>> powers(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Poly lin(l);
    for (int k = 0; k < l; ++k) {
      if (a(i, k) != 0.0) lin += Poly::variable(l, k) * a(i, k);
    }
    auto& pw = powers[static_cast<std::size_t>(i)];
    pw.push_back(Poly::constant(l, 1.0));
    for (int e = 1; e <= maxdeg; ++e) pw.push_back(pw.back() * lin);
  }

  Poly out(l);
  for (const auto& [e, c] : p.terms()) {
    Poly t = Poly::constant(l, c);
    for (int i = 0; i < n; ++i) {
      int k = e[static_cast<std::size_t>(i)];
      if (k > 0) t = t * powers[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    }
    out += t;
  }
  return out.prune(prune_rel);
}

/// Degree of q restricted to span(basis columns). Zero for the zero subspace.
inline int restricted_degree(const Poly& q, const Eigen::MatrixXd& basis, double rel = 1e-9) {
  if (basis.cols() == 0) return 0;
  Poly r = compose_linear(q, basis);
  double cut = rel * r.max_abs_coeff();
  int d = 0;
  for (const auto& [e, c] : r.terms())
    if (std::abs(c) > cut) d = std::max(d, total_degree(e));
  return d;
}

// ---------------------------------------------------------------------------
// Infix parser: numbers, variables x, y, z, + - * ^ and parentheses.
// Juxtaposition multiplies ("2x^2", "3(x+y)").

namespace detail {

class PolyParser {
 public:
  PolyParser(const std::string& text, int nvars) : s_(text), n_(nvars) {}

  Poly parse() {
    skip();
    if (pos_ >= s_.size()) throw ParseError(pos_, "empty polynomial");
    Poly p = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(pos_, std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_primary() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' || c == 'x' || c == 'y' || c == 'z';
  }

  Poly expr() {
    Poly p = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        p += term();
      } else if (peek('-')) {
        ++pos_;
        p -= term();
      } else {
        return p;
      }
    }
  }

  Poly term() {
    Poly p = unary();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        p = p * unary();
      } else if (peek('/')) {
        std::size_t at = pos_++;
        Poly d = unary();
        if (d.degree() > 0) throw ParseError(at, "division is only by constants");
        double c = d.coeff(Exponent(static_cast<std::size_t>(n_), 0));
        if (c == 0.0) throw ParseError(at, "division by zero");
        p *= 1.0 / c;
      } else if (starts_primary()) {
        p = p * power();
      } else {
        return p;
      }
    }
  }

  Poly unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  Poly power() {
    Poly base = primary();
    if (peek('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      int k = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) k = k * 10 + (s_[pos_++] - '0');
      if (pos_ == start) throw ParseError(pos_, "expected a non-negative integer exponent");
      return base.pow(k);
    }
    return base;
  }

  Poly primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!peek(')')) throw ParseError(pos_, "expected ')'");
      ++pos_;
      return p;
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      int var = c - 'x';
      if (var >= n_) throw ParseError(pos_, std::string("variable '") + c + "' exceeds dimension " + std::to_string(n_));
      ++pos_;
      return Poly::variable(n_, var);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin) throw ParseError(pos_, "malformed number");
      pos_ += static_cast<std::size_t>(end - begin);
      return Poly::constant(n_, v);
    }
    throw ParseError(pos_, std::string("unexpected '") + c + "'");
  }

  const std::string& s_;
  int n_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Poly parse_poly(const std::string& text, int nvars) {
  if (nvars < 1 || nvars > 3) throw ParseError(0, "the infix parser supports 1 to 3 variables");
  return detail::PolyParser(text, nvars).parse().prune();
}

inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  static const char* names = "xyz";
  std::string out;
  // highest degree first
  std::vector<std::pair<Exponent, double>> ts(p.terms().begin(), p.terms().end());
  std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) { return total_degree(a.first) > total_degree(b.first); });
  for (const auto& [e, c] : ts) {
    double a = std::abs(c);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", a);
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += (p.nvars() <= 3) ? std::string(1, names[i]) : "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string body = mono.empty() ? buf : (a == 1.0 ? mono : std::string(buf) + "*" + mono);
    if (out.empty())
      out = (c < 0 ? "-" : "") + body;
    else
      out += (c < 0 ? " - " : " + ") + body;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Vector fields and domains

struct VectorField {
  std::vector<Poly> components;
  std::vector<int> degree_bounds;  // non-increasing, each >= 1

  int dim() const { return static_cast<int>(components.size()); }

  Eigen::VectorXd eval(const Eigen::VectorXd& x) const {
    Eigen::VectorXd out(static_cast<Eigen::Index>(components.size()));
    for (std::size_t i = 0; i < components.size(); ++i) out(static_cast<Eigen::Index>(i)) = components[i].eval(x);
    return out;
  }

  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto& c : components) m = std::max(m, c.max_abs_coeff());
    return m;
  }

  /// Observed component degrees (at least 1), sorted non-increasing.
  std::vector<int> inferred_degree_bounds() const {
    std::vector<int> ms;
    for (const auto& c : components) ms.push_back(std::max(1, c.degree()));
    std::sort(ms.rbegin(), ms.rend());
    return ms;
  }

  static VectorField from_components(std::vector<Poly> comps) {
    VectorField v;
    v.components = std::move(comps);
    const int n = v.dim();
    for (const auto& c : v.components)
      if (c.nvars() != n) throw Error(ErrorKind::DimensionMismatch, "field components must have as many variables as components");
    v.degree_bounds = v.inferred_degree_bounds();
    return v;
  }

  /// Validates declared bounds against the components (sorted pairing).
  void check_degree_bounds() const {
    if (degree_bounds.size() != components.size()) throw Error(ErrorKind::DimensionMismatch, "one degree bound per component is required");
    for (std::size_t i = 0; i + 1 < degree_bounds.size(); ++i)
      if (degree_bounds[i] < degree_bounds[i + 1]) throw Error(ErrorKind::InvalidParams, "degree bounds must be non-increasing");
    auto obs = inferred_degree_bounds();
    for (std::size_t i = 0; i < obs.size(); ++i)
      if (obs[i] > degree_bounds[i]) throw Error(ErrorKind::InvalidParams, "a component exceeds its degree bound");
  }
};

/// Jets of all components of a field; jacobian rows are component gradients.
class FieldJet {
 public:
  FieldJet() = default;
  explicit FieldJet(const VectorField& v) {
    for (const auto& c : v.components) comps_.emplace_back(c);
  }
  int dim() const { return static_cast<int>(comps_.size()); }
  Eigen::VectorXd value(const Eigen::VectorXd& x) const {
    Eigen::VectorXd out(dim());
    for (int i = 0; i < dim(); ++i) out(i) = comps_[static_cast<std::size_t>(i)].value(x);
    return out;
  }
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd j(dim(), dim());
    for (int i = 0; i < dim(); ++i) j.row(i) = comps_[static_cast<std::size_t>(i)].gradient(x).transpose();
    return j;
  }
  const PolyJet& component(int i) const { return comps_[static_cast<std::size_t>(i)]; }

 private:
  std::vector<PolyJet> comps_;
};

struct Domain {
  Poly q;
  double bounding_radius = 1.0;

  int dim() const { return q.nvars(); }
  double scale() const { return std::max(q.max_abs_coeff(), 1e-300); }
  bool contains(const Eigen::VectorXd& x) const { return q.eval(x) >= 0.0; }
};

/// Compactness certificate: Q < 0 on 720 rays at radius R and 2R (n = 2), or
/// at +-R, +-2R (n = 1).
inline void certify_compact(const Domain& dom) {
  const int n = dom.dim();
  if (!(dom.bounding_radius > 0.0)) throw Error(ErrorKind::NotCompact, "bounding radius must be positive");
  auto fail = [&](const Eigen::VectorXd& x) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "Q >= 0 at distance %.6g from the origin (point %s); X_Q is not inside the bounding radius",
                  x.norm(), n == 1 ? std::to_string(x(0)).c_str() : ("(" + std::to_string(x(0)) + ", " + std::to_string(x(1)) + ")").c_str());
    throw Error(ErrorKind::NotCompact, buf);
  };
  if (n == 1) {
    for (double r : {dom.bounding_radius, 2.0 * dom.bounding_radius})
      for (double s : {-1.0, 1.0}) {
        Eigen::VectorXd x(1);
        x << s * r;
        if (!(dom.q.eval(x) < 0.0)) fail(x);
      }
    return;
  }
  if (n == 2) {
    for (double r : {dom.bounding_radius, 2.0 * dom.bounding_radius})
      for (int k = 0; k < 720; ++k) {
        double t = 2.0 * std::numbers::pi * k / 720.0;
        Eigen::VectorXd x(2);
        x << r * std::cos(t), r * std::sin(t);
        if (!(dom.q.eval(x) < 0.0)) fail(x);
      }
    return;
  }
  throw Error(ErrorKind::UnsupportedDimension, "compactness certificate implemented for n <= 2");
}

/// Upper bound for |p| on the ball of radius r: sum of |c| r^deg over terms.
inline double ball_scale(const Poly& p, double r) {
  double s = 0.0;
  for (const auto& [e, c] : p.terms()) s += std::abs(c) * std::pow(r, total_degree(e));
  return std::max(s, 1e-300);
}

inline double ball_scale(const VectorField& v, double r) {
  double s = 1e-300;
  for (const auto& c : v.components) s = std::max(s, ball_scale(c, r));
  return s;
}

// ---------------------------------------------------------------------------
// Non-degeneracy at infinity

struct InfinityReport {
  bool applicable = true;
  bool passed = false;
  std::vector<Eigen::VectorXd> suspicious_directions;
  std::string note;
};

/// Numerical screen for common real zeros of the top-degree forms. Component i
/// (after sorting by degree) is homogenized to degree_bounds[i].
inline InfinityReport infinity_check(const VectorField& v, double rel_tol = 1e-6) {
  InfinityReport rep;
  const int n = v.dim();
  if (n >= 3) {
    rep.applicable = false;
    rep.note = "UnsupportedDimension: check implemented for n <= 2";
    return rep;
  }
  std::vector<std::size_t> order(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return v.components[a].degree() > v.components[b].degree(); });
  std::vector<int> ms = v.degree_bounds.size() == static_cast<std::size_t>(n) ? v.degree_bounds : v.inferred_degree_bounds();

  std::vector<Poly> tops;
  for (int i = 0; i < n; ++i) tops.push_back(v.components[order[static_cast<std::size_t>(i)]].homogeneous_part(ms[static_cast<std::size_t>(i)]));

  for (int i = 0; i < n; ++i) {
    if (tops[static_cast<std::size_t>(i)].is_zero()) {
      rep.passed = false;
      rep.note = "top-degree form of a component vanishes identically (degree below its bound)";
      return rep;
    }
  }
  if (n == 1) {
    rep.passed = true;
    return rep;
  }

  auto at = [](const Poly& p, double t) {
    Eigen::VectorXd x(2);
    x << std::cos(t), std::sin(t);
    return p.eval(x);
  };
  constexpr int kDirs = 2048;
  const double step = 2.0 * std::numbers::pi / kDirs;
  std::vector<double> scale(2, 0.0);
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < kDirs; ++k) scale[static_cast<std::size_t>(i)] = std::max(scale[static_cast<std::size_t>(i)], std::abs(at(tops[static_cast<std::size_t>(i)], k * step)));

  std::vector<double> hits;
  for (int a = 0; a < 2; ++a) {
    const Poly& pa = tops[static_cast<std::size_t>(a)];
    const Poly& pb = tops[static_cast<std::size_t>(1 - a)];
    std::vector<double> candidates;
    for (int k = 0; k < kDirs; ++k) {
      double t0 = k * step, t1 = (k + 1) * step;
      double f0 = at(pa, t0), f1 = at(pa, t1);
      if (f0 == 0.0) {
        candidates.push_back(t0);
      } else if (f0 * f1 < 0.0) {
        for (int it = 0; it < 60; ++it) {
          double tm = 0.5 * (t0 + t1);
          double fm = at(pa, tm);
          if (fm == 0.0) {
            t0 = t1 = tm;
            break;
          }
          if ((fm < 0.0) == (f0 < 0.0)) {
            t0 = tm;
            f0 = fm;
          } else {
            t1 = tm;
          }
        }
        candidates.push_back(0.5 * (t0 + t1));
      } else {
        // touching zero without a sign change: local minimum of |pa|
        double fp = std::abs(at(pa, t0 - step));
        double fc = std::abs(f0), fn = std::abs(f1);
        if (fc <= fp && fc <= fn && fc < rel_tol * scale[static_cast<std::size_t>(a)]) candidates.push_back(t0);
      }
    }
    for (double t : candidates) {
      if (std::abs(at(pa, t)) < rel_tol * scale[static_cast<std::size_t>(a)] &&
          std::abs(at(pb, t)) < rel_tol * scale[static_cast<std::size_t>(1 - a)]) {
        double w = std::fmod(t, 2.0 * std::numbers::pi);
        bool dup = std::any_of(hits.begin(), hits.end(), [&](double h) {
          double d = std::abs(h - w);
          return std::min(d, 2.0 * std::numbers::pi - d) < 1e-6;
        });
        if (!dup) hits.push_back(w);
      }
    }
  }
  std::sort(hits.begin(), hits.end());
  for (double t : hits) {
    Eigen::VectorXd d(2);
    d << std::cos(t), std::sin(t);
    rep.suspicious_directions.push_back(d);
  }
  rep.passed = hits.empty();
  if (!rep.passed) rep.note = "top-degree forms share real zero directions; a zero may escape to infinity";
  return rep;
}

}  // namespace eqmorse

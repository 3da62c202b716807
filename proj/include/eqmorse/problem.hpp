#pragma once

// JSON problem files (schema 1):
//
//   {
//     "schema": 1,
//     "name": "z2-saddle",
//     "group": {"generators": ["(0 1)"]},                  optional
//     "representation": {"dim": 2, "generators": [[[1,0],[0,-1]]]},
//     "field": ["x", "-y"],
//     "domain": {"q": "1 - x^2 - y^2", "bounding_radius": 1.5},
//     "degree_bounds": [1, 1],                            optional
//     "options": {"grid_resolution": 512, "tol_profile": "default",
//                 "checks": ["morse", "bounds"], "tolerances": {...}}
//   }
//
// A representation generator is a matrix, {"rotation": m} or
// {"reflection_axis": [a, b]}. Polynomials are infix strings or term lists
// [{"exp": [i, j], "coeff": c}]. Without "group", the group is generated by
// the matrices themselves.

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "eqmorse/config.hpp"
#include "eqmorse/error.hpp"
#include "eqmorse/group.hpp"
#include "eqmorse/poly.hpp"
#include "eqmorse/representation.hpp"

namespace eqmorse {

struct CheckSelection {
  bool morse = true;
  bool bounds = true;
  bool gauss = false;
  bool stability = false;
};

struct ProblemSpec {
  int schema = 1;
  std::string name;
  int dim = 0;
  bool group_given = false;
  std::vector<Permutation> generators;
  std::vector<Eigen::MatrixXd> matrices;
  VectorField field;
  Domain domain;
  std::vector<int> degree_bounds;  // resolved, non-increasing
  bool degree_bounds_given = false;
  Tolerances tol;
  CheckSelection checks;
  std::vector<std::string> warnings;
  nlohmann::json source;  // the file as read
};

namespace detail {

[[noreturn]] inline void invalid(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::ValidationError, where + ": " + what);
}

inline Poly poly_from_json(const nlohmann::json& j, int n, const std::string& where) {
  if (j.is_string()) {
    try {
      return parse_poly(j.get<std::string>(), n);
    } catch (const ParseError& e) {
      throw ParseError(e.position(), where + ": " + e.detail());
    }
  }
  if (j.is_number()) return Poly::constant(n, j.get<double>());
  if (!j.is_array()) invalid(where, "expected a polynomial string or a term list");
  Poly p(n);
  for (const auto& t : j) {
    if (!t.is_object() || !t.contains("exp") || !t.contains("coeff")) invalid(where, "each term needs \"exp\" and \"coeff\"");
    if (!t["exp"].is_array() || static_cast<int>(t["exp"].size()) != n) invalid(where, "exponent length must equal the dimension");
    Exponent e;
    for (const auto& x : t["exp"]) {
      if (!x.is_number_integer() || x.get<int>() < 0) invalid(where, "exponents must be nonnegative integers");
      e.push_back(x.get<int>());
    }
    if (!t["coeff"].is_number()) invalid(where, "coefficients must be numbers");
    p.add_term(e, t["coeff"].get<double>());
  }
  return p.prune();
}

inline Eigen::MatrixXd matrix_from_json(const nlohmann::json& j, int n, const std::string& where) {
  if (j.is_object()) {
    if (j.contains("rotation")) {
      if (n != 2) invalid(where, "rotation shorthand needs dim 2");
      if (!j["rotation"].is_number_integer() || j["rotation"].get<int>() < 1) invalid(where, "rotation order must be a positive integer");
      return rotation_matrix(j["rotation"].get<int>());
    }
    if (j.contains("reflection_axis")) {
      if (n != 2) invalid(where, "reflection shorthand needs dim 2");
      const auto& a = j["reflection_axis"];
      if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) invalid(where, "reflection_axis must be [a, b]");
      if (a[0].get<double>() == 0.0 && a[1].get<double>() == 0.0) invalid(where, "reflection axis must be nonzero");
      return reflection_matrix(a[0].get<double>(), a[1].get<double>());
    }
    invalid(where, "unknown matrix shorthand");
  }
  if (!j.is_array() || static_cast<int>(j.size()) != n) invalid(where, "expected an " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
  Eigen::MatrixXd m(n, n);
  for (int r = 0; r < n; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      invalid(where, "expected an " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
    for (int c = 0; c < n; ++c) {
      if (!row[static_cast<std::size_t>(c)].is_number()) invalid(where, "matrix entries must be numbers");
      m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
    }
  }
  return m;
}

inline Permutation permutation_from_json(const nlohmann::json& j, const std::string& where) {
  if (j.is_string()) return parse_cycles(j.get<std::string>());
  if (!j.is_array()) invalid(where, "expected a cycle string or an image array");
  Permutation p;
  for (const auto& x : j) {
    if (!x.is_number_integer()) invalid(where, "image arrays hold integers");
    p.push_back(x.get<int>());
  }
  if (!is_permutation(p)) throw Error(ErrorKind::NotAPermutation, where + ": not a permutation of 0..k-1");
  return p;
}

inline void apply_tolerance_overrides(Tolerances& tol, const nlohmann::json& j) {
  if (!j.is_object()) invalid("options.tolerances", "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for_each_tolerance(tol, [&](const char* name, auto& field, const char*) {
      if (key != name) return;
      known = true;
      using T = std::remove_reference_t<decltype(field)>;
      if constexpr (std::is_same_v<T, int>) {
        if (!value.is_number_integer() || value.get<int>() < 1) invalid("options.tolerances." + key, "expected a positive integer");
        field = value.get<int>();
      } else {
        if (!value.is_number() || !(value.get<double>() > 0.0)) invalid("options.tolerances." + key, "expected a positive number");
        field = value.get<double>();
      }
    });
    if (!known) invalid("options.tolerances", "unknown tolerance \"" + key + "\"");
  }
}

}  // namespace detail

inline ProblemSpec parse_problem_json(const nlohmann::json& j) {
  using detail::invalid;
  ProblemSpec s;
  s.source = j;
  if (!j.is_object()) invalid("<root>", "expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    static const std::vector<std::string> known{"schema", "name", "group", "representation", "field", "domain", "degree_bounds", "options"};
    if (std::find(known.begin(), known.end(), key) == known.end()) invalid(key, "unknown top-level key");
  }
  if (j.contains("schema") && (!j["schema"].is_number_integer() || j["schema"].get<int>() != 1)) invalid("schema", "only schema 1 is supported");
  if (j.contains("name")) {
    if (!j["name"].is_string()) invalid("name", "expected a string");
    s.name = j["name"].get<std::string>();
  }

  if (!j.contains("field") || !j["field"].is_array() || j["field"].empty()) invalid("field", "expected a non-empty list of components");
  const int field_dim = static_cast<int>(j["field"].size());

  const nlohmann::json rep = j.value("representation", nlohmann::json::object());
  if (!rep.is_object()) invalid("representation", "expected an object");
  if (rep.contains("dim") && !rep["dim"].is_number_integer()) invalid("representation.dim", "expected an integer");
  s.dim = rep.contains("dim") ? rep["dim"].get<int>() : field_dim;
  if (field_dim != s.dim) invalid("field", "has " + std::to_string(field_dim) + " components but the dimension is " + std::to_string(s.dim));
  if (s.dim < 1 || s.dim > 2) throw Error(ErrorKind::UnsupportedDimension, "representation.dim must be 1 or 2");
  if (rep.contains("generators")) {
    if (!rep["generators"].is_array()) invalid("representation.generators", "expected a list");
    for (std::size_t i = 0; i < rep["generators"].size(); ++i)
      s.matrices.push_back(detail::matrix_from_json(rep["generators"][i], s.dim, "representation.generators[" + std::to_string(i) + "]"));
  }

  if (j.contains("group")) {
    const auto& g = j["group"];
    if (!g.is_object() || !g.contains("generators") || !g["generators"].is_array()) invalid("group", "expected {\"generators\": [...]}");
    s.group_given = true;
    for (std::size_t i = 0; i < g["generators"].size(); ++i)
      s.generators.push_back(detail::permutation_from_json(g["generators"][i], "group.generators[" + std::to_string(i) + "]"));
    if (s.generators.size() != s.matrices.size())
      invalid("representation.generators", "need one matrix per group generator (" + std::to_string(s.generators.size()) + ")");
  }

  std::vector<Poly> comps;
  for (std::size_t i = 0; i < j["field"].size(); ++i) comps.push_back(detail::poly_from_json(j["field"][i], s.dim, "field[" + std::to_string(i) + "]"));
  s.field = VectorField::from_components(std::move(comps));

  if (!j.contains("domain") || !j["domain"].is_object()) invalid("domain", "expected {\"q\": ..., \"bounding_radius\": ...}");
  const auto& d = j["domain"];
  if (!d.contains("q")) invalid("domain.q", "missing");
  s.domain.q = detail::poly_from_json(d["q"], s.dim, "domain.q");
  if (!d.contains("bounding_radius") || !d["bounding_radius"].is_number() || !(d["bounding_radius"].get<double>() > 0.0))
    invalid("domain.bounding_radius", "expected a positive number");
  s.domain.bounding_radius = d["bounding_radius"].get<double>();

  if (j.contains("degree_bounds")) {
    const auto& m = j["degree_bounds"];
    if (!m.is_array() || static_cast<int>(m.size()) != s.dim) invalid("degree_bounds", "expected one integer per component");
    for (const auto& x : m) {
      if (!x.is_number_integer() || x.get<int>() < 1) invalid("degree_bounds", "entries must be positive integers");
      s.degree_bounds.push_back(x.get<int>());
    }
    if (!std::is_sorted(s.degree_bounds.begin(), s.degree_bounds.end(), std::greater<>())) {
      std::sort(s.degree_bounds.begin(), s.degree_bounds.end(), std::greater<>());
      s.warnings.push_back("degree_bounds were not non-increasing and have been sorted");
    }
    s.degree_bounds_given = true;
    s.field.degree_bounds = s.degree_bounds;
    auto observed = s.field.inferred_degree_bounds();
    for (std::size_t i = 0; i < observed.size(); ++i)
      if (observed[i] > s.degree_bounds[i]) invalid("degree_bounds", "a field component exceeds its degree bound");
  } else {
    s.degree_bounds = s.field.inferred_degree_bounds();
  }

  if (j.contains("options")) {
    const auto& o = j["options"];
    if (!o.is_object()) invalid("options", "expected an object");
    if (o.contains("tol_profile")) {
      if (!o["tol_profile"].is_string() || !apply_profile(s.tol, o["tol_profile"].get<std::string>()))
        invalid("options.tol_profile", "expected default, strict or coarse");
    }
    if (o.contains("grid_resolution")) {
      if (!o["grid_resolution"].is_number_integer() || o["grid_resolution"].get<int>() < 8) invalid("options.grid_resolution", "expected an integer >= 8");
      s.tol.grid_resolution = o["grid_resolution"].get<int>();
    }
    if (o.contains("tolerances")) detail::apply_tolerance_overrides(s.tol, o["tolerances"]);
    if (o.contains("checks")) {
      if (!o["checks"].is_array()) invalid("options.checks", "expected a list");
      s.checks = CheckSelection{false, false, false, false};
      for (const auto& c : o["checks"]) {
        std::string name = c.is_string() ? c.get<std::string>() : "";
        if (name == "morse") s.checks.morse = true;
        else if (name == "bounds") s.checks.bounds = true;
        else if (name == "gauss") s.checks.gauss = true;
        else if (name == "stability") s.checks.stability = true;
        else invalid("options.checks", "unknown check \"" + name + "\"");
      }
    }
  }
  return s;
}

inline ProblemSpec parse_problem_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte, "invalid JSON");
  }
  return parse_problem_json(j);
}

inline ProblemSpec parse_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_problem_text(ss.str());
}

}  // namespace eqmorse

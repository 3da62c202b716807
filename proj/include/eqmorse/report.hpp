#pragma once

// Machine-readable run reports. Every record is plain data with JSON
// conversions, so a report written to disk reads back equal.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "eqmorse/burnside.hpp"
#include "eqmorse/gauss.hpp"
#include "eqmorse/khovanskii.hpp"
#include "eqmorse/morse.hpp"
#include "eqmorse/strata.hpp"
#include "eqmorse/symmetry.hpp"

NLOHMANN_JSON_NAMESPACE_BEGIN
template <class T>
struct adl_serializer<std::optional<T>> {
  static void to_json(json& j, const std::optional<T>& o) {
    if (o)
      j = *o;
    else
      j = nullptr;
  }
  static void from_json(const json& j, std::optional<T>& o) {
    if (j.is_null())
      o.reset();
    else
      o = j.get<T>();
  }
};
NLOHMANN_JSON_NAMESPACE_END

namespace eqmorse {

using Labelled = std::map<std::string, long long>;

struct ClassRecord {
  std::string label;
  int order = 0;
  int conjugates = 0;
  int normalizer_order = 0;
  int weyl_order = 0;
  std::vector<std::string> representative;  // members as cycle strings
  int fixed_dim = 0;
  friend bool operator==(const ClassRecord&, const ClassRecord&) = default;
};

struct GroupRecord {
  int order = 0;
  int effective_order = 0;
  std::vector<std::string> generators;
  std::vector<ClassRecord> classes;
  std::vector<std::vector<long long>> marks;
  friend bool operator==(const GroupRecord&, const GroupRecord&) = default;
};

struct CheckRecord {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  std::string detail;
  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct ClassRow {
  std::string label;
  int fixed_dim = 0;
  int chi_X = 0;
  int chi_d1_plus = 0, chi_d1_minus = 0;
  int chi_d2_plus = 0, chi_d2_minus = 0;
  long long strata_sum = 0;
  long long zero_sum = 0;
  long long ch_index = 0;
  friend bool operator==(const ClassRow&, const ClassRow&) = default;
};

struct ZeroRecord {
  std::vector<double> location;
  int sign = 0;
  std::string stabilizer;  // class label in G
  std::vector<long long> local_characters;
  Labelled induced_degree;  // contribution of this zero's orbit type, in A(G)
  friend bool operator==(const ZeroRecord&, const ZeroRecord&) = default;
};

struct IndexRecord {
  Labelled index_local, index_strata;
  Labelled chi_G_X, chi_G_d1_plus, chi_G_d2_plus;
  std::vector<ClassRow> per_class;
  std::vector<ZeroRecord> zeros;
  int boundary_degree = 0;
  std::vector<CheckRecord> checks;
  friend bool operator==(const IndexRecord&, const IndexRecord&) = default;
};

struct ArcRecord {
  int loop = 0;
  int sign = 0;
  int begin = -1, end = -1;
  double begin_position = 0.0, end_position = 0.0;
  friend bool operator==(const ArcRecord&, const ArcRecord&) = default;
};

struct TangencyRecord {
  std::array<double, 2> location{};
  bool plus = false;
  double h_derivative = 0.0;
  int loop = 0;
  friend bool operator==(const TangencyRecord&, const TangencyRecord&) = default;
};

/// Planar stratification export; arcs index into loop points by position.
struct StrataRecord {
  std::vector<std::vector<std::array<double, 2>>> loops;
  std::vector<ArcRecord> arcs;
  std::vector<TangencyRecord> tangencies;
  friend bool operator==(const StrataRecord&, const StrataRecord&) = default;
};

struct BoundRecord {
  long long bound = 0, value = 0, margin = 0;
  std::vector<int> subset_J;
  int d_V = 0;
  bool applicable = true, holds = true;
  friend bool operator==(const BoundRecord&, const BoundRecord&) = default;
};

struct BoundsRecord {
  int d = 0;
  std::vector<int> ms;
  bool infinity_passed = true;
  std::string infinity_note;
  std::map<std::string, BoundRecord> table;  // keyed by class label
  friend bool operator==(const BoundsRecord&, const BoundsRecord&) = default;
};

struct GaussRowRecord {
  std::string label;
  int fixed_dim = 0;
  long long direct_degree = 0, strata_degree = 0, euler_minus_index = 0;
  std::optional<double> curvature;
  long long curvature_rhs = 0;
  friend bool operator==(const GaussRowRecord&, const GaussRowRecord&) = default;
};

struct GaussRecord {
  Labelled deg_G, strata_G;
  std::vector<GaussRowRecord> per_class;
  std::vector<CheckRecord> checks;
  friend bool operator==(const GaussRecord&, const GaussRecord&) = default;
};

struct StabilityRecord {
  bool refined_equal = false;
  bool perturbed_equal = false;
  int refined_grid = 0;
  double perturbation = 0.0;
  std::uint64_t seed = 0;
  std::string detail;
  friend bool operator==(const StabilityRecord&, const StabilityRecord&) = default;
};

struct Refusal {
  std::string stage;
  std::string error;
  std::string hypothesis;
  std::string message;
  friend bool operator==(const Refusal&, const Refusal&) = default;
};

struct Report {
  int schema = 1;
  std::string name;
  std::string command;
  nlohmann::json problem;
  nlohmann::json tolerances;
  std::optional<GroupRecord> group;
  std::optional<IndexRecord> index;
  std::optional<StrataRecord> strata;
  std::optional<BoundsRecord> bounds;
  std::optional<GaussRecord> gauss;
  std::optional<StabilityRecord> stability;
  std::optional<Refusal> refusal;
  std::vector<std::string> warnings;
  std::string verdict;  // pass, fail, refused, internal_error
  int exit_code = 0;
  std::optional<std::map<std::string, double>> timings;
  friend bool operator==(const Report&, const Report&) = default;
};

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ClassRecord, label, order, conjugates, normalizer_order, weyl_order, representative, fixed_dim)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GroupRecord, order, effective_order, generators, classes, marks)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CheckRecord, name, passed, residual, detail)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ClassRow, label, fixed_dim, chi_X, chi_d1_plus, chi_d1_minus, chi_d2_plus, chi_d2_minus, strata_sum,
                                   zero_sum, ch_index)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ZeroRecord, location, sign, stabilizer, local_characters, induced_degree)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(IndexRecord, index_local, index_strata, chi_G_X, chi_G_d1_plus, chi_G_d2_plus, per_class, zeros,
                                   boundary_degree, checks)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ArcRecord, loop, sign, begin, end, begin_position, end_position)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(TangencyRecord, location, plus, h_derivative, loop)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(StrataRecord, loops, arcs, tangencies)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BoundRecord, bound, value, margin, subset_J, d_V, applicable, holds)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BoundsRecord, d, ms, infinity_passed, infinity_note, table)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GaussRowRecord, label, fixed_dim, direct_degree, strata_degree, euler_minus_index, curvature,
                                   curvature_rhs)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(GaussRecord, deg_G, strata_G, per_class, checks)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(StabilityRecord, refined_equal, perturbed_equal, refined_grid, perturbation, seed, detail)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Refusal, stage, error, hypothesis, message)

inline void to_json(nlohmann::json& j, const Report& r) {
  j = nlohmann::json{{"schema", r.schema},   {"name", r.name},           {"command", r.command},       {"problem", r.problem},
                     {"tolerances", r.tolerances}, {"group", r.group}, {"index", r.index},           {"strata", r.strata},
                     {"bounds", r.bounds},   {"gauss", r.gauss},         {"stability", r.stability},   {"refusal", r.refusal},
                     {"warnings", r.warnings}, {"verdict", r.verdict},   {"exit_code", r.exit_code}};
  if (r.timings) j["timings"] = *r.timings;
}

inline void from_json(const nlohmann::json& j, Report& r) {
  j.at("schema").get_to(r.schema);
  j.at("name").get_to(r.name);
  j.at("command").get_to(r.command);
  r.problem = j.at("problem");
  r.tolerances = j.at("tolerances");
  j.at("group").get_to(r.group);
  j.at("index").get_to(r.index);
  j.at("strata").get_to(r.strata);
  j.at("bounds").get_to(r.bounds);
  j.at("gauss").get_to(r.gauss);
  j.at("stability").get_to(r.stability);
  j.at("refusal").get_to(r.refusal);
  j.at("warnings").get_to(r.warnings);
  j.at("verdict").get_to(r.verdict);
  j.at("exit_code").get_to(r.exit_code);
  if (j.contains("timings"))
    r.timings = j.at("timings").get<std::map<std::string, double>>();
  else
    r.timings.reset();
}

// ---------------------------------------------------------------------------
// Builders from computed objects

inline nlohmann::json tolerances_json(const Tolerances& tol) {
  nlohmann::json j = nlohmann::json::object();
  Tolerances copy = tol;
  for_each_tolerance(copy, [&](const char* name, auto& value, const char*) { j[name] = value; });
  j["profile"] = tol.profile;
  return j;
}

inline GroupRecord group_record(const Symmetry& sym) {
  GroupRecord g;
  g.order = sym.group.order();
  g.effective_order = sym.effective_order();
  for (const auto& p : sym.group.generators) g.generators.push_back(to_cycle_string(p));
  for (std::size_t c = 0; c < sym.class_count(); ++c) {
    const auto& cls = sym.table.classes[c];
    ClassRecord r;
    r.label = cls.label;
    r.order = cls.representative.order();
    r.conjugates = static_cast<int>(cls.conjugates.size());
    r.normalizer_order = cls.normalizer.order();
    r.weyl_order = cls.weyl_order;
    for (int e : cls.representative.member_indices) r.representative.push_back(to_cycle_string(sym.group.elements[static_cast<std::size_t>(e)]));
    r.fixed_dim = sym.fixed[c].dim_fixed();
    g.classes.push_back(std::move(r));
  }
  g.marks = sym.table.marks;
  return g;
}

inline CheckRecord check_record(const Check& c) { return {c.name, c.passed, c.residual, c.detail}; }

inline IndexRecord index_record(const MorseAnalysis& a, const Symmetry& sym) {
  IndexRecord r;
  r.index_local = labelled(a.index_local, sym.table);
  r.index_strata = labelled(a.index_strata, sym.table);
  r.chi_G_X = labelled(a.chi_G_X, sym.table);
  r.chi_G_d1_plus = labelled(a.chi_G_d1_plus, sym.table);
  r.chi_G_d2_plus = labelled(a.chi_G_d2_plus, sym.table);
  for (const auto& c : a.per_class)
    r.per_class.push_back({c.label, c.fixed_dim, c.chi_X, c.chi_d1_plus, c.chi_d1_minus, c.chi_d2_plus, c.chi_d2_minus, c.strata_sum,
                           c.zero_sum, c.ch_index});
  for (const auto& z : a.zeros) {
    ZeroRecord zr;
    zr.location.assign(z.location.data(), z.location.data() + z.location.size());
    zr.sign = z.sign;
    zr.stabilizer = z.stabilizer_class >= 0 ? sym.table.classes[static_cast<std::size_t>(z.stabilizer_class)].label : "?";
    zr.local_characters = z.local_characters.values;
    zr.induced_degree = labelled(induce(sym.table, z.local_group, z.local_table, z.local_degree), sym.table);
    r.zeros.push_back(std::move(zr));
  }
  r.boundary_degree = a.balance.boundary_degree;
  for (const auto& c : a.checks) r.checks.push_back(check_record(c));
  return r;
}

inline StrataRecord strata_record(const BoundaryTrace& trace, const Stratification& st) {
  StrataRecord r;
  for (const auto& loop : trace.loops) {
    std::vector<std::array<double, 2>> pts;
    for (const auto& p : loop.points) pts.push_back({p.x(), p.y()});
    r.loops.push_back(std::move(pts));
  }
  auto add_arcs = [&](const std::vector<Arc>& arcs) {
    for (const auto& a : arcs) r.arcs.push_back({a.loop, a.sign, a.begin, a.end, a.begin_position, a.end_position});
  };
  add_arcs(st.plus_arcs);
  add_arcs(st.minus_arcs);
  for (const auto& t : st.tangency_points) r.tangencies.push_back({{t.location.x(), t.location.y()}, t.is_plus, t.h_derivative, t.loop});
  return r;
}

inline BoundsRecord bounds_record(const BoundsReport& b) {
  BoundsRecord r;
  r.d = b.d;
  r.ms = b.ms;
  r.infinity_passed = b.infinity_passed;
  r.infinity_note = b.infinity_note;
  for (const auto& row : b.rows) r.table[row.label] = {row.bound, row.value, row.margin, row.subset_J, row.d_V, row.applicable, row.holds};
  return r;
}

inline GaussRecord gauss_record(const GaussReport& g, const Symmetry& sym) {
  GaussRecord r;
  r.deg_G = labelled(g.deg_G, sym.table);
  r.strata_G = labelled(g.strata_G, sym.table);
  for (const auto& row : g.per_class)
    r.per_class.push_back({row.label, row.fixed_dim, row.direct_degree, row.strata_degree, row.euler_minus_index, row.curvature, row.curvature_rhs});
  for (const auto& c : g.checks) r.checks.push_back(check_record(c));
  return r;
}

}  // namespace eqmorse

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Each criterion prints its failed sub-checks underneath.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "support.hpp"

using namespace eqtest;

namespace {

struct Criterion {
  int id;
  std::string title;
  double time_limit;  // seconds, 0 = none
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string text(const BurnsideElement& e, const MarksTable& t) { return to_string(e, t); }

// ---------------------------------------------------------------------------

void burnside_exactness(Criterion& c) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> coef(-50, 50);
  std::uniform_int_distribution<int> small(-4, 4);
  for (const auto& gc : small_groups()) {
    FiniteGroup g = group_of(gc);
    MarksTable t = marks_table(g);
    for (std::size_t k = 0; k < t.size(); ++k) {
      c.expect(t.at(k, k) == t.classes[k].weyl_order, gc.name + ": diagonal mark of " + t.classes[k].label + " is not |WH|");
      for (std::size_t h = k + 1; h < t.size(); ++h)
        c.expect(t.at(k, h) == 0, gc.name + ": table of marks is not lower triangular");
    }
    for (int trial = 0; trial < 1000; ++trial) {
      BurnsideElement x = BurnsideElement::zero(t);
      for (auto& v : x.coefficients) v = coef(rng);
      if (!(from_characters(ch_map(x, t), t) == x)) {
        c.expect(false, gc.name + ": from_characters(ch(x)) != x for x = " + text(x, t));
        break;
      }
    }
    const BurnsideElement one = BurnsideElement::one(t);
    for (int trial = 0; trial < 100; ++trial) {
      BurnsideElement x = BurnsideElement::zero(t), y = x, z = x;
      for (std::size_t i = 0; i < t.size(); ++i) {
        x.coefficients[i] = small(rng);
        y.coefficients[i] = small(rng);
        z.coefficients[i] = small(rng);
      }
      c.expect(ring_multiply(ring_multiply(x, y, t), z, t) == ring_multiply(x, ring_multiply(y, z, t), t), gc.name + ": product not associative");
      c.expect(ring_multiply(one, x, t) == x && ring_multiply(x, one, t) == x, gc.name + ": [G/G] is not the identity");
    }
  }
}

// ---------------------------------------------------------------------------

std::vector<MorseAnalysis> morse_runs(const Tolerances& tol) {
  std::vector<MorseAnalysis> out;
  for (const auto& sc : morse_scenarios()) out.push_back(verify_identities(sc.v, sc.dom, sc.sym, tol));
  return out;
}

void morse_formula(Criterion& c) {
  Tolerances tol;
  auto scenarios = morse_scenarios();
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const auto& sc = scenarios[i];
    try {
      MorseAnalysis a = verify_identities(sc.v, sc.dom, sc.sym, tol);
      const auto expected = from_labelled(sc.expected, sc.sym.table);
      c.expect(a.index_local == expected, sc.name + ": local index " + text(a.index_local, sc.sym.table) + ", expected " + text(expected, sc.sym.table));
      c.expect(a.index_strata == a.index_local, sc.name + ": strata route gives " + text(a.index_strata, sc.sym.table));
      for (const auto& ch : a.checks) c.expect(ch.passed, sc.name + ": " + ch.name + " failed (" + ch.detail + ")");
      if (i == 0) {
        const std::size_t tangencies = a.strata ? a.strata->tangency_points.size() : 0;
        c.expect(tangencies == 4, sc.name + ": " + std::to_string(tangencies) + " tangencies, expected 4 = 2|Z2|");
      }
    } catch (const Error& e) {
      c.expect(false, sc.name + ": " + e.what());
    }
  }
}

void stability(Criterion& c) {
  Tolerances tol;
  Tolerances fine = tol;
  fine.grid_resolution *= 2;
  auto scenarios = morse_scenarios();
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    const auto& sc = scenarios[i];
    try {
      const auto base = integer_signature(verify_identities(sc.v, sc.dom, sc.sym, tol));
      c.expect(integer_signature(verify_identities(sc.v, sc.dom, sc.sym, fine)) == base, sc.name + ": doubled grid changes an integer output");
      for (std::uint64_t seed : {1u, 2u, 3u}) {
        int deg = 1;
        for (const auto& p : sc.v.components) deg = std::max(deg, p.degree());
        VectorField w = add_fields(sc.v, random_invariant_perturbation(sc.sym, deg, 1e-6, seed));
        c.expect(check_invariance(sc.sym.rep, sc.sym.group, w).passed, sc.name + ": perturbation is not invariant");
        c.expect(integer_signature(verify_identities(w, sc.dom, sc.sym, tol)) == base,
                 sc.name + ": perturbation with seed " + std::to_string(seed) + " changes an integer output");
      }
    } catch (const Error& e) {
      c.expect(false, sc.name + ": " + e.what());
    }
  }
}

// ---------------------------------------------------------------------------

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

void khovanskii(Criterion& c) {
  // every multiset of positive m_i with sum <= 24, every d <= 10
  std::vector<int> cur;
  long long cases = 0;
  std::function<void(int, int)> rec = [&](int left, int max_part) {
    if (!cur.empty())
      for (int d = 0; d <= 10; ++d) {
        ++cases;
        if (lattice_bound(d, cur) != brute_lattice(d, cur)) {
          std::string ms;
          for (int m : cur) ms += std::to_string(m) + " ";
          c.expect(false, "O(" + std::to_string(d) + "; " + ms + ") disagrees with enumeration");
        }
      }
    for (int p = std::min(left, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(24, 24);
  c.expect(cases > 70000, "too few lattice cases enumerated");

  Tolerances tol;
  auto scenarios = morse_scenarios();
  for (std::size_t i : {0u, 1u}) {
    const auto& sc = scenarios[i];
    MorseAnalysis a = verify_identities(sc.v, sc.dom, sc.sym, tol);
    BoundsReport rep = verify_bounds(sc.sym, ch_map(a.index_local, sc.sym.table), sc.v, sc.dom.q, {1, 1}, tol);
    c.expect(rep.infinity_passed, sc.name + ": non-degeneracy at infinity not confirmed");
    for (const auto& row : rep.rows)
      c.expect(row.holds, sc.name + ": |ch_" + row.label + "| = " + std::to_string(std::abs(row.value)) + " exceeds " + std::to_string(row.bound));
  }

  // ball case: Q = r^2 - |x|^2, d = 2 on every fixed subspace
  for (double r : {0.5, 1.0, 2.0}) {
    Domain ball{parse_poly(std::to_string(r * r) + " - x^2 - y^2", 2), 1.5 * r};
    for (std::size_t i : {0u, 1u}) {
      const auto& sc = scenarios[i];
      MorseAnalysis a = verify_identities(sc.v, ball, sc.sym, tol);
      BoundsReport rep = verify_bounds(sc.sym, ch_map(a.index_local, sc.sym.table), sc.v, ball.q, {1, 1}, tol, 2);
      for (const auto& row : rep.rows) {
        c.expect(row.d_V == 2 && row.bound == lattice_bound(2, std::vector<int>(row.subset_J.size(), 1)), sc.name + ": ball bound not O(2; 1..1)");
        c.expect(row.holds, sc.name + ": ball bound violated for " + row.label);
      }
    }
  }
}

// ---------------------------------------------------------------------------

void gauss(Criterion& c) {
  Tolerances tol;
  Symmetry z2 = z2_flip();
  struct Case {
    std::string name;
    Domain dom;
    double curvature;
  };
  std::vector<GaussReport> annulus_reports;
  for (const auto& gc : {Case{"disk", unit_disk(), 1.0}, Case{"annulus", annulus(), 0.0}}) {
    try {
      GaussReport g = equivariant_gauss_degree(field({"1", "0"}), gc.dom, z2, tol);
      for (const auto& row : g.per_class) {
        c.expect(row.direct_degree == row.euler_minus_index && row.direct_degree == row.strata_degree,
                 gc.name + " " + row.label + ": direct " + std::to_string(row.direct_degree) + ", chi - ind " +
                     std::to_string(row.euler_minus_index) + ", strata " + std::to_string(row.strata_degree));
        if (row.curvature) {
          c.expect(std::abs(*row.curvature - gc.curvature) <= 1e-3, gc.name + ": curvature integral " + std::to_string(*row.curvature));
          c.expect(std::abs(*row.curvature - double(row.curvature_rhs)) <= 1e-3, gc.name + ": curvature does not match the strata side");
        }
      }
      for (const auto& ch : g.checks) c.expect(ch.passed, gc.name + ": " + ch.name + " failed (" + ch.detail + ")");
      if (gc.name == "annulus") annulus_reports.push_back(g);
    } catch (const Error& e) {
      c.expect(false, gc.name + ": " + e.what());
    }
  }
  try {
    GaussReport other = equivariant_gauss_degree(field({"3 + x + y^2", "y/2"}), annulus(), z2, tol);
    c.expect(!annulus_reports.empty() && other.deg_G == annulus_reports.front().deg_G, "annulus: Deg_G depends on the field");
  } catch (const Error& e) {
    c.expect(false, std::string("annulus, second field: ") + e.what());
  }
}

// ---------------------------------------------------------------------------

void hypotheses(Criterion& c) {
  struct Case {
    std::string name;
    std::string body;
    std::string error;
  };
  const std::string disk = R"("domain": {"q": "1 - x^2 - y^2", "bounding_radius": 1.5})";
  const std::vector<Case> cases{
      {"boundary zero", R"("field": ["x - 1", "y"], )" + disk, "BoundaryZero"},
      {"degenerate tangency", R"("field": ["1", "x"], )" + disk, "GenericityFailure"},
      {"non-invariant field", R"("representation": {"dim": 2, "generators": [[[1, 0], [0, -1]]]}, "field": ["x", "1 + y"], )" + disk, "NotInvariant"},
      {"non-compact Q", R"("field": ["x", "-y"], "domain": {"q": "1 - x^2 + y^2", "bounding_radius": 1.5})", "NotCompact"},
      {"forced zero", R"("representation": {"dim": 2, "generators": [{"rotation": 3}]}, "field": ["-x", "-y"], )" + disk +
                          R"(, "options": {"checks": ["gauss"]})",
       "FieldVanishes"},
  };
  for (const auto& k : cases) {
    Report r = run_pipeline(parse_problem_text(problem_text(k.body)));
    c.expect(r.exit_code == 2, k.name + ": exit code " + std::to_string(r.exit_code));
    c.expect(r.refusal && r.refusal->error == k.error, k.name + ": refusal is " + (r.refusal ? r.refusal->error : std::string("missing")));
    c.expect(r.refusal && !r.refusal->hypothesis.empty(), k.name + ": refusal does not name a hypothesis");
  }
}

}  // namespace

int main() {
  struct Entry {
    Criterion c;
    std::function<void(Criterion&)> run;
  };
  std::vector<Entry> entries{
      {{1, "Burnside algebra exactness", 5.0, {}}, burnside_exactness},
      {{2, "equivariant Morse formula on the scenario suite", 0.0, {}}, morse_formula},
      {{3, "stability under refinement and invariant perturbation", 0.0, {}}, stability},
      {{4, "Khovanskii lattice bounds", 10.0, {}}, khovanskii},
      {{5, "Gauss-map degree and curvature identities", 0.0, {}}, gauss},
      {{6, "hypothesis enforcement", 0.0, {}}, hypotheses},
  };
  int failed = 0;
  for (auto& e : entries) {
    auto t0 = std::chrono::steady_clock::now();
    try {
      e.run(e.c);
    } catch (const std::exception& ex) {
      e.c.failures.push_back(std::string("unexpected exception: ") + ex.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (e.c.time_limit > 0 && secs > e.c.time_limit) e.c.failures.push_back("took " + std::to_string(secs) + " s, limit " + std::to_string(e.c.time_limit) + " s");
    const bool ok = e.c.failures.empty();
    failed += !ok;
    std::printf("CRITERION %d %s: %s (%.2f s)\n", e.c.id, ok ? "PASS" : "FAIL", e.c.title.c_str(), secs);
    for (const auto& f : e.c.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

#pragma once

// Orchestration: problem spec -> report. Each stage runs under a guard that
// converts errors into a structured refusal (exit 2) or an internal failure
// (exit 3). Exit 1 means every hypothesis held but some check failed.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "eqmorse/gauss.hpp"
#include "eqmorse/khovanskii.hpp"
#include "eqmorse/morse.hpp"
#include "eqmorse/problem.hpp"
#include "eqmorse/report.hpp"
#include "eqmorse/symmetry.hpp"

namespace eqmorse {

enum class Command { Verify, Bounds, Marks, Render, Gauss };

inline const char* command_name(Command c) {
  switch (c) {
    case Command::Verify: return "verify";
    case Command::Bounds: return "bounds";
    case Command::Marks: return "marks";
    case Command::Render: return "render";
    case Command::Gauss: return "gauss";
  }
  return "?";
}

struct RunOptions {
  Command command = Command::Verify;
  int grid = 0;             // 0 keeps the problem's value
  std::string tol_profile;  // empty keeps the problem's profile
  std::uint64_t seed = 1;
  bool timings = false;
  bool force_stability = false;
};

/// Everything the renderer and tests may want beyond the JSON report.
struct RunArtifacts {
  std::optional<Symmetry> sym;
  std::optional<MorseAnalysis> morse;
  std::optional<GaussReport> gauss;
  std::optional<BoundsReport> bounds;
};

/// Integers that must not move under refinement or small perturbation.
inline std::vector<long long> integer_signature(const MorseAnalysis& a) {
  std::vector<long long> sig;
  for (const auto& c : a.per_class)
    for (long long x : {(long long)c.chi_X, (long long)c.chi_d1_plus, (long long)c.chi_d1_minus, (long long)c.chi_d2_plus,
                        (long long)c.chi_d2_minus, c.strata_sum, c.zero_sum, c.ch_index})
      sig.push_back(x);
  for (long long x : a.index_local.coefficients) sig.push_back(x);
  for (long long x : a.index_strata.coefficients) sig.push_back(x);
  std::vector<long long> signs;
  for (const auto& z : a.zeros) signs.push_back(z.sign * 1000 + z.stabilizer_class);
  std::sort(signs.begin(), signs.end());
  sig.push_back(static_cast<long long>(a.zeros.size()));
  sig.insert(sig.end(), signs.begin(), signs.end());
  sig.push_back(a.balance.boundary_degree);
  return sig;
}

/// Random invariant field with max coefficient `size`, monomials up to `degree`.
inline VectorField random_invariant_perturbation(const Symmetry& sym, int degree, double size, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const int n = sym.dim();
  std::vector<Poly> comps;
  for (int i = 0; i < n; ++i) {
    Poly p(n);
    for (int a = 0; a <= degree; ++a)
      for (int b = 0; b <= (n == 2 ? degree - a : 0); ++b) {
        Exponent e(static_cast<std::size_t>(n), 0);
        e[0] = a;
        if (n == 2) e[1] = b;
        Poly mono = Poly::constant(n, coef(rng));
        for (int k = 0; k < n; ++k) mono = mono * Poly::variable(n, k).pow(e[static_cast<std::size_t>(k)]);
        p += mono;
      }
    comps.push_back(p);
  }
  VectorField w = symmetrize(sym.rep, sym.group, VectorField::from_components(std::move(comps)));
  const double m = w.max_abs_coeff();
  if (m > 0.0)
    for (auto& c : w.components) c = c * (size / m);
  return w;
}

inline VectorField add_fields(const VectorField& a, const VectorField& b) {
  std::vector<Poly> comps;
  for (int i = 0; i < a.dim(); ++i) comps.push_back(a.components[static_cast<std::size_t>(i)] + b.components[static_cast<std::size_t>(i)]);
  VectorField out = VectorField::from_components(std::move(comps));
  out.degree_bounds = a.degree_bounds;
  return out;
}

namespace detail {

class StageRunner {
 public:
  StageRunner(Report& r, bool timings) : r_(r), timings_(timings) {}

  /// Runs f unless an earlier stage stopped the pipeline. Returns false once stopped.
  template <class F>
  bool operator()(const std::string& stage, F&& f) {
    if (stopped_) return false;
    auto t0 = std::chrono::steady_clock::now();
    try {
      f();
    } catch (const Error& e) {
      stop(stage, e.kind(), e.detail());
    } catch (const std::exception& e) {
      r_.refusal = Refusal{stage, "Internal", "", e.what()};
      r_.verdict = "internal_error";
      r_.exit_code = 3;
      stopped_ = true;
    }
    if (timings_) {
      if (!r_.timings) r_.timings.emplace();
      (*r_.timings)[stage] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    return !stopped_;
  }

  bool stopped() const { return stopped_; }

 private:
  void stop(const std::string& stage, ErrorKind kind, const std::string& message) {
    const bool internal = classify(kind) == ErrorClass::Internal;
    r_.refusal = Refusal{stage, std::string(to_string(kind)), std::string(hypothesis_of(kind)), message};
    r_.verdict = internal ? "internal_error" : "refused";
    r_.exit_code = internal ? 3 : 2;
    stopped_ = true;
  }

  Report& r_;
  bool timings_;
  bool stopped_ = false;
};

}  // namespace detail

inline Report run_pipeline(ProblemSpec spec, const RunOptions& opt = {}, RunArtifacts* out = nullptr) {
  Report r;
  r.name = spec.name;
  r.command = command_name(opt.command);
  r.problem = spec.source;
  r.warnings = spec.warnings;

  if (!opt.tol_profile.empty()) {
    Tolerances keep = spec.tol;
    if (!apply_profile(spec.tol, opt.tol_profile)) {
      r.refusal = Refusal{"options", "ValidationError", "", "unknown tolerance profile " + opt.tol_profile};
      r.verdict = "refused";
      r.exit_code = 2;
      r.tolerances = tolerances_json(keep);
      return r;
    }
  }
  if (opt.grid > 0) spec.tol.grid_resolution = opt.grid;
  const Tolerances& tol = spec.tol;
  r.tolerances = tolerances_json(tol);

  CheckSelection want = spec.checks;
  switch (opt.command) {
    case Command::Verify: break;
    case Command::Bounds: want = {true, true, false, false}; break;
    case Command::Gauss: want = {false, false, true, false}; break;
    case Command::Marks:
    case Command::Render: want = {false, false, false, false}; break;
  }
  if (opt.force_stability) want.stability = true;

  RunArtifacts local;
  RunArtifacts& art = out ? *out : local;
  detail::StageRunner stage(r, opt.timings);
  const int n = spec.dim;

  FiniteGroup group;
  stage("group", [&] {
    std::vector<Permutation> gens = spec.group_given ? spec.generators
                                    : spec.matrices.empty() ? std::vector<Permutation>{}
                                                            : permutations_from_matrices(spec.matrices, n, tol.group_cap);
    group = group_closure(gens, tol.group_cap);
  });
  OrthRep rep;
  stage("representation", [&] { rep = build_representation(group, spec.matrices, n, tol.orthogonality); });
  stage("marks", [&] {
    art.sym = make_symmetry(group, rep, tol.fixed_space_rank);
    r.group = group_record(*art.sym);
  });
  if (opt.command == Command::Marks) {
    if (!stage.stopped()) r.verdict = "pass";
    return r;
  }
  const Symmetry* sym = art.sym ? &*art.sym : nullptr;

  stage("invariance", [&] { require_invariant(spec.field, spec.domain, *sym, tol); });
  stage("domain", [&] {
    if (spec.domain.dim() != n) throw Error(ErrorKind::DimensionMismatch, "Q and the field live in different dimensions");
    certify_compact(spec.domain);
  });

  if (opt.command == Command::Render) {
    stage("strata", [&] {
      if (n != 2) {
        r.warnings.push_back("render: the problem is one-dimensional, nothing to draw");
        return;
      }
      art.morse = verify_identities(spec.field, spec.domain, *sym, tol);
      r.index = index_record(*art.morse, *sym);
      r.strata = strata_record(*art.morse->trace, *art.morse->strata);
    });
    if (!stage.stopped()) r.verdict = "pass";
    return r;
  }

  bool all_pass = true;
  std::vector<int> ms = spec.degree_bounds_given ? spec.degree_bounds : resolve_degree_bounds(spec.field);

  if (want.bounds) {
    stage("infinity", [&] {
      InfinityReport inf = infinity_check(spec.field, tol.infinity_common_zero);
      if (!(inf.applicable && inf.passed))
        r.warnings.push_back("non-degeneracy at infinity not confirmed; index bounds are reported as not applicable" +
                             (inf.note.empty() ? std::string() : " (" + inf.note + ")"));
    });
  }

  if (want.morse || want.bounds) {
    stage("morse", [&] {
      art.morse = verify_identities(spec.field, spec.domain, *sym, tol);
      r.index = index_record(*art.morse, *sym);
      if (n == 2) r.strata = strata_record(*art.morse->trace, *art.morse->strata);
      if (want.morse && !art.morse->passed()) all_pass = false;
    });
  }

  if (want.bounds) {
    stage("bounds", [&] {
      art.bounds = verify_bounds(*sym, ch_map(art.morse->index_local, sym->table), spec.field, spec.domain.q, ms, tol);
      r.bounds = bounds_record(*art.bounds);
      if (!art.bounds->passed()) all_pass = false;
    });
  }

  if (want.gauss) {
    stage("gauss", [&] {
      art.gauss = equivariant_gauss_degree(spec.field, spec.domain, *sym, tol);
      r.gauss = gauss_record(*art.gauss, *sym);
      if (!art.gauss->passed()) all_pass = false;
    });
  }

  if (want.stability) {
    stage("stability", [&] {
      if (!art.morse) art.morse = verify_identities(spec.field, spec.domain, *sym, tol);
      const auto base = integer_signature(*art.morse);
      StabilityRecord s;
      Tolerances fine = tol;
      fine.grid_resolution = 2 * tol.grid_resolution;
      s.refined_grid = fine.grid_resolution;
      s.refined_equal = integer_signature(verify_identities(spec.field, spec.domain, *sym, fine)) == base;

      int deg = 1;
      for (const auto& c : spec.field.components) deg = std::max(deg, c.degree());
      s.perturbation = 1e-6 * std::max(1.0, spec.field.max_abs_coeff());
      s.seed = opt.seed;
      VectorField pert = add_fields(spec.field, random_invariant_perturbation(*sym, deg, s.perturbation, opt.seed));
      s.perturbed_equal = integer_signature(verify_identities(pert, spec.domain, *sym, tol)) == base;
      s.detail = std::string("refined grid ") + (s.refined_equal ? "agrees" : "differs") + "; perturbed field " +
                 (s.perturbed_equal ? "agrees" : "differs");
      if (!(s.refined_equal && s.perturbed_equal)) all_pass = false;
      r.stability = s;
    });
  }

  if (!stage.stopped()) {
    r.verdict = all_pass ? "pass" : "fail";
    r.exit_code = all_pass ? 0 : 1;
  }
  return r;
}

}  // namespace eqmorse

// eqmorse command line: verify / bounds / marks / render / gauss.
//
// Exit codes: 0 all requested checks pass, 1 a check failed, 2 the input was
// refused (parse/validation error or a violated hypothesis), 3 internal
// inconsistency.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eqmorse/eqmorse.hpp"

namespace {

std::string tolerance_footer() {
  std::string s = "Tolerance defaults (override per problem under options.tolerances):\n";
  eqmorse::Tolerances t;
  eqmorse::for_each_tolerance(t, [&](const char* name, auto& value, const char* what) {
    char buf[160];
    if constexpr (std::is_integral_v<std::decay_t<decltype(value)>>)
      std::snprintf(buf, sizeof buf, "  %-22s %-10d %s\n", name, value, what);
    else
      std::snprintf(buf, sizeof buf, "  %-22s %-10.3g %s\n", name, value, what);
    s += buf;
  });
  s += "Profiles: default, strict (grid 1024, tighter polish), coarse (grid 256).\n";
  s += "Exit codes: 0 pass, 1 check failed, 2 refused, 3 internal error.\n";
  return s;
}

int emit(const nlohmann::json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f || !(f << text)) {
    std::cerr << "eqmorse: cannot write " << out << "\n";
    return 2;
  }
  return 0;
}

void summarize(const eqmorse::Report& r) {
  std::cerr << "eqmorse " << r.command << " " << (r.name.empty() ? "<unnamed>" : r.name) << ": " << r.verdict;
  if (r.refusal) {
    std::cerr << " at stage " << r.refusal->stage << " (" << r.refusal->error << ": " << r.refusal->message << ")";
    if (!r.refusal->hypothesis.empty()) std::cerr << "\n  violated hypothesis: " << r.refusal->hypothesis;
  }
  std::cerr << "\n";
  auto list = [](const std::vector<eqmorse::CheckRecord>& checks) {
    for (const auto& c : checks) std::cerr << "  " << (c.passed ? "ok   " : "FAIL ") << c.name << "  " << c.detail << "\n";
  };
  if (r.index) list(r.index->checks);
  if (r.gauss) list(r.gauss->checks);
  for (const auto& w : r.warnings) std::cerr << "  warning: " << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equivariant Morse index, Khovanskii bounds and Gauss-map degrees for invariant polynomial fields"};
  app.footer(tolerance_footer());
  app.require_subcommand(1);

  std::string problem, out, profile;
  int grid = 0;
  std::uint64_t seed = 1;
  bool timings = false, stability = false, quiet = false;
  int direct_d = -1;
  std::vector<int> direct_ms;

  auto common = [&](CLI::App* sub, bool need_problem) {
    auto* p = sub->add_option("problem", problem, "problem file (JSON, schema 1)");
    if (need_problem) p->required()->check(CLI::ExistingFile);
    sub->add_option("--grid", grid, "marching-squares grid resolution (overrides the problem)")->check(CLI::Range(8, 8192));
    sub->add_option("--tol-profile", profile, "tolerance profile: default, strict, coarse");
    sub->add_option("--seed", seed, "seed for randomized stability checks");
    sub->add_option("--out", out, "output path (report JSON, or SVG for render)");
    sub->add_flag("--timings", timings, "record per-stage wall times in the report");
    sub->add_flag("-q,--quiet", quiet, "no summary on stderr");
  };

  auto* verify = app.add_subcommand("verify", "full pipeline: Morse identities, bounds and any checks the problem requests");
  common(verify, true);
  verify->add_flag("--stability", stability, "also rerun on a doubled grid and a perturbed field");
  auto* bounds = app.add_subcommand("bounds", "Khovanskii index bounds for a problem, or O(d; m) with --d/--ms");
  common(bounds, false);
  bounds->add_option("--d", direct_d, "degree of Q (direct mode)");
  bounds->add_option("--ms", direct_ms, "component degree bounds (direct mode), e.g. 3,2")->delimiter(',');
  auto* marks = app.add_subcommand("marks", "group, subgroup classes and table of marks");
  common(marks, true);
  auto* render = app.add_subcommand("render", "SVG figure of the boundary stratification");
  common(render, true);
  auto* gauss = app.add_subcommand("gauss", "equivariant Gauss-map degree of the boundary");
  common(gauss, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  using eqmorse::Command;
  if (bounds->parsed() && problem.empty()) {
    if (direct_d < 0 || direct_ms.empty()) {
      std::cerr << "eqmorse bounds: give a problem file or both --d and --ms\n";
      return 2;
    }
    try {
      nlohmann::json j{{"d", direct_d}, {"ms", direct_ms}, {"bound", eqmorse::lattice_bound(direct_d, direct_ms)}};
      return emit(j, out);
    } catch (const eqmorse::Error& e) {
      std::cerr << "eqmorse bounds: " << e.what() << "\n";
      return 2;
    }
  }

  eqmorse::RunOptions opt;
  opt.command = verify->parsed()   ? Command::Verify
                : bounds->parsed() ? Command::Bounds
                : marks->parsed()  ? Command::Marks
                : render->parsed() ? Command::Render
                                   : Command::Gauss;
  opt.grid = grid;
  opt.tol_profile = profile;
  opt.seed = seed;
  opt.timings = timings;
  opt.force_stability = stability;

  eqmorse::ProblemSpec spec;
  try {
    spec = eqmorse::parse_problem(problem);
  } catch (const eqmorse::Error& e) {
    std::cerr << "eqmorse: " << problem << ": " << e.what() << "\n";
    return 2;
  }

  eqmorse::Report report = eqmorse::run_pipeline(spec, opt);
  int code = report.exit_code;

  if (opt.command == Command::Render) {
    if (code == 0) {
      if (!report.strata) {
        if (!quiet) std::cerr << "eqmorse render: warning: no planar stratification, nothing written\n";
      } else {
        const std::string path = out.empty() ? (spec.name.empty() ? "figure" : spec.name) + ".svg" : out;
        try {
          eqmorse::render_svg(*report.strata, report.index ? &*report.index : nullptr, path);
          if (!quiet) std::cerr << "eqmorse render: wrote " << path << "\n";
        } catch (const eqmorse::Error& e) {
          std::cerr << "eqmorse render: " << e.what() << "\n";
          return 2;
        }
      }
    } else if (!quiet) {
      summarize(report);
    }
    return code;
  }

  if (!quiet) summarize(report);
  if (int w = emit(report, out); w != 0) return w;
  return code;
}

// Problem files, reports, the pipeline and SVG output.

#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace eqtest;

namespace {

const std::string kSaddle = problem_text(R"J("name": "saddle",
  "group": {"generators": ["(0 1)"]},
  "representation": {"dim": 2, "generators": [[[1, 0], [0, -1]]]},
  "field": ["x", "-y"],
  "domain": {"q": "1 - x^2 - y^2", "bounding_radius": 1.5})J");

int count(const std::string& text, const std::string& needle) {
  int n = 0;
  for (std::size_t p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
  return n;
}

Report run(const std::string& text, RunOptions opt = {}) { return run_pipeline(parse_problem_text(text), opt); }

}  // namespace

// ---------------------------------------------------------------------------
// problem files

TEST(Problem, MinimalDiskGetsDefaults) {
  auto s = parse_problem_text(problem_text(R"("field": ["-x", "-y"], "domain": {"q": "1 - x^2 - y^2", "bounding_radius": 1.5})"));
  EXPECT_EQ(s.dim, 2);
  EXPECT_EQ(s.tol.grid_resolution, 512);
  EXPECT_EQ(s.tol.profile, "default");
  EXPECT_TRUE(s.checks.morse);
  EXPECT_FALSE(s.checks.gauss);
  EXPECT_EQ(s.degree_bounds, (std::vector<int>{1, 1}));
}

TEST(Problem, RotationShorthand) {
  auto s = parse_problem_text(problem_text(R"("representation": {"dim": 2, "generators": [{"rotation": 3}]},
    "field": ["-x", "-y"], "domain": {"q": "1 - x^2 - y^2", "bounding_radius": 1.5})"));
  ASSERT_EQ(s.matrices.size(), 1u);
  EXPECT_NEAR(s.matrices[0](0, 0), -0.5, 1e-15);
  EXPECT_NEAR(s.matrices[0](1, 0), std::sqrt(3.0) / 2, 1e-15);
}

TEST(Problem, DimensionMismatchIsAValidationError) {
  try {
    parse_problem_text(problem_text(R"("representation": {"dim": 2, "generators": [[[1,0,0],[0,1,0],[0,0,1]]]},
      "field": ["x", "y"], "domain": {"q": "1 - x^2 - y^2", "bounding_radius": 1.5})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ValidationError);
  }
}

TEST(Problem, JsonSyntaxErrorsCarryAPosition) {
  try {
    parse_problem_text("{\"schema\": 1, \"field\": [\"x\",]}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GT(e.position(), 20u);
  }
}

TEST(Problem, PolynomialErrorsCarryAPosition) {
  try {
    parse_problem_text(problem_text(R"("field": ["x", "y ^^ 2"], "domain": {"q": "1 - x^2 - y^2", "bounding_radius": 1.5})"));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("field[1]"), std::string::npos);
  }
}

TEST(Problem, TermListsAndUnknownKeys) {
  auto s = parse_problem_text(problem_text(R"("field": [[{"exp": [1, 0], "coeff": -1}], [{"exp": [0, 1], "coeff": -1}]],
    "domain": {"q": "1 - x^2 - y^2", "bounding_radius": 1.5})"));
  Eigen::VectorXd x(2);
  x << 0.3, -0.2;
  EXPECT_NEAR(s.field.eval(x)(0), -0.3, 1e-15);
  EXPECT_THROW(parse_problem_text(problem_text(R"("feild": ["x"])")), Error);
}

TEST(Problem, UnsortedDegreeBoundsWarn) {
  auto s = parse_problem_text(problem_text(R"("field": ["x", "-y"], "degree_bounds": [1, 2],
    "domain": {"q": "1 - x^2 - y^2", "bounding_radius": 1.5})"));
  EXPECT_EQ(s.degree_bounds, (std::vector<int>{2, 1}));
  EXPECT_EQ(s.warnings.size(), 1u);
}

// ---------------------------------------------------------------------------
// pipeline and report

TEST(Pipeline, SaddlePasses) {
  Report r = run(kSaddle);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.verdict, "pass");
  ASSERT_TRUE(r.index);
  EXPECT_EQ(r.index->index_local, (Labelled{{"H1_0", -1}, {"H2_0", 1}}));
  ASSERT_TRUE(r.bounds);
  EXPECT_EQ(r.bounds->table.at("H2_0").subset_J, (std::vector<int>{0}));
}

TEST(Pipeline, RefusalsNameTheHypothesis) {
  struct Case {
    std::string body;
    std::string error;
    std::string stage;
  };
  const std::vector<Case> cases{
      {R"("field": ["x - 1", "y"], "domain": {"q": "1 - x^2 - y^2", "bounding_radius": 1.5})", "BoundaryZero", "morse"},
      {R"("field": ["1", "x"], "domain": {"q": "1 - x^2 - y^2", "bounding_radius": 1.5})", "GenericityFailure", "morse"},
      {R"("representation": {"dim": 2, "generators": [[[1, 0], [0, -1]]]}, "field": ["x", "1 + y"],
          "domain": {"q": "1 - x^2 - y^2", "bounding_radius": 1.5})",
       "NotInvariant", "invariance"},
      {R"("field": ["x", "-y"], "domain": {"q": "1 - x^2 + y^2", "bounding_radius": 1.5})", "NotCompact", "domain"},
      {R"("representation": {"dim": 2, "generators": [{"rotation": 3}]}, "field": ["-x", "-y"],
          "domain": {"q": "1 - x^2 - y^2", "bounding_radius": 1.5}, "options": {"checks": ["gauss"]})",
       "FieldVanishes", "gauss"},
  };
  for (const auto& c : cases) {
    Report r = run(problem_text(c.body));
    EXPECT_EQ(r.exit_code, 2) << c.error;
    EXPECT_EQ(r.verdict, "refused");
    ASSERT_TRUE(r.refusal) << c.error;
    EXPECT_EQ(r.refusal->error, c.error);
    EXPECT_EQ(r.refusal->stage, c.stage);
    EXPECT_FALSE(r.refusal->hypothesis.empty()) << c.error;
  }
}

TEST(Pipeline, FailingCheckGivesExitOne) {
  // An impossible curvature tolerance makes the Gauss check fail without any
  // hypothesis being violated.
  Report r = run(problem_text(R"("representation": {"dim": 2, "generators": [[[1, 0], [0, -1]]]}, "field": ["1", "0"],
    "domain": {"q": "1 - x^2 - y^2", "bounding_radius": 1.5},
    "options": {"checks": ["gauss"], "tolerances": {"curvature_residual": 1e-12}})"));
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_EQ(r.verdict, "fail");
}

TEST(Pipeline, ReportRoundTrip) {
  RunOptions opt;
  opt.timings = true;
  opt.force_stability = true;
  Report r = run(kSaddle, opt);
  ASSERT_TRUE(r.stability);
  EXPECT_TRUE(r.stability->refined_equal);
  EXPECT_TRUE(r.stability->perturbed_equal);
  nlohmann::json j = r;
  Report back = nlohmann::json::parse(j.dump()).get<Report>();
  EXPECT_EQ(back, r);
  Report refused = run(problem_text(R"("field": ["x - 1", "y"], "domain": {"q": "1 - x^2 - y^2", "bounding_radius": 1.5})"));
  EXPECT_EQ(nlohmann::json(refused).get<Report>(), refused);
}

TEST(Pipeline, OutputIsDeterministic) {
  EXPECT_EQ(nlohmann::json(run(kSaddle)).dump(), nlohmann::json(run(kSaddle)).dump());
}

TEST(Pipeline, MarksOnly) {
  RunOptions opt;
  opt.command = Command::Marks;
  Report r = run(kSaddle, opt);
  EXPECT_EQ(r.exit_code, 0);
  ASSERT_TRUE(r.group);
  EXPECT_EQ(r.group->marks, (std::vector<std::vector<long long>>{{2, 0}, {1, 1}}));
  EXPECT_FALSE(r.index);
}

TEST(Pipeline, GroupFromMatricesAlone) {
  auto spec = parse_problem_text(problem_text(R"("representation": {"dim": 2, "generators": [{"rotation": 3}, {"reflection_axis": [1, 0]}]},
    "field": ["x^2 - y^2 - x/2", "-2*x*y - y/2"], "domain": {"q": "1 - x^2 - y^2", "bounding_radius": 1.5})"));
  Report r = run_pipeline(spec);
  EXPECT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.group->order, 6);
  EXPECT_EQ(r.group->classes.size(), 4u);
}

// ---------------------------------------------------------------------------
// svg

TEST(Svg, SaddleFigure) {
  Report r = run(kSaddle);
  std::string svg = svg_document(*r.strata, &*r.index);
  EXPECT_EQ(count(svg, "class=\"loop\""), 1);
  EXPECT_EQ(count(svg, "class=\"arc-plus\""), 2);
  EXPECT_EQ(count(svg, "class=\"arc-minus\""), 2);
  EXPECT_EQ(count(svg, "class=\"tangency-minus\""), 4);
  EXPECT_EQ(count(svg, "class=\"tangency-plus\""), 0);
  EXPECT_EQ(count(svg, "class=\"zero\""), 1);
  EXPECT_NE(svg.find("H2_0 (-1,1)"), std::string::npos);
  EXPECT_EQ(svg, svg_document(*run(kSaddle).strata, &*r.index));
}

TEST(Svg, AnnulusFigure) {
  Report r = run(problem_text(R"J("representation": {"dim": 2, "generators": [[[1, 0], [0, -1]]]}, "field": ["1", "0"],
    "domain": {"q": "-(x^2 + y^2 - 1/4)*(x^2 + y^2 - 4)", "bounding_radius": 2.5})J"));
  std::string svg = svg_document(*r.strata, &*r.index);
  EXPECT_EQ(count(svg, "class=\"loop\""), 2);
  EXPECT_EQ(count(svg, "class=\"tangency-plus\""), 2);
  for (const auto& t : r.strata->tangencies)
    if (t.plus) EXPECT_NEAR(std::hypot(t.location[0], t.location[1]), 0.5, 1e-8);
}

TEST(Svg, OneDimensionalIsANoOp) {
  RunOptions opt;
  opt.command = Command::Render;
  Report r = run(problem_text(R"("field": ["-x"], "domain": {"q": "1 - x^2", "bounding_radius": 1.5})"), opt);
  EXPECT_FALSE(r.strata);
  EXPECT_EQ(r.warnings.size(), 1u);
  EXPECT_FALSE(render_svg(StrataRecord{}, nullptr, "/nonexistent/dir/x.svg"));
}

TEST(Svg, WriteFailureIsAnIoError) {
  Report r = run(kSaddle);
  try {
    render_svg(*r.strata, nullptr, "/nonexistent/dir/x.svg");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IoError);
  }
}

#include <doctest.h>

#include "superflag/global_solver.hpp"
#include "superflag/linalg.hpp"
#include "superflag/parse.hpp"

using namespace superflag;

namespace {
std::size_t dim(const char* space, int degree = 2) { return solve_global_fields(FlagType::parse(space), degree).dimension; }
}  // namespace

TEST_CASE("solver dimensions on small Grassmannians") {
  CHECK(dim("Gr(2|1; 1|1)") == 8);
  CHECK(dim("Gr(3|1; 1|0)") == 15);  // pgl_4
  CHECK(dim("Gr(2|2; 1|1)") == 17);
  CHECK(dim("Gr(2|2; 1|2)") == 16);
  CHECK(dim("Gr(1|3; 0|2)") == 24);
}

TEST_CASE("ordinary projective line: sl_2") {
  auto r = solve_global_fields(FlagType::parse("Gr(2|0; 1|0)"), 2);
  CHECK(r.dimension == 3);
  CHECK(r.stabilized);
}

TEST_CASE("truncated ansatz is reported as not stabilized") {
  auto r = solve_global_fields(FlagType::parse("Gr(2|2; 1|1)"), 0);
  CHECK_FALSE(r.stabilized);
  CHECK(r.dimension < r.dimension_next);
}

TEST_CASE("every basis field is global and contains the fundamental fields") {
  auto t = FlagType::parse("Gr(2|1; 1|1)");
  Atlas atlas(t);
  auto fields = global_fields_at(atlas, 2, {});
  for (const auto& f : fields) CHECK(is_global(f, atlas));
  Chart c = atlas.chart(atlas.standard());
  auto joint = fields;
  for (std::size_t a = 1; a <= 3; ++a)
    for (std::size_t b = 1; b <= 3; ++b) joint.push_back(fundamental_field(GlElement::E(2, 1, a, b), c));
  CHECK(rank_of(field_matrix(joint)) == fields.size());
}

TEST_CASE("a field with a pole on another chart is not global") {
  Atlas atlas(FlagType::parse("Gr(2|2; 1|1)"));
  const Chart& c = atlas.chart(atlas.standard());
  auto v = parse_field("x^1_{11}: x^1_{11}^3", c.vars);
  std::string why;
  CHECK_FALSE(is_global(v, atlas, &why));
  CHECK(why.find("chart") != std::string::npos);
}

TEST_CASE("parallel constraint generation gives the same basis") {
  SolveOptions par;
  par.parallel = true;
  auto a = solve_global_fields(FlagType::parse("Gr(2|2; 1|1)"), 2);
  auto b = solve_global_fields(FlagType::parse("Gr(2|2; 1|1)"), 2, par);
  CHECK(a == b);
}

TEST_CASE("solve report json round trip") {
  auto r = solve_global_fields(FlagType::parse("Gr(2|1; 1|1)"), 2);
  CHECK(SolveReport::from_json(r.to_json()) == r);
}

TEST_CASE("global functions") {
  CHECK(solve_global_functions(FlagType::parse("Gr(2|1; 1|1)"), 2).dimension == 1);
  CHECK(solve_global_functions(FlagType::parse("Gr(1|1; 0|1)"), 2).dimension == 2);
  CHECK(solve_global_functions(FlagType::parse("Gr(1|2; 0|2)"), 2).dimension == 4);
  CHECK(solve_global_functions(FlagType::parse("F(2|2; 1,1|2,1)"), 2).dimension == 1);
}

TEST_CASE("kernel of mu is the identity line") {
  auto k = mu_kernel(FlagType::parse("Gr(2|1; 1|1)"));
  REQUIRE(k.size() == 1);
  CHECK(rank_of({k[0].coords(), GlElement::identity(2, 1).coords()}) == 1);
}

TEST_CASE("vertical fields: none on F(2|2; 1,1|2,1), some on F(1|2; 0,0|2,1)") {
  SolveOptions o;
  o.vertical = true;
  CHECK(global_fields_at(Atlas(FlagType::parse("F(2|2; 1,1|2,1)")), 2, o).empty());
  CHECK_FALSE(global_fields_at(Atlas(FlagType::parse("F(1|2; 0,0|2,1)")), 2, o).empty());
}

TEST_CASE("odd grading of the Gr(2|2; 1|2) fields") {
  auto r = solve_global_fields(FlagType::parse("Gr(2|2; 1|2)"), 2);
  std::vector<std::pair<int, std::size_t>> want = {{-1, 4}, {0, 7}, {1, 4}, {2, 1}};
  CHECK(odd_grading_dimensions(r.fields) == want);
}

TEST_CASE("lift of a fundamental field is the fundamental field") {
  auto t = FlagType::parse("F(2|2; 1,1|2,1)");
  Chart base = standard_chart(t.base());
  Chart S = standard_chart(t);
  for (auto [a, b] : std::vector<std::pair<std::size_t, std::size_t>>{{1, 3}, {2, 1}, {3, 4}, {4, 2}}) {
    auto r = lift_query(fundamental_field(GlElement::E(2, 2, a, b), base), t);
    REQUIRE(r.feasible);
    CHECK(*r.witness == fundamental_field(GlElement::E(2, 2, a, b), S));
  }
}

TEST_CASE("zero lifts to zero with no vertical ambiguity") {
  auto r = lift_query(SuperDerivation(standard_chart(FlagType::parse("Gr(2|2; 1|2)")).vars),
                      FlagType::parse("F(2|2; 1,1|2,1)"));
  CHECK(r.feasible);
  CHECK(r.witness->is_zero());
  CHECK(r.vertical_space.empty());
}

TEST_CASE("θ lifts to F(2|2; 1,1|2,1) with a vertical correction") {
  auto t = FlagType::parse("F(2|2; 1,1|2,1)");
  Chart base = standard_chart(t.base());
  auto r = lift_query(parse_field("x^1_{11}: ξ^1_{11}*ξ^1_{12}", base.vars), t);
  REQUIRE(r.feasible);
  Chart S = standard_chart(t);
  auto want = parse_field("x^1_{11}: ξ^1_{11}*ξ^1_{12}; η^2_{11}: -y^2_{11}*ξ^1_{11} - ξ^1_{12}", S.vars);
  CHECK(*r.witness == want);
  CHECK(is_global(*r.witness, Atlas(t)));
}

TEST_CASE("ξ∂/∂η on Gr(2|2; 1|1) does not lift to F(2|2; 1,1|1,0)") {
  auto t = FlagType::parse("F(2|2; 1,1|1,0)");
  Chart base = standard_chart(t.base());
  auto r = lift_query(parse_field("η^1_{11}: ξ^1_{11}", base.vars), t);
  CHECK_FALSE(r.feasible);
  CHECK(r.used_brackets);
  REQUIRE_FALSE(r.certificate.empty());
  CHECK(r.to_text().find("infeasible") == 0);
  // Its partner does lift.
  CHECK(lift_query(parse_field("ξ^1_{11}: η^1_{11}", base.vars), t).feasible);
}

TEST_CASE("truncated lift yields derivative rules") {
  auto t = FlagType::parse("F(2|2; 1,1|2,1)");
  Chart base = standard_chart(t.base());
  auto r = lift_query(parse_field("x^1_{11}: ξ^1_{11}*ξ^1_{12}", base.vars), t, 0);
  CHECK_FALSE(r.feasible);
  REQUIRE_FALSE(r.rules.empty());
  CHECK(r.rules[0].unknown == "g");
  CHECK(r.rules[0].coordinate == "η^2_{11}");
}

#include <doctest.h>

#include "superflag/fields.hpp"
#include "superflag/parse.hpp"

using namespace superflag;

namespace {
const Aliases kGr2211 = {{"x", "x^1_{11}"}, {"ξ", "ξ^1_{11}"}, {"η", "η^1_{11}"}, {"y", "y^1_{11}"}};

struct Golden {
  std::size_t a, b;
  const char* field;
};

// Fields of gl(2|2) on the chart (x ξ; 1 0; η y; 0 1).
const Golden kGr2211Fields[] = {
    {1, 1, "x: x; ξ: ξ"},
    {1, 2, "x: 1"},
    {2, 2, "x: -x; η: -η"},
    {2, 1, "x: -x^2; η: -x*η; ξ: -x*ξ; y: ξ*η"},
    {3, 4, "y: 1"},
    {4, 3, "y: -y^2; ξ: -y*ξ; η: -y*η; x: -ξ*η"},
    {3, 3, "y: y; η: η"},
    {4, 4, "y: -y; ξ: -ξ"},
    {1, 4, "ξ: 1"},
    {3, 2, "η: 1"},
    {1, 3, "x: η; ξ: y"},
    {3, 1, "y: ξ; η: x"},
    {2, 3, "x: -x*η; ξ: -x*y; y: y*η"},
    {4, 1, "y: -y*ξ; η: -x*y; x: x*ξ"},
    {2, 4, "ξ: -x; y: η"},
    {4, 2, "η: -y; x: ξ"},
};
}  // namespace

TEST_CASE("standard chart of Gr(2|2;1|1) has the expected layout") {
  Chart c = standard_chart(FlagType::parse("Gr(2|2; 1|1)"));
  CHECK(c.vars->num_even() == 2);
  CHECK(c.vars->num_odd() == 2);
  CHECK(c.Z[0](0, 0) == parse_function("x", c.vars, kGr2211));
  CHECK(c.Z[0](1, 0) == RationalSuperFunction::constant(c.vars, 1));
  CHECK(c.Z[0](2, 1) == parse_function("y", c.vars, kGr2211));
  CHECK(c.Z[0](3, 1) == RationalSuperFunction::constant(c.vars, 1));
}

TEST_CASE("fundamental fields reproduce the Gr(2|2;1|1) table") {
  Chart c = standard_chart(FlagType::parse("Gr(2|2; 1|1)"));
  for (const auto& g : kGr2211Fields) {
    CAPTURE(g.a);
    CAPTURE(g.b);
    auto mu = fundamental_field(GlElement::E(2, 2, g.a, g.b), c);
    CHECK(mu == parse_field(g.field, c.vars, kGr2211));
  }
  CHECK(fundamental_field(GlElement::identity(2, 2), c).is_zero());
}

TEST_CASE("transition from the standard chart to rows {1|2}") {
  Atlas atlas(FlagType::parse("Gr(2|2; 1|1)"));
  ChartIndex j;
  j.levels.push_back({{0}, {1}});
  std::size_t to = atlas.find(j);
  const auto& imgs = atlas.transition(atlas.standard(), to);
  const Chart& src = atlas.chart(atlas.standard());
  const Chart& dst = atlas.chart(to);
  auto img = [&](const char* name) { return imgs[dst.vars->flat(dst.vars->at(name))]; };
  CHECK(img("x^1_{21}") == parse_function("1/x", src.vars, kGr2211));
  CHECK(img("ξ^1_{21}") == parse_function("-ξ/x", src.vars, kGr2211));
  CHECK(img("η^1_{11}") == parse_function("η/x", src.vars, kGr2211));
  CHECK(img("y^1_{11}") == parse_function("y - η*ξ/x", src.vars, kGr2211));
}

TEST_CASE("bracket examples") {
  Chart c = standard_chart(FlagType::parse("Gr(2|2; 1|1)"));
  auto mu = [&](std::size_t a, std::size_t b) { return fundamental_field(GlElement::E(2, 2, a, b), c); };
  // The computed sign: the map X -> mu(X) reverses even brackets.
  CHECK(field_bracket(mu(1, 2), mu(2, 1)) == -(mu(1, 1) - mu(2, 2)));
  CHECK(field_bracket(mu(1, 4), mu(4, 1)) == mu(1, 1) + mu(4, 4));
  auto dxi = parse_field("ξ: 1", c.vars, kGr2211);
  CHECK(field_bracket(dxi, dxi).is_zero());
  auto h = h4_basis();
  CHECK(field_bracket(h.z, h.fields[14]) == Rational(2) * h.fields[14]);
}

TEST_CASE("apply examples") {
  auto t = VarTable::make({"x", "y"}, {"ξ", "η"});
  CHECK(apply(parse_field("x: 1", t), parse_polynomial("x^2", t)) == parse_function("2*x", t));
  CHECK(apply(parse_field("η: ξ", t), parse_polynomial("η*y", t)) == parse_function("ξ*y", t));
  CHECK(apply(parse_field("ξ: x", t), parse_polynomial("ξ*η", t)) == parse_function("x*η", t));
}

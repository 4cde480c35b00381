#include <doctest.h>

#include <random>

#include "superflag/parse.hpp"
#include "superflag/verify.hpp"
#include "superflag/weights.hpp"

using namespace superflag;

namespace {
Weight M(std::size_t m, std::size_t n, std::size_t i) { return Weight::mu_unit(m, n, i); }
Weight L(std::size_t m, std::size_t n, std::size_t j) { return Weight::lambda_unit(m, n, j); }
}  // namespace

TEST_CASE("dominance") {
  CHECK(is_dominant(M(3, 0, 1) - M(3, 0, 3)));
  CHECK_FALSE(is_dominant(M(3, 0, 2) - M(3, 0, 3)));
  CHECK(is_dominant(Weight::zero(3, 2)));
}

TEST_CASE("weyl dimensions") {
  CHECK(weyl_dim(Weight::zero(2, 2)) == 1);
  CHECK(weyl_dim(M(3, 0, 1) - M(3, 0, 3)) == 8);
  CHECK(weyl_dim(M(2, 3, 1) - L(2, 3, 3)) == 6);
  CHECK_THROWS_AS(weyl_dim(M(3, 0, 2) - M(3, 0, 3)), AlgebraError);
}

TEST_CASE("tableau oracle on known cases") {
  CHECK(count_tableaux({1, 0, 0}) == 3);
  CHECK(count_tableaux({1, 0, -1}) == 8);
  CHECK(count_tableaux({2, 0}) == 3);
  CHECK(count_tableaux({2, 1, 0}) == 8);
}

TEST_CASE("property: weyl_dim equals the tableau count") {
  std::mt19937 rng(20261018);
  std::uniform_int_distribution<long> entry(-3, 3);
  std::uniform_int_distribution<int> size(1, 4);
  for (int k = 0; k < 1000; ++k) {
    std::vector<long> a(static_cast<std::size_t>(size(rng)));
    for (auto& v : a) v = entry(rng);
    std::sort(a.rbegin(), a.rend());
    Weight w{a, {}};
    CAPTURE(w.to_string());
    CHECK(weyl_dim(w) == Integer(static_cast<unsigned long>(count_tableaux(a))));
  }
}

TEST_CASE("weight strings") {
  CHECK((M(2, 3, 1) - L(2, 3, 3)).to_string() == "μ1 - λ3");
  CHECK(Weight::zero(1, 1).to_string() == "0");
  CHECK((M(2, 2, 1) + M(2, 2, 2) - L(2, 2, 1) - L(2, 2, 2)).to_string() == "μ1 + μ2 - λ1 - λ2");
}

TEST_CASE("psi weights, generic and exceptional") {
  auto g = psi_weights(4, 4, 2, 3);
  REQUIRE(g.weights.size() == 5);
  CHECK(g.weights[0].first == M(4, 4, 3) - M(4, 4, 4));
  CHECK(g.weights[3].first == L(4, 4, 2) - L(4, 4, 4));
  CHECK(psi_weights(3, 3, 1, 0).weights.empty());
  CHECK(psi_weights(3, 3, 0, 1).weights.empty());
  CHECK(psi_weights(2, 2, 0, 0, PsiCase::ExceptionalA).weights.size() == 7);
  CHECK(fiber_dim(psi_weights(2, 2, 0, 0, PsiCase::ExceptionalA)) == 17);
  CHECK(fiber_dim(psi_weights(3, 3, 0, 0, PsiCase::ExceptionalB1)) == 16);
  CHECK(fiber_dim(psi_weights(2, 1, 2, 1)) == 8);
}

TEST_CASE("sections") {
  auto r = bwb_sections(psi_weights(2, 3, 2, 1));
  CHECK(r.dimension == 10);
  CHECK(r.survivors.size() == 3);
  CHECK(bwb_sections(psi_weights(3, 3, 1, 1)).dimension == 1);
  CHECK(bwb_sections(psi_weights(3, 2, 1, 0)).dimension == 0);
  for (std::size_t m = 2; m <= 4; ++m)
    for (std::size_t n = 2; n <= 4; ++n)
      for (std::size_t k = 1; k < m; ++k)
        for (std::size_t l = 1; l < n; ++l) CHECK(bwb_sections(psi_weights(m, n, k, l)).dimension == 1);
}

TEST_CASE("section table rows all agree") {
  for (const auto& r : section_table(4, 4)) {
    CAPTURE(r.m);
    CAPTURE(r.n);
    CAPTURE(r.k1);
    CAPTURE(r.l1);
    CHECK(r.agrees());
  }
  // Uncovered tuples are reported without cases.
  auto whole = section_row(2, 2, 2, 2);
  REQUIRE(whole);
  CHECK(whole->cases.empty());
}

TEST_CASE("weights of fields") {
  auto gr = FlagType::parse("Gr(2|2; 1|1)");
  Chart c = standard_chart(gr);
  auto w = weight_of(parse_field("η: ξ", c.vars, gr2211_aliases()), gr, c);
  REQUIRE(w);
  CHECK(*w == M(2, 2, 1) + M(2, 2, 2) - L(2, 2, 1) - L(2, 2, 2));
  CHECK_FALSE(weight_of(parse_field("x: 1 + x", c.vars, gr2211_aliases()), gr, c));

  auto h = h4_basis();
  auto t = FlagType::parse("Gr(2|2; 1|2)");
  auto wt = weight_of(h.fields.back(), t, h.chart);
  REQUIRE(wt);
  CHECK(*wt == M(2, 2, 1) + M(2, 2, 2) - L(2, 2, 1) - L(2, 2, 2));
}

TEST_CASE("weights of the Gr(2|2; 1|1) fields: roots plus the two extras") {
  auto gr = FlagType::parse("Gr(2|2; 1|1)");
  Chart c = standard_chart(gr);
  std::vector<Weight> got;
  for (const auto& g : golden_gr2211()) {
    if (g.a == g.b) continue;
    auto w = weight_of(parse_field(g.field, c.vars, gr2211_aliases()), gr, c);
    REQUIRE(w);
    got.push_back(*w);
  }
  std::vector<Weight> roots;
  for (std::size_t a = 1; a <= 4; ++a)
    for (std::size_t b = 1; b <= 4; ++b) {
      if (a == b) continue;
      auto e = [&](std::size_t i) { return i <= 2 ? M(2, 2, i) : L(2, 2, i - 2); };
      roots.push_back(e(a) - e(b));
    }
  std::sort(got.begin(), got.end());
  std::sort(roots.begin(), roots.end());
  CHECK(got == roots);
  auto extra = M(2, 2, 1) + M(2, 2, 2) - L(2, 2, 1) - L(2, 2, 2);
  CHECK(weight_of(parse_field("η: ξ", c.vars, gr2211_aliases()), gr, c) == extra);
  CHECK(weight_of(parse_field("ξ: η", c.vars, gr2211_aliases()), gr, c) == -extra);
}

#include <doctest.h>

#include <random>

#include "superflag/superpoly.hpp"

using namespace superflag;

namespace {
VarTablePtr table() {
  static VarTablePtr t = VarTable::make({"x", "y"}, {"ξ", "η", "θ"});
  return t;
}
SuperPolynomial v(const char* n) { return SuperPolynomial::variable(table(), n); }
SuperPolynomial c(long q) { return SuperPolynomial::constant(table(), q); }

SuperPolynomial random_poly(std::mt19937& rng, int terms, int max_deg) {
  std::vector<SuperPolynomial::Term> ts;
  std::uniform_int_distribution<int> coeff(-3, 3), deg(0, max_deg), odd(0, 7);
  for (int i = 0; i < terms; ++i) {
    Monomial m;
    m.exps[0] = static_cast<std::uint8_t>(deg(rng));
    m.exps[1] = static_cast<std::uint8_t>(deg(rng));
    m.odd = static_cast<std::uint32_t>(odd(rng));
    ts.push_back({m, coeff(rng)});
  }
  return SuperPolynomial(table(), std::move(ts));
}

// Independent oracle: expand monomials as ordered words and sort by bubble sort.
int word_sign(std::vector<int> w) {
  int s = 1;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j + 1 < w.size() - i; ++j) {
      if (w[j] == w[j + 1]) return 0;
      if (w[j] > w[j + 1]) {
        std::swap(w[j], w[j + 1]);
        s = -s;
      }
    }
  return s;
}
}  // namespace

TEST_CASE("odd variables anticommute") {
  CHECK((v("ξ") * v("η") + v("η") * v("ξ")).is_zero());
  CHECK(v("ξ") * v("η") == v("ξ") * v("η"));
  CHECK(v("η") * v("ξ") == -(v("ξ") * v("η")));
  CHECK((v("ξ") * v("ξ")).is_zero());
}

TEST_CASE("left odd derivative") {
  auto t = VarTable::make({"x"}, {"ξ1", "ξ2"});
  auto x1 = SuperPolynomial::variable(t, "ξ1"), x2 = SuperPolynomial::variable(t, "ξ2");
  CHECK((x1 * x2).partial(t->at("ξ2")) == -x1);
  CHECK((x1 * x2).partial(t->at("ξ1")) == x2);
}

TEST_CASE("even derivative") {
  auto p = v("x").pow(2) * v("η");
  CHECK(p.partial(table()->at("x")) == c(2) * v("x") * v("η"));
}

TEST_CASE("inverse of an even function with nilpotent part") {
  auto f = v("x") + v("ξ") * v("η");
  auto inv = RationalSuperFunction(f).inverse();
  auto expect = RationalSuperFunction::quotient(c(1), v("x")) -
                RationalSuperFunction::quotient(v("ξ") * v("η"), v("x").pow(2));
  CHECK(inv == expect);
  CHECK(inv * RationalSuperFunction(f) == RationalSuperFunction::constant(table(), 1));
}

TEST_CASE("ascii aliases for odd names") {
  auto t = VarTable::make({"x^1_{11}"}, {"ξ^1_{12}", "η^2_{21}"});
  CHECK(t->at("xi^1_{12}") == t->at("ξ^1_{12}"));
  CHECK(t->at("eta^2_{21}").parity == Parity::Odd);
}

TEST_CASE("property: monomial sign agrees with word sorting") {
  std::mt19937 rng(20261018);
  std::uniform_int_distribution<std::uint32_t> mask(0, 31);
  for (int it = 0; it < 2000; ++it) {
    Monomial a, b;
    a.odd = mask(rng);
    b.odd = mask(rng);
    std::vector<int> w;
    for (int i = 0; i < 5; ++i)
      if (a.odd & (1U << i)) w.push_back(i);
    for (int i = 0; i < 5; ++i)
      if (b.odd & (1U << i)) w.push_back(i);
    CHECK(multiply(a, b).first == word_sign(w));
  }
}

TEST_CASE("property: ring axioms and Leibniz rule") {
  std::mt19937 rng(7);
  for (int it = 0; it < 1000; ++it) {
    auto a = random_poly(rng, 3, 2), b = random_poly(rng, 3, 2), d = random_poly(rng, 2, 1);
    REQUIRE(((a * b) * d) == (a * (b * d)));
    REQUIRE((a * (b + d)) == (a * b + a * d));
    for (std::size_t k = 0; k < table()->size(); ++k) {
      Variable var = table()->var(k);
      auto pa = a.parity();
      // Leibniz with sign (-1)^{p(var)p(a)} for homogeneous a.
      auto ea = a.odd_components();
      SuperPolynomial even_a(table()), odd_a(table());
      for (const auto& t : a.terms())
        (t.mono.parity() == Parity::Even ? even_a : odd_a) += SuperPolynomial::monomial(table(), t.mono, t.coeff);
      int s = var.parity == Parity::Odd ? -1 : 1;
      auto lhs = (a * b).partial(var);
      auto rhs = even_a.partial(var) * b + even_a * b.partial(var) + odd_a.partial(var) * b +
                 Rational(s) * (odd_a * b.partial(var));
      REQUIRE(lhs == rhs);
      (void)pa;
    }
  }
}

TEST_CASE("property: division identity and canonical remainder") {
  std::mt19937 rng(11);
  for (int it = 0; it < 1000; ++it) {
    auto p = random_poly(rng, 4, 3);
    auto d = random_poly(rng, 2, 2).body() + c(1 + it % 3) * v("x");
    if (d.is_zero()) continue;
    auto [q, r] = p.divide(d);
    REQUIRE(q * d + r == p);
    auto k = random_poly(rng, 2, 1);
    REQUIRE((p + k * d).remainder(d) == r);
  }
}

TEST_CASE("property: rational function field operations") {
  std::mt19937 rng(13);
  for (int it = 0; it < 1000; ++it) {
    auto n = random_poly(rng, 3, 2);
    auto d = v("x") + c(1 + it % 4) + random_poly(rng, 1, 1).body() * v("y");
    auto e = v("y") + c(2) + random_poly(rng, 1, 1).nilpotent_part().body();
    auto f = RationalSuperFunction::quotient(n, d);
    auto g = RationalSuperFunction::quotient(random_poly(rng, 2, 1), e);
    REQUIRE((f + g) - g == f);
    REQUIRE(f * RationalSuperFunction(d) == RationalSuperFunction(n));
    auto even = RationalSuperFunction(d + random_poly(rng, 2, 1).nilpotent_part() * v("ξ") * v("η"));
    if (!even.num().parity() || *even.num().parity() != Parity::Even) continue;
    REQUIRE(even * even.inverse() == RationalSuperFunction::constant(table(), 1));
    // quotient rule against the product rule on f * d = n
    Variable x = table()->at("x");
    REQUIRE(f.partial(x) * RationalSuperFunction(d) + f * RationalSuperFunction(d.partial(x)) ==
            RationalSuperFunction(n.partial(x)));
  }
}

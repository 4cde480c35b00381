#include "properties.hpp"

#include <functional>

namespace superflag::props {

namespace {

struct Tally {
  Outcome out;
  void record(bool pass, const std::function<std::string()>& describe) {
    ++out.cases;
    if (pass) return;
    if (out.failures++ == 0) out.first_failure = describe();
  }
};

int sgn(Parity a, Parity b) { return sign_of(a, b); }

const std::vector<FlagType>& flags() {
  static const std::vector<FlagType> f = {
      FlagType::parse("Gr(2|1; 1|1)"), FlagType::parse("Gr(2|2; 1|1)"), FlagType::parse("Gr(2|2; 1|2)"),
      FlagType::parse("Gr(3|1; 1|0)"), FlagType::parse("Gr(1|3; 0|2)"), FlagType::parse("F(2|2; 1,1|2,1)"),
  };
  return f;
}

}  // namespace

VarTablePtr small_table() {
  static VarTablePtr t = VarTable::make({"x", "y"}, {"ξ", "η", "ζ"});
  return t;
}

Monomial Gen::monomial(const VarTable& t, int max_deg) {
  Monomial m;
  int left = max_deg;
  for (std::size_t i = 0; i < t.num_even() && left > 0; ++i) {
    int e = integer(0, left);
    m.exps[i] = static_cast<std::uint8_t>(e);
    left -= e;
  }
  if (t.num_odd()) m.odd = static_cast<std::uint32_t>(integer(0, (1 << t.num_odd()) - 1));
  return m;
}

SuperPolynomial Gen::poly(const VarTablePtr& t, int terms, int max_deg, std::optional<Parity> parity) {
  std::vector<SuperPolynomial::Term> ts;
  for (int i = 0; i < terms; ++i) {
    Monomial m = monomial(*t, max_deg);
    if (parity && m.parity() != *parity) {
      if (t->num_odd() == 0) continue;
      m.odd ^= 1U << index(t->num_odd());
    }
    int c = integer(-3, 3);
    if (c) ts.push_back({m, Rational(c, integer(1, 2))});
  }
  return SuperPolynomial(t, std::move(ts));
}

SuperPolynomial Gen::unit(const VarTablePtr& t, int terms, int max_deg) {
  while (true) {
    int c = integer(1, 3) * (coin() ? 1 : -1);
    auto u = poly(t, terms, max_deg, Parity::Even) + SuperPolynomial::constant(t, c);
    if (!u.body().is_zero()) return u;
  }
}

SuperDerivation Gen::field(const VarTablePtr& t, Parity p, int terms, int max_deg) {
  SuperDerivation v(t);
  for (std::size_t u = 0; u < t->size(); ++u) {
    if (!coin()) continue;
    Parity want = p + t->var(u).parity;
    v.coeff(u) = RationalSuperFunction(poly(t, terms, max_deg, want));
  }
  return v;
}

SuperMatrix Gen::even_matrix(const VarTablePtr& t, SuperMatrix::Split split, int max_deg) {
  std::size_t n = split.first + split.second;
  while (true) {
    SuperMatrix M(t, split, split);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Parity p = M.row_parity(i) + M.col_parity(j);
        M(i, j) = RationalSuperFunction(poly(t, 2, max_deg, p) +
                                        (i == j ? SuperPolynomial::constant(t, integer(1, 2)) : SuperPolynomial(t)));
      }
    std::vector<std::vector<SuperPolynomial>> body(n, std::vector<SuperPolynomial>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) body[i][j] = M(i, j).num().body();
    // Nonzero body determinant in each diagonal block.
    auto block_det = [&](std::size_t lo, std::size_t hi) {
      std::vector<std::vector<SuperPolynomial>> b;
      for (std::size_t i = lo; i < hi; ++i) b.emplace_back(body[i].begin() + static_cast<std::ptrdiff_t>(lo),
                                                           body[i].begin() + static_cast<std::ptrdiff_t>(hi));
      return body_determinant(b, t);
    };
    if (!block_det(0, split.first).is_zero() && !block_det(split.first, n).is_zero()) return M;
  }
}

Outcome super_jacobi(std::uint64_t seed, std::size_t cases) {
  Gen g(seed);
  Tally t{{"super-Jacobi and super-antisymmetry of the field bracket", 0, 0, {}}};
  auto T = small_table();
  for (std::size_t k = 0; k < cases; ++k) {
    Parity pa = g.coin() ? Parity::Odd : Parity::Even, pb = g.coin() ? Parity::Odd : Parity::Even,
           pc = g.coin() ? Parity::Odd : Parity::Even;
    auto a = g.field(T, pa, 2, 2), b = g.field(T, pb, 2, 2), c = g.field(T, pc, 2, 2);
    auto j = Rational(sgn(pa, pc)) * field_bracket(a, field_bracket(b, c)) +
             Rational(sgn(pb, pa)) * field_bracket(b, field_bracket(c, a)) +
             Rational(sgn(pc, pb)) * field_bracket(c, field_bracket(a, b));
    bool anti = field_bracket(a, b) == Rational(-sgn(pa, pb)) * field_bracket(b, a);
    t.record(j.is_zero() && anti, [&] { return "a = " + a.to_string() + ", b = " + b.to_string() + ", c = " + c.to_string(); });
  }
  return t.out;
}

Outcome leibniz(std::uint64_t seed, std::size_t cases) {
  Gen g(seed);
  Tally t{{"Leibniz rule for fields on products", 0, 0, {}}};
  auto T = small_table();
  for (std::size_t k = 0; k < cases; ++k) {
    Parity pv = g.coin() ? Parity::Odd : Parity::Even, pf = g.coin() ? Parity::Odd : Parity::Even;
    auto v = g.field(T, pv, 2, 2);
    auto f = g.poly(T, 3, 2, pf), h = g.poly(T, 3, 2);
    auto lhs = apply(v, f * h);
    auto rhs = apply(v, f) * RationalSuperFunction(h) + RationalSuperFunction::constant(T, sgn(pv, pf)) * RationalSuperFunction(f) * apply(v, h);
    t.record(lhs == rhs, [&] { return "v = " + v.to_string() + ", f = " + f.to_string() + ", h = " + h.to_string(); });
  }
  return t.out;
}

Outcome odd_partials_anticommute(std::uint64_t seed, std::size_t cases) {
  Gen g(seed);
  Tally t{{"odd partials anticommute, even ones commute with all", 0, 0, {}}};
  auto T = small_table();
  for (std::size_t k = 0; k < cases; ++k) {
    auto f = g.poly(T, 5, 3);
    Variable a = T->var(g.index(T->size())), b = T->var(g.index(T->size()));
    auto ab = f.partial(b).partial(a), ba = f.partial(a).partial(b);
    bool pass = ab == Rational(sgn(a.parity, b.parity)) * ba;
    if (a == b && a.parity == Parity::Odd) pass = pass && ab.is_zero();
    t.record(pass, [&] { return "f = " + f.to_string() + ", " + T->name(a) + ", " + T->name(b); });
  }
  return t.out;
}

Outcome inverse_roundtrip(std::uint64_t seed, std::size_t cases) {
  Gen g(seed);
  Tally t{{"inverse round-trips for functions and supermatrices", 0, 0, {}}};
  auto T = small_table();
  auto one = RationalSuperFunction::constant(T, 1);
  for (std::size_t k = 0; k < cases; ++k) {
    if (k % 4 != 3) {
      // Even functions with nonzero body, possibly with a denominator already.
      RationalSuperFunction f(g.unit(T, 3, 2));
      if (g.coin()) f = f * RationalSuperFunction(g.unit(T, 2, 1)).inverse();
      auto inv = f.inverse();
      t.record(f * inv == one && inv * f == one, [&] { return "f = " + f.to_string(); });
    } else {
      SuperMatrix::Split split = g.coin() ? SuperMatrix::Split{1, 1} : SuperMatrix::Split{2, 1};
      auto M = g.even_matrix(T, split, 1);
      auto inv = mat_inverse(M);
      auto I = SuperMatrix::identity(T, split);
      t.record(mat_mul(M, inv) == I && mat_mul(inv, M) == I, [&] { return "M =\n" + M.to_string(); });
    }
  }
  return t.out;
}

Outcome transition_cocycle(std::uint64_t seed, std::size_t cases) {
  Gen g(seed);
  Tally t{{"transition cocycle T(j,k) o T(i,j) = T(i,k) and T(i,i) = id", 0, 0, {}}};
  std::vector<std::unique_ptr<Atlas>> atlases;
  for (const auto& f : flags()) atlases.push_back(std::make_unique<Atlas>(f));
  for (std::size_t k = 0; k < cases; ++k) {
    const Atlas& A = *atlases[g.index(atlases.size())];
    std::size_t i = g.index(A.size()), j = g.index(A.size()), l = g.index(A.size());
    auto direct = A.transition(i, l);
    auto composed = compose(A.transition(j, l), A.transition(i, j));
    bool pass = direct.size() == composed.size();
    for (std::size_t q = 0; pass && q < direct.size(); ++q) pass = direct[q] == composed[q];
    if (i == l) {
      const Chart& c = A.chart(i);
      for (std::size_t q = 0; pass && q < direct.size(); ++q)
        pass = direct[q] == RationalSuperFunction(SuperPolynomial::variable(c.vars, c.vars->var(q)));
    }
    t.record(pass, [&] {
      return A.type().to_string() + " charts " + A.indices()[i].to_string() + " -> " + A.indices()[j].to_string() +
             " -> " + A.indices()[l].to_string();
    });
  }
  return t.out;
}

Outcome pushforward_equivariance(std::uint64_t seed, std::size_t cases) {
  Gen g(seed);
  Tally t{{"pushforward respects brackets, evaluation and round trips", 0, 0, {}}};
  std::vector<std::unique_ptr<Atlas>> atlases;
  for (const auto& f : flags()) atlases.push_back(std::make_unique<Atlas>(f));
  for (std::size_t k = 0; k < cases; ++k) {
    const Atlas& A = *atlases[g.index(atlases.size())];
    std::size_t s = A.standard(), j = g.index(A.size());
    const auto& vars = A.chart(s).vars;
    Parity pa = g.coin() ? Parity::Odd : Parity::Even, pb = g.coin() ? Parity::Odd : Parity::Even;
    auto a = g.field(vars, pa, 1, 1), b = g.field(vars, pb, 1, 1);
    auto pa_j = pushforward(a, A, s, j), pb_j = pushforward(b, A, s, j);
    bool pass = pushforward(field_bracket(a, b), A, s, j) == field_bracket(pa_j, pb_j);
    pass = pass && pushforward(pa_j, A, j, s) == a;
    // v(f) computed in either chart agrees after pulling back.
    auto f = g.poly(vars, 2, 2);
    const auto& back = A.transition(j, s);  // standard coordinates in chart j
    auto lhs = apply(a, f).substitute(back);
    auto rhs = apply(pa_j, f.substitute(back));
    pass = pass && lhs == rhs;
    t.record(pass, [&] { return A.type().to_string() + " chart " + A.indices()[j].to_string() + ", a = " + a.to_string(); });
  }
  return t.out;
}

}  // namespace superflag::props

#include "superflag/verify.hpp"

#include <algorithm>
#include <functional>
#include <json.hpp>
#include <random>
#include <sstream>
#include <stdexcept>

#include "superflag/global_solver.hpp"
#include "superflag/linalg.hpp"
#include "superflag/weights.hpp"

namespace superflag {

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass || c.informational; });
}

std::string SuiteReport::to_text() const {
  std::ostringstream os;
  std::size_t counted = 0, ok = 0;
  for (const auto& c : checks) {
    os << (c.pass ? "PASS " : (c.informational ? "NOTE " : "FAIL ")) << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
    if (!c.informational) {
      ++counted;
      ok += c.pass ? 1 : 0;
    }
  }
  os << suite << ": " << ok << "/" << counted << (passed() ? " passed\n" : " FAILED\n");
  return os.str();
}

std::string SuiteReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite;
  j["passed"] = passed();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"informational", c.informational}});
  return j.dump(2);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"homomorphism", "kernel", "golden-fields", "h4",
                                                 "bwb-table",    "functions", "lift"};
  return names;
}

const Aliases& gr2211_aliases() {
  static const Aliases a = {{"x", "x^1_{11}"}, {"ξ", "ξ^1_{11}"}, {"η", "η^1_{11}"}, {"y", "y^1_{11}"}};
  return a;
}

const Aliases& flag2211_aliases() {
  static const Aliases a = {{"x", "x^1_{11}"},  {"ξ1", "ξ^1_{11}"}, {"ξ2", "ξ^1_{12}"},
                            {"η", "η^2_{11}"}, {"y", "y^2_{11}"}};
  return a;
}

const std::vector<GoldenField>& golden_gr2211() {
  static const std::vector<GoldenField> g = {
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
  return g;
}

std::size_t count_tableaux(const std::vector<long>& a) {
  std::size_t k = a.size();
  if (k == 0) return 1;
  std::vector<std::size_t> shape;
  for (long v : a) shape.push_back(static_cast<std::size_t>(v - a.back()));
  std::vector<std::vector<std::size_t>> cell(k);
  for (std::size_t r = 0; r < k; ++r) cell[r].assign(shape[r], 0);
  std::size_t count = 0;
  std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t r, std::size_t c) {
    if (r == k) {
      ++count;
      return;
    }
    if (c == shape[r]) {
      fill(r + 1, 0);
      return;
    }
    std::size_t lo = 1;
    if (c > 0) lo = std::max(lo, cell[r][c - 1]);
    if (r > 0) lo = std::max(lo, cell[r - 1][c] + 1);
    for (std::size_t v = lo; v <= k; ++v) {
      cell[r][c] = v;
      fill(r, c + 1);
    }
  };
  fill(0, 0);
  return count;
}

namespace {

CheckResult check(std::string name, bool pass, std::string detail = {}) {
  return {std::move(name), pass, std::move(detail), false};
}

std::vector<GlElement> gl_basis(std::size_t m, std::size_t n) {
  std::vector<GlElement> b;
  for (std::size_t a = 1; a <= m + n; ++a)
    for (std::size_t c = 1; c <= m + n; ++c) b.push_back(GlElement::E(m, n, a, c));
  return b;
}

std::string dims_text(const std::vector<std::pair<int, std::size_t>>& d) {
  std::string s;
  for (auto [ev, k] : d) s += (s.empty() ? "" : ", ") + std::to_string(ev) + ":" + std::to_string(k);
  return s;
}

}  // namespace

SuiteReport verify_homomorphism(const FlagType& t, std::uint64_t seed) {
  SuiteReport rep{"homomorphism", {}};
  auto m = static_cast<std::size_t>(t.m), n = static_cast<std::size_t>(t.n);
  Chart c = standard_chart(t);
  auto basis = gl_basis(m, n);
  std::vector<SuperDerivation> mu;
  for (const auto& X : basis) mu.push_back(fundamental_field(X, c));
  std::size_t literal = 0, twisted = 0, pairs = 0;
  std::string first_literal, first_twisted;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      ++pairs;
      auto lhs = field_bracket(mu[i], mu[j]);
      auto rhs = fundamental_field(gl_bracket(basis[i], basis[j]), c);
      int s = sign_of(*basis[i].parity(), *basis[j].parity());
      if (lhs == rhs)
        ++literal;
      else if (first_literal.empty())
        first_literal = "[μ(" + basis[i].to_string() + "), μ(" + basis[j].to_string() + ")] = " + lhs.to_string() +
                        " but μ([X,Y]) = " + rhs.to_string();
      if (lhs == Rational(-s) * rhs)
        ++twisted;
      else if (first_twisted.empty())
        first_twisted = basis[i].to_string() + ", " + basis[j].to_string();
    }
  auto frac = [](std::size_t a, std::size_t b) { return std::to_string(a) + "/" + std::to_string(b); };
  rep.checks.push_back(check("[μX, μY] = μ[X, Y] on " + t.to_string() + " basis pairs", literal == pairs,
                             frac(literal, pairs) + (first_literal.empty() ? "" : "; first failure " + first_literal)));
  CheckResult tw = check("[μX, μY] = -(-1)^{|X||Y|} μ[X, Y] on " + t.to_string() + " basis pairs", twisted == pairs,
                         frac(twisted, pairs) + (first_twisted.empty() ? "" : "; first failure " + first_twisted));
  tw.informational = true;
  rep.checks.push_back(tw);

  // Random homogeneous combinations.
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::size_t ok = 0, total = 100;
  for (std::size_t trial = 0; trial < total; ++trial) {
    GlElement X(m, n), Y(m, n);
    int px = static_cast<int>(rng() & 1U), py = static_cast<int>(rng() & 1U);
    for (const auto& b : basis) {
      int pb = *b.parity() == Parity::Odd ? 1 : 0;
      if (pb == px) X += Rational(coef(rng)) * b;
      if (pb == py) Y += Rational(coef(rng)) * b;
    }
    auto lhs = field_bracket(fundamental_field(X, c), fundamental_field(Y, c));
    auto rhs = fundamental_field(gl_bracket(X, Y), c);
    int s = (px && py) ? -1 : 1;
    if (lhs == Rational(-s) * rhs) ++ok;
  }
  CheckResult rnd = check("twisted identity on random homogeneous combinations (seed " + std::to_string(seed) + ")",
                          ok == total, frac(ok, total));
  rnd.informational = true;
  rep.checks.push_back(rnd);
  return rep;
}

SuiteReport verify_kernel(const FlagType& t) {
  SuiteReport rep{"kernel", {}};
  auto m = static_cast<std::size_t>(t.m), n = static_cast<std::size_t>(t.n);
  auto ker = mu_kernel(t);
  bool is_identity = ker.size() == 1;
  if (is_identity) {
    auto id = GlElement::identity(m, n);
    auto rows = std::vector<std::vector<Rational>>{ker[0].coords(), id.coords()};
    is_identity = rank_of(rows) == 1;
  }
  std::string shown;
  for (const auto& k : ker) shown += (shown.empty() ? "" : ", ") + k.to_string();
  rep.checks.push_back(check("Ker μ = span{identity} on " + t.to_string(), is_identity, "basis: " + shown));
  std::size_t N = (m + n) * (m + n);
  rep.checks.push_back(check("rank μ = (m+n)^2 - 1 = " + std::to_string(N - 1), N - ker.size() == N - 1,
                             "rank " + std::to_string(N - ker.size())));
  return rep;
}

SuiteReport verify_golden_fields() {
  SuiteReport rep{"golden-fields", {}};
  FlagType gr = FlagType::parse("Gr(2|2; 1|1)");
  Chart c = standard_chart(gr);
  std::size_t ok = 0;
  std::string bad;
  for (const auto& g : golden_gr2211()) {
    auto mu = fundamental_field(GlElement::E(2, 2, g.a, g.b), c);
    auto want = parse_field(g.field, c.vars, gr2211_aliases());
    if (mu == want)
      ++ok;
    else
      bad += " E" + std::to_string(g.a) + std::to_string(g.b) + " gives " + mu.to_string();
  }
  rep.checks.push_back(check("16 fundamental fields on the Gr(2|2; 1|1) chart", ok == golden_gr2211().size(),
                             std::to_string(ok) + "/16" + bad));
  rep.checks.push_back(check("μ(identity) = 0", fundamental_field(GlElement::identity(2, 2), c).is_zero()));

  // The two additional fields.
  Atlas atlas(gr);
  auto xi_eta = parse_field("η: ξ", c.vars, gr2211_aliases());
  auto eta_xi = parse_field("ξ: η", c.vars, gr2211_aliases());
  std::string why;
  bool g1 = is_global(xi_eta, atlas, &why), g2 = is_global(eta_xi, atlas, &why);
  rep.checks.push_back(check("ξ∂/∂η and η∂/∂ξ are global", g1 && g2, why));
  std::vector<SuperDerivation> mus;
  for (const auto& X : gl_basis(2, 2)) mus.push_back(fundamental_field(X, c));
  std::size_t r_mu = rank_of(field_matrix(mus));
  auto with = mus;
  with.push_back(xi_eta);
  with.push_back(eta_xi);
  std::size_t r_all = rank_of(field_matrix(with));
  rep.checks.push_back(check("they add 2 dimensions beyond the μ image", r_mu == 15 && r_all == 17,
                             "rank μ " + std::to_string(r_mu) + ", with extras " + std::to_string(r_all)));

  // The Cartan-type basis on Gr(2|2; 1|2).
  auto h = h4_basis();
  Atlas a2(FlagType::parse("Gr(2|2; 1|2)"));
  std::size_t global = 0;
  for (const auto& f : h.fields) global += is_global(f, a2) ? 1 : 0;
  rep.checks.push_back(check("15 listed fields on Gr(2|2; 1|2) are global", global == 15 && h.fields.size() == 15,
                             std::to_string(global) + "/" + std::to_string(h.fields.size())));
  return rep;
}

SuiteReport verify_h4() {
  SuiteReport rep{"h4", {}};
  auto h = h4_basis();
  FlagType t = FlagType::parse("Gr(2|2; 1|2)");
  std::size_t graded = 0;
  for (std::size_t i = 0; i < h.fields.size(); ++i)
    if (field_bracket(h.z, h.fields[i]) == Rational(h.degree[i]) * h.fields[i]) ++graded;
  rep.checks.push_back(check("[z, f] = deg(f) f for all 15 fields", graded == h.fields.size(),
                             std::to_string(graded) + "/15"));
  std::vector<int> sizes(4, 0);
  for (int d : h.degree) ++sizes[static_cast<std::size_t>(d + 1)];
  rep.checks.push_back(check("graded sizes (4, 6, 4, 1)", sizes == std::vector<int>{4, 6, 4, 1}));
  rep.checks.push_back(check("the 15 fields are independent", rank_of(field_matrix(h.fields)) == 15));

  // Closure under the bracket.
  std::size_t closed = 0, pairs = 0;
  for (const auto& a : h.fields)
    for (const auto& b : h.fields) {
      ++pairs;
      auto all = h.fields;
      all.push_back(field_bracket(a, b));
      if (rank_of(field_matrix(all)) == 15) ++closed;
    }
  rep.checks.push_back(check("closed under the bracket", closed == pairs,
                             std::to_string(closed) + "/" + std::to_string(pairs)));

  // The solver space is the 15 fields plus z, graded (4, 7, 4, 1).
  auto r = solve_global_fields(t, 2);
  auto all = h.fields;
  all.push_back(h.z);
  auto dims = odd_grading_dimensions(r.fields);
  std::vector<std::pair<int, std::size_t>> want = {{-1, 4}, {0, 7}, {1, 4}, {2, 1}};
  std::size_t joint = rank_of(field_matrix([&] {
    auto v = all;
    for (const auto& f : r.fields) v.push_back(f);
    return v;
  }()));
  rep.checks.push_back(check("global fields = listed fields + z", r.dimension == 16 && joint == 16,
                             "solver " + std::to_string(r.dimension) + ", joint rank " + std::to_string(joint)));
  rep.checks.push_back(check("z-eigenvalue dimensions (4, 7, 4, 1)", dims == want, dims_text(dims)));

  // The μ image is the part of degree -1, 0, 1 together with z.
  std::vector<SuperDerivation> mus;
  for (const auto& X : gl_basis(2, 2)) mus.push_back(fundamental_field(X, h.chart));
  std::vector<SuperDerivation> low;
  for (std::size_t i = 0; i < h.fields.size(); ++i)
    if (h.degree[i] < 2) low.push_back(h.fields[i]);
  low.push_back(h.z);
  auto joint2 = mus;
  for (const auto& f : low) joint2.push_back(f);
  std::size_t rm = rank_of(field_matrix(mus)), rl = rank_of(field_matrix(low)), rj = rank_of(field_matrix(joint2));
  rep.checks.push_back(check("μ image = degrees -1, 0, 1 plus z", rm == 15 && rl == 15 && rj == 15,
                             "ranks " + std::to_string(rm) + ", " + std::to_string(rl) + ", " + std::to_string(rj)));
  return rep;
}

SuiteReport verify_bwb_table(std::size_t max_m, std::size_t max_n) {
  SuiteReport rep{"bwb-table", {}};
  // Weyl dimensions against the tableau count first.
  std::size_t ok = 0, total = 0;
  std::string bad;
  for (std::size_t k = 1; k <= 4; ++k) {
    std::vector<long> a(k, 2);
    std::function<void(std::size_t, long)> rec = [&](std::size_t i, long hi) {
      if (i == k) {
        ++total;
        Weight w{a, {}};
        Integer d = weyl_dim(w);
        if (d == Integer(static_cast<unsigned long>(count_tableaux(a))))
          ++ok;
        else if (bad.empty())
          bad = w.to_string();
        return;
      }
      for (long v = hi; v >= -2; --v) {
        a[i] = v;
        rec(i + 1, v);
      }
    };
    rec(0, 2);
  }
  rep.checks.push_back(check("weyl_dim equals the tableau count, gl_1..gl_4, entries in [-2, 2]", ok == total,
                             std::to_string(ok) + "/" + std::to_string(total) + (bad.empty() ? "" : " first bad " + bad)));

  auto rows = section_table(max_m, max_n);
  std::size_t agree = 0, conflicts = 0;
  std::string first;
  for (const auto& r : rows) {
    if (r.conflict) ++conflicts;
    if (r.agrees())
      ++agree;
    else if (first.empty())
      first = " first mismatch (" + std::to_string(r.m) + "," + std::to_string(r.n) + "," + std::to_string(r.k1) +
              "," + std::to_string(r.l1) + ")";
  }
  rep.checks.push_back(check("every covered (m,n,k1,l1) with m,n <= " + std::to_string(max_m) + " matches its case",
                             agree == rows.size(), std::to_string(agree) + "/" + std::to_string(rows.size()) + first));
  CheckResult ov = check("no tuple matches two cases with different modules", conflicts == 0,
                         std::to_string(conflicts) + " conflicting tuples");
  rep.checks.push_back(ov);

  auto dim = [](std::size_t m, std::size_t n, std::size_t k, std::size_t l) {
    return bwb_sections(psi_weights(m, n, k, l)).dimension;
  };
  rep.checks.push_back(check("(3,3,1,1) -> 1", dim(3, 3, 1, 1) == 1));
  rep.checks.push_back(check("(2,3,2,1) -> 10", dim(2, 3, 2, 1) == 10, dim(2, 3, 2, 1).get_str()));
  rep.checks.push_back(check("(3,2,1,0) -> 0", dim(3, 2, 1, 0) == 0));
  auto fa = fiber_dim(psi_weights(2, 2, 0, 0, PsiCase::ExceptionalA));
  auto fb1 = fiber_dim(psi_weights(2, 2, 0, 0, PsiCase::ExceptionalB1));
  auto fb2 = fiber_dim(psi_weights(2, 2, 0, 0, PsiCase::ExceptionalB2));
  rep.checks.push_back(check("exceptional fibers: 17 for a, 16 for b", fa == 17 && fb1 == 16 && fb2 == 16,
                             fa.get_str() + ", " + fb1.get_str() + ", " + fb2.get_str()));
  auto g21 = fiber_dim(psi_weights(2, 1, 2, 1));
  rep.checks.push_back(check("generic (k1,l1) = (2,1) fiber: 8", g21 == 8, g21.get_str()));
  return rep;
}

SuiteReport verify_functions() {
  SuiteReport rep{"functions", {}};
  struct Case {
    const char* space;
    std::size_t want;
  };
  for (const auto& c : {Case{"Gr(2|1; 1|1)", 1}, Case{"F(2|2; 1,1|2,1)", 1}, Case{"Gr(1|1; 0|1)", 2},
                        Case{"Gr(1|2; 0|2)", 4}}) {
    auto r = solve_global_functions(FlagType::parse(c.space), 2);
    rep.checks.push_back(check(std::string("global functions on ") + c.space + " = " + std::to_string(c.want),
                               r.dimension == c.want && r.stabilized,
                               std::to_string(r.dimension) + (r.stabilized ? ", stabilized" : ", not stabilized")));
  }
  return rep;
}

SuiteReport verify_lift() {
  SuiteReport rep{"lift", {}};
  FlagType t = FlagType::parse("F(2|2; 1,1|2,1)");
  Chart base = standard_chart(t.base());
  auto theta = parse_field("x^1_{11}: ξ^1_{11}*ξ^1_{12}", base.vars);
  auto r = lift_query(theta, t);
  Chart S = standard_chart(t);
  auto has_rule = [&](const char* var, const char* rhs) {
    auto want = parse_polynomial(rhs, S.vars, flag2211_aliases());
    return std::any_of(r.rules.begin(), r.rules.end(), [&](const DerivativeRule& d) {
      return d.coordinate == "η^2_{11}" && d.var == S.vars->name(S.vars->at(var)) && d.rhs == want;
    });
  };
  std::string detail = r.feasible ? "feasible, witness " + r.witness->to_string() : "infeasible";
  rep.checks.push_back(check("θ has no lift to " + t.to_string(), !r.feasible, detail));
  bool pair = !r.feasible && has_rule("ξ^1_{11}", "y") && has_rule("y^2_{11}", "-ξ1");
  rep.checks.push_back(check("certificate contains ∂g/∂ξ1 = y and ∂g/∂y = -ξ1", pair,
                             r.feasible ? "no certificate" : r.to_text()));
  if (r.feasible) {
    Atlas atlas(t);
    std::string why;
    CheckResult w = check("the witness is a global field", is_global(*r.witness, atlas, &why), why);
    w.informational = true;
    rep.checks.push_back(w);
  }
  // The quoted list of fundamental fields on this chart, checked against [E34, E42] = E32.
  auto q = [&](const char* s) { return parse_field(s, S.vars, flag2211_aliases()); };
  auto q34 = q("ξ2: -ξ1; y: -1"), q42 = q("x: ξ2; η: y"), q32 = q("x: ξ1; η: -1");
  auto br = field_bracket(q34, q42);
  CheckResult quoted = check("quoted fields E34, E42, E32 satisfy [μE34, μE42] = ±μE32", br == q32 || br == -q32,
                             "bracket = " + br.to_string());
  quoted.informational = true;
  rep.checks.push_back(quoted);
  auto m34 = fundamental_field(GlElement::E(2, 2, 3, 4), S), m42 = fundamental_field(GlElement::E(2, 2, 4, 2), S),
       m32 = fundamental_field(GlElement::E(2, 2, 3, 2), S);
  CheckResult ours = check("computed μE34, μE42, μE32 satisfy it", field_bracket(m34, m42) == -m32,
                           "μE34 = " + m34.to_string() + ", μE42 = " + m42.to_string() + ", μE32 = " + m32.to_string());
  ours.informational = true;
  rep.checks.push_back(ours);
  return rep;
}

SuiteReport run_suite(const std::string& name, const VerifyOptions& opts) {
  if (name == "homomorphism") return verify_homomorphism(opts.space.value_or(FlagType::parse("Gr(2|2; 1|1)")), opts.seed);
  if (name == "kernel") return verify_kernel(opts.space.value_or(FlagType::parse("Gr(2|2; 1|1)")));
  if (name == "golden-fields") return verify_golden_fields();
  if (name == "h4") return verify_h4();
  if (name == "bwb-table") return verify_bwb_table();
  if (name == "functions") return verify_functions();
  if (name == "lift") return verify_lift();
  throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace superflag

#include "superflag/global_solver.hpp"

#include <algorithm>
#include <future>
#include <json.hpp>
#include <limits>
#include <sstream>

#include "superflag/linalg.hpp"

namespace superflag {

namespace {

constexpr std::size_t kNoCoord = std::numeric_limits<std::size_t>::max();

struct Item {
  std::size_t coord;  // kNoCoord for a function ansatz
  Monomial mono;
};

std::vector<Monomial> monomials_up_to(const VarTable& t, int degree) {
  std::vector<Monomial> out;
  std::size_t ne = t.num_even();
  Monomial m;
  // Even exponent vectors with total <= degree.
  std::vector<Monomial> evens;
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == ne) {
      evens.push_back(m);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      m.exps[i] = static_cast<std::uint8_t>(e);
      rec(i + 1, left - e);
    }
    m.exps[i] = 0;
  };
  rec(0, degree);
  for (const auto& e : evens)
    for (std::uint32_t s = 0; s < (1U << t.num_odd()); ++s) {
      Monomial x = e;
      x.odd = s;
      out.push_back(x);
    }
  std::sort(out.begin(), out.end(), MonomialLess());
  return out;
}

std::vector<Item> field_ansatz(const Chart& c, int degree, Parity want, bool vertical) {
  std::vector<Item> items;
  auto monos = monomials_up_to(*c.vars, degree);
  for (std::size_t u = 0; u < c.vars->size(); ++u) {
    if (vertical && c.level_of[u] < 2) continue;
    Parity pu = c.vars->var(u).parity;
    for (const auto& m : monos)
      if ((m.parity() + pu) == want) items.push_back({u, m});
  }
  return items;
}

std::vector<Item> function_ansatz(const Chart& c, int degree) {
  std::vector<Item> items;
  for (const auto& m : monomials_up_to(*c.vars, degree)) items.push_back({kNoCoord, m});
  return items;
}

SuperDerivation item_field(const Chart& c, const Item& it) {
  SuperDerivation d(c.vars);
  d.coeff(it.coord) = RationalSuperFunction(SuperPolynomial::monomial(c.vars, it.mono));
  return d;
}

/// Pullbacks from the standard chart to one other chart.
class ChartPullback {
 public:
  ChartPullback(const Atlas& atlas, std::size_t chart)
      : atlas_(atlas), chart_(chart),
        psi_(atlas.transition(chart, atlas.standard())),
        phi_(atlas.transition(atlas.standard(), chart)) {
    std::size_t ns = atlas.chart(atlas.standard()).vars->size();
    std::size_t nt = atlas.chart(chart).vars->size();
    jac_.assign(ns, std::vector<std::optional<RationalSuperFunction>>(nt));
  }

  const Chart& target() const { return atlas_.chart(chart_); }
  std::size_t target_size() const { return phi_.size(); }
  const std::vector<RationalSuperFunction>& psi() const { return psi_; }

  // (d phi_w / d u) o psi
  const RationalSuperFunction& jac(std::size_t u, std::size_t w) {
    auto& slot = jac_[u][w];
    if (!slot) {
      const Chart& s = atlas_.chart(atlas_.standard());
      slot = phi_[w].partial(s.vars->var(u)).substitute(psi_);
    }
    return *slot;
  }

  const RationalSuperFunction& mono(const Monomial& m) {
    auto it = monos_.find(m);
    if (it != monos_.end()) return it->second;
    RationalSuperFunction img;
    const Chart& s = atlas_.chart(atlas_.standard());
    if (m.is_one()) {
      img = RationalSuperFunction::constant(target().vars, 1);
    } else if (m.odd) {
      unsigned top = 31U - static_cast<unsigned>(std::countl_zero(m.odd));
      Monomial parent = m;
      parent.odd &= ~(1U << top);
      img = mono(parent) * psi_[s.vars->num_even() + top];
    } else {
      std::size_t i = kMaxEven;
      while (i-- > 0)
        if (m.exps[i]) break;
      Monomial parent = m;
      --parent.exps[i];
      img = mono(parent) * psi_[i];
    }
    return monos_.emplace(m, std::move(img)).first->second;
  }

 private:
  const Atlas& atlas_;
  std::size_t chart_;
  const std::vector<RationalSuperFunction>& psi_;
  const std::vector<RationalSuperFunction>& phi_;
  std::vector<std::vector<std::optional<RationalSuperFunction>>> jac_;
  std::map<Monomial, RationalSuperFunction, MonomialLess> monos_;
};

struct Group {
  std::string label;
  std::vector<SparseRow> rows;
  int priority = 0;  // deletion order for certificates: lower goes first
};

/// Rows saying sum_k c_k parts[k] + fixed is regular, one row per remainder
/// monomial. Column `rhs` carries the fixed part.
std::vector<SparseRow> regularity_rows(const std::vector<std::pair<std::uint32_t, RationalSuperFunction>>& parts,
                                       const VarTablePtr& table) {
  std::vector<RationalSuperFunction::Factor> common;
  for (const auto& [c, f] : parts)
    for (const auto& fac : f.factors()) {
      auto it = std::find_if(common.begin(), common.end(), [&](const auto& g) { return g.poly == fac.poly; });
      if (it == common.end())
        common.push_back(fac);
      else
        it->exp = std::max(it->exp, fac.exp);
    }
  if (common.empty()) return {};
  SuperPolynomial D = SuperPolynomial::constant(table, 1);
  for (const auto& f : common) D = D * f.poly.pow(static_cast<unsigned>(f.exp));
  std::map<Monomial, std::vector<std::pair<std::uint32_t, Rational>>, MonomialLess> by_mono;
  for (const auto& [col, f] : parts) {
    SuperPolynomial n = f.num();
    for (const auto& c : common) {
      int have = 0;
      for (const auto& g : f.factors())
        if (g.poly == c.poly) have = g.exp;
      if (c.exp > have) n = n * c.poly.pow(static_cast<unsigned>(c.exp - have));
    }
    SuperPolynomial r = n.remainder(D);
    for (const auto& t : r.terms()) by_mono[t.mono].emplace_back(col, t.coeff);
  }
  std::vector<SparseRow> rows;
  for (auto& [m, entries] : by_mono) {
    SparseRow row = make_row(std::move(entries));
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

/// Regularity groups on one chart, one per target coordinate (or one for functions).
std::vector<Group> chart_groups(const Atlas& atlas, std::size_t chart, const std::vector<Item>& items,
                                const SuperDerivation* fixed, bool functions) {
  ChartPullback pb(atlas, chart);
  const Chart& tgt = pb.target();
  const Chart& src = atlas.chart(atlas.standard());
  auto rhs = static_cast<std::uint32_t>(items.size());
  std::vector<Group> groups;
  if (functions) {
    std::vector<std::pair<std::uint32_t, RationalSuperFunction>> parts;
    for (std::size_t k = 0; k < items.size(); ++k)
      parts.emplace_back(static_cast<std::uint32_t>(k), pb.mono(items[k].mono));
    groups.push_back({"regularity on chart " + tgt.index.to_string(), regularity_rows(parts, tgt.vars), 0});
    return groups;
  }
  std::vector<std::optional<RationalSuperFunction>> fixed_pull;
  if (fixed) {
    fixed_pull.resize(src.vars->size());
    for (std::size_t u = 0; u < src.vars->size(); ++u)
      if (!fixed->coeff(u).is_zero()) fixed_pull[u] = fixed->coeff(u).substitute(pb.psi());
  }
  for (std::size_t w = 0; w < pb.target_size(); ++w) {
    std::vector<std::pair<std::uint32_t, RationalSuperFunction>> parts;
    for (std::size_t k = 0; k < items.size(); ++k) {
      const auto& J = pb.jac(items[k].coord, w);
      if (J.is_zero()) continue;
      auto r = pb.mono(items[k].mono) * J;
      if (!r.is_zero()) parts.emplace_back(static_cast<std::uint32_t>(k), std::move(r));
    }
    if (fixed) {
      std::vector<RationalSuperFunction> terms;
      for (std::size_t u = 0; u < fixed_pull.size(); ++u)
        if (fixed_pull[u]) {
          const auto& J = pb.jac(u, w);
          if (!J.is_zero()) terms.push_back(*fixed_pull[u] * J);
        }
      auto f = sum(terms, tgt.vars);
      if (!f.is_zero()) parts.emplace_back(rhs, std::move(f));
    }
    if (parts.empty()) continue;
    auto rows = regularity_rows(parts, tgt.vars);
    if (rows.empty()) continue;
    groups.push_back({"regularity on chart " + tgt.index.to_string() + ", component ∂/∂" +
                          tgt.vars->name(tgt.vars->var(w)),
                      std::move(rows), 0});
  }
  return groups;
}

std::vector<Group> all_regularity_groups(const Atlas& atlas, const std::vector<Item>& items,
                                         const SuperDerivation* fixed, bool functions, bool parallel) {
  std::vector<Group> out;
  std::vector<std::size_t> charts;
  for (std::size_t j = 0; j < atlas.size(); ++j)
    if (j != atlas.standard()) charts.push_back(j);
  if (parallel) {
    // Warm the transition cache first so workers only read it.
    for (auto j : charts) {
      atlas.transition(j, atlas.standard());
      atlas.transition(atlas.standard(), j);
    }
    std::vector<std::future<std::vector<Group>>> futs;
    for (auto j : charts)
      futs.push_back(std::async(std::launch::async, [&, j] { return chart_groups(atlas, j, items, fixed, functions); }));
    for (auto& f : futs)
      for (auto& g : f.get()) out.push_back(std::move(g));
  } else {
    for (auto j : charts)
      for (auto& g : chart_groups(atlas, j, items, fixed, functions)) out.push_back(std::move(g));
  }
  return out;
}

std::vector<std::vector<Rational>> homogeneous_nullspace(const std::vector<Group>& groups, std::size_t n) {
  Echelon e(static_cast<std::uint32_t>(n));
  for (const auto& g : groups)
    for (const auto& r : g.rows) e.add(r);
  return e.nullspace();
}

SuperDerivation combine_fields(const Chart& c, const std::vector<Item>& items, const std::vector<Rational>& coeffs) {
  SuperDerivation v(c.vars);
  std::vector<std::vector<SuperPolynomial::Term>> terms(c.vars->size());
  for (std::size_t k = 0; k < items.size(); ++k)
    if (coeffs[k] != 0) terms[items[k].coord].push_back({items[k].mono, coeffs[k]});
  for (std::size_t u = 0; u < terms.size(); ++u)
    if (!terms[u].empty()) v.coeff(u) = RationalSuperFunction(SuperPolynomial(c.vars, std::move(terms[u])));
  return v;
}

std::vector<std::string> chart_certificates(const Atlas& atlas) {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < atlas.size(); ++j)
    if (j != atlas.standard()) out.push_back("regular on chart " + atlas.indices()[j].to_string());
  return out;
}

}  // namespace

std::vector<SuperDerivation> global_fields_at(const Atlas& atlas, int degree, const SolveOptions& opts) {
  const Chart& s = atlas.chart(atlas.standard());
  std::vector<SuperDerivation> basis;
  for (Parity p : {Parity::Even, Parity::Odd}) {
    auto items = field_ansatz(s, degree, p, opts.vertical);
    if (items.empty()) continue;
    auto groups = all_regularity_groups(atlas, items, nullptr, false, opts.parallel);
    for (const auto& v : homogeneous_nullspace(groups, items.size()))
      basis.push_back(combine_fields(s, items, v));
  }
  return basis;
}

namespace {
std::vector<SuperPolynomial> global_functions_at(const Atlas& atlas, int degree, const SolveOptions& opts) {
  const Chart& s = atlas.chart(atlas.standard());
  auto items = function_ansatz(s, degree);
  auto groups = all_regularity_groups(atlas, items, nullptr, true, opts.parallel);
  std::vector<SuperPolynomial> out;
  for (const auto& v : homogeneous_nullspace(groups, items.size())) {
    std::vector<SuperPolynomial::Term> terms;
    for (std::size_t k = 0; k < items.size(); ++k)
      if (v[k] != 0) terms.push_back({items[k].mono, v[k]});
    out.emplace_back(s.vars, std::move(terms));
  }
  return out;
}
}  // namespace

SolveReport solve_global_fields(const FlagType& t, int degree, const SolveOptions& opts) {
  if (degree < 0) throw AlgebraError("degree must be nonnegative");
  Atlas atlas(t);
  SolveReport r;
  r.space = t.to_string();
  r.degree = degree;
  r.fields = global_fields_at(atlas, degree, opts);
  r.dimension = r.fields.size();
  if (opts.check_stabilization) {
    r.dimension_next = global_fields_at(atlas, degree + 1, opts).size();
    r.stabilized = r.dimension_next == r.dimension;
  } else {
    r.dimension_next = r.dimension;
    r.stabilized = false;
  }
  for (const auto& f : r.fields) r.basis.push_back(f.to_text());
  r.certificates = chart_certificates(atlas);
  return r;
}

SolveReport solve_global_functions(const FlagType& t, int degree, const SolveOptions& opts) {
  if (degree < 0) throw AlgebraError("degree must be nonnegative");
  Atlas atlas(t);
  SolveReport r;
  r.space = t.to_string();
  r.degree = degree;
  r.functions = global_functions_at(atlas, degree, opts);
  r.dimension = r.functions.size();
  if (opts.check_stabilization) {
    r.dimension_next = global_functions_at(atlas, degree + 1, opts).size();
    r.stabilized = r.dimension_next == r.dimension;
  } else {
    r.dimension_next = r.dimension;
  }
  for (const auto& f : r.functions) r.basis.push_back(f.to_string());
  r.certificates = chart_certificates(atlas);
  return r;
}

std::vector<GlElement> mu_kernel(const FlagType& t) {
  Chart c = standard_chart(t);
  auto m = static_cast<std::size_t>(t.m), n = static_cast<std::size_t>(t.n);
  std::vector<GlElement> basis;
  std::vector<SuperDerivation> images;
  for (std::size_t a = 1; a <= m + n; ++a)
    for (std::size_t b = 1; b <= m + n; ++b) {
      basis.push_back(GlElement::E(m, n, a, b));
      images.push_back(fundamental_field(basis.back(), c));
    }
  auto M = field_matrix(images);
  std::size_t cols = M.empty() ? 0 : M[0].size();
  std::vector<std::vector<Rational>> eqs(cols, std::vector<Rational>(basis.size(), 0));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) eqs[j][i] = M[i][j];
  std::vector<GlElement> out;
  for (const auto& v : nullspace_of(eqs, basis.size())) {
    GlElement x(m, n);
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (v[i] != 0) x += v[i] * basis[i];
    out.push_back(x);
  }
  return out;
}

bool is_global(const SuperDerivation& v, const Atlas& atlas, std::string* failure) {
  for (std::size_t j = 0; j < atlas.size(); ++j) {
    auto p = pushforward(v, atlas, atlas.standard(), j);
    for (std::size_t w = 0; w < p.coeffs().size(); ++w)
      if (!p.coeff(w).regular_part()) {
        if (failure)
          *failure = "chart " + atlas.indices()[j].to_string() + ", ∂/∂" +
                     p.table()->name(p.table()->var(w)) + ": " + p.coeff(w).to_string();
        return false;
      }
  }
  return true;
}

std::vector<std::pair<int, std::size_t>> odd_grading_dimensions(const std::vector<SuperDerivation>& fields) {
  std::map<int, std::vector<SuperDerivation>> parts;
  for (const auto& f : fields) {
    std::map<int, SuperDerivation> split;
    for (std::size_t u = 0; u < f.coeffs().size(); ++u) {
      auto p = f.coeff(u).regular_part();
      if (!p) throw AlgebraError("grading needs polynomial fields");
      int shift = f.table()->var(u).parity == Parity::Odd ? 1 : 0;
      for (const auto& t : p->terms()) {
        int ev = static_cast<int>(t.mono.odd_degree()) - shift;
        auto [it, ins] = split.try_emplace(ev, f.table());
        it->second.coeff(u) += RationalSuperFunction(SuperPolynomial::monomial(f.table(), t.mono, t.coeff));
      }
    }
    for (auto& [ev, g] : split) parts[ev].push_back(std::move(g));
  }
  std::vector<std::pair<int, std::size_t>> out;
  for (auto& [ev, gs] : parts) {
    std::size_t r = rank_of(field_matrix(gs));
    if (r) out.emplace_back(ev, r);
  }
  return out;
}

// ---------------------------------------------------------------- lift queries

namespace {

struct PdeTerm {
  SuperPolynomial coef;
  std::size_t unknown;             // index into vertical coordinates
  std::optional<std::size_t> var;  // derivative variable (flat), none for zero order
};

struct Pde {
  std::string source;
  std::vector<PdeTerm> lhs;
  SuperPolynomial rhs;
};

std::string letter(std::size_t i) {
  static const char* names[] = {"f", "g", "h", "k", "p", "q", "r", "s"};
  return i < 8 ? names[i] : "g" + std::to_string(i);
}

std::string render(const Pde& e, const VarTable& t, const std::vector<std::size_t>& unknown_coord) {
  (void)unknown_coord;
  std::string lhs;
  for (const auto& term : e.lhs) {
    std::string atom = term.var ? "∂" + letter(term.unknown) + "/∂" + t.name(t.var(*term.var))
                                : letter(term.unknown);
    std::string c = term.coef.to_string();
    bool neg = !term.coef.is_zero() && term.coef.leading_term().coeff < 0 && term.coef.size() == 1;
    std::string body;
    if (neg) c = (-term.coef).to_string();
    if (c == "1")
      body = atom;
    else if (term.coef.size() == 1)
      body = c + "*" + atom;
    else
      body = "(" + c + ")*" + atom;
    if (lhs.empty())
      lhs = (neg ? "-" : "") + body;
    else
      lhs += (neg ? " - " : " + ") + body;
  }
  if (lhs.empty()) lhs = "0";
  return lhs + " = " + e.rhs.to_string();
}

// Substitutes known derivative rules and extracts new ones until stable.
std::vector<DerivativeRule> derive_rules(std::vector<Pde> eqs, const Chart& c,
                                         const std::vector<std::size_t>& unknown_coord) {
  struct Rule {
    std::size_t unknown, var;
    SuperPolynomial rhs;
  };
  std::vector<Rule> rules;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& e : eqs) {
      std::vector<PdeTerm> keep;
      for (auto& term : e.lhs) {
        auto it = std::find_if(rules.begin(), rules.end(), [&](const Rule& r) {
          return term.var && r.unknown == term.unknown && r.var == *term.var;
        });
        if (it != rules.end())
          e.rhs -= term.coef * it->rhs;
        else
          keep.push_back(term);
      }
      e.lhs = std::move(keep);
      if (e.lhs.size() == 1 && e.lhs[0].var && e.lhs[0].coef.is_constant() && !e.lhs[0].coef.is_zero()) {
        Rule r{e.lhs[0].unknown, *e.lhs[0].var, e.rhs * Rational(1 / e.lhs[0].coef.constant_term())};
        rules.push_back(r);
        e.lhs.clear();
        e.rhs = SuperPolynomial(c.vars);
        changed = true;
      }
    }
  }
  std::vector<DerivativeRule> out;
  for (const auto& r : rules)
    out.push_back({letter(r.unknown), c.vars->name(c.vars->var(unknown_coord[r.unknown])),
                   c.vars->name(c.vars->var(r.var)), r.rhs});
  return out;
}

bool consistent(const std::vector<const Group*>& groups, std::size_t n) {
  Echelon e(static_cast<std::uint32_t>(n + 1));
  for (const auto* g : groups)
    for (const auto& r : g->rows) {
      e.add(r);
      if (!e.rows().empty() && e.rows().back().lead() == n) return false;
    }
  return true;
}

std::size_t field_weight(const SuperDerivation& v) {
  std::size_t w = 0;
  for (const auto& c : v.coeffs()) w += c.num().size();
  return w;
}

}  // namespace

LiftResult lift_query(const SuperDerivation& w_in, const FlagType& t, int degree) {
  if (t.length() < 2) throw AlgebraError("lift_query needs a flag of length >= 2");
  Atlas atlas(t);
  const Chart& S = atlas.chart(atlas.standard());
  Chart B = base_chart(S);
  SuperDerivation w = w_in.is_zero() ? SuperDerivation(B.vars) : w_in.remap(B.vars);
  auto pw = w.parity();
  if (!pw) throw AlgebraError("lift_query needs a homogeneous field");
  SuperDerivation L = lift_base_field(w, S);

  auto items = field_ansatz(S, degree, *pw, true);
  std::size_t n = items.size();
  auto rhs_col = static_cast<std::uint32_t>(n);
  std::vector<SuperDerivation> item_fields;
  for (const auto& it : items) item_fields.push_back(item_field(S, it));

  LiftResult res;
  std::vector<std::size_t> unknown_coord;
  for (std::size_t u = 0; u < S.vars->size(); ++u)
    if (S.level_of[u] >= 2) {
      res.unknown_names.push_back(letter(unknown_coord.size()) + " = coefficient of ∂/∂" +
                                  S.vars->name(S.vars->var(u)));
      unknown_coord.push_back(u);
    }

  std::vector<Group> groups = all_regularity_groups(atlas, items, &L, false, false);
  auto homog_regular = all_regularity_groups(atlas, items, nullptr, false, false);

  for (const auto& v : homogeneous_nullspace(homog_regular, n)) res.vertical_space.push_back(combine_fields(S, items, v));
  // Bracket conditions: [mu X, lift] must match the base decomposition. This
  // needs the projection to be injective, i.e. no vertical global fields.
  res.used_brackets = res.vertical_space.empty();
  auto m = static_cast<std::size_t>(t.m), nn = static_cast<std::size_t>(t.n);
  std::vector<GlElement> gl;
  std::vector<SuperDerivation> mu_base, mu_flag;
  if (res.used_brackets)
    for (std::size_t a = 1; a <= m + nn; ++a)
      for (std::size_t b = 1; b <= m + nn; ++b) {
        gl.push_back(GlElement::E(m, nn, a, b));
        mu_base.push_back(fundamental_field(gl.back(), B));
        mu_flag.push_back(fundamental_field(gl.back(), S));
      }
  std::map<std::string, Pde> pdes;
  for (std::size_t x = 0; x < gl.size(); ++x) {
    SuperDerivation br = field_bracket(mu_base[x], w);
    std::vector<SuperDerivation> span = mu_base;
    span.push_back(w);
    span.push_back(br);
    auto M = field_matrix(span);
    std::vector<Rational> target = M.back();
    M.pop_back();
    auto coef = express_in(M, target);
    if (!coef) continue;
    SuperDerivation muY(S.vars);
    for (std::size_t k = 0; k < gl.size(); ++k)
      if ((*coef)[k] != 0) muY += (*coef)[k] * mu_flag[k];
    Rational c = coef->back();
    const SuperDerivation& a = mu_flag[x];
    Parity pa = *gl[x].parity();
    SuperDerivation T = muY + c * L - field_bracket(a, L);
    std::vector<SuperDerivation> Fk;
    Fk.reserve(n);
    for (const auto& v : item_fields) Fk.push_back(field_bracket(a, v) - c * v);
    std::string xname = gl[x].to_string();
    for (std::size_t u = 0; u < S.vars->size(); ++u) {
      std::map<Monomial, std::vector<std::pair<std::uint32_t, Rational>>, MonomialLess> by_mono;
      for (std::size_t k = 0; k < n; ++k)
        if (!Fk[k].coeff(u).is_zero())
          for (const auto& term : Fk[k].coeff(u).num().terms()) by_mono[term.mono].emplace_back(k, term.coeff);
      auto Tu = T.coeff(u).regular_part();
      if (!Tu) throw AlgebraError("bracket target not polynomial");
      for (const auto& term : Tu->terms()) by_mono[term.mono].emplace_back(rhs_col, -term.coeff);
      Group g;
      g.label = "bracket with " + xname + ", component ∂/∂" + S.vars->name(S.vars->var(u));
      g.priority = 1000 - static_cast<int>(field_weight(a));
      for (auto& [mono, entries] : by_mono) {
        auto row = make_row(std::move(entries));
        if (!row.empty()) g.rows.push_back(std::move(row));
      }
      if (g.rows.empty()) continue;
      // Symbolic form: sum_z a_z dz g_u - s sum_u' g_u' du' a_u - c g_u = T_u
      Pde e;
      e.source = g.label;
      e.rhs = *Tu;
      int s = sign_of(pa, *pw);
      for (std::size_t ui = 0; ui < unknown_coord.size(); ++ui) {
        if (unknown_coord[ui] == u) {
          for (std::size_t z = 0; z < S.vars->size(); ++z)
            if (!a.coeff(z).is_zero()) e.lhs.push_back({*a.coeff(z).regular_part(), ui, z});
          if (c != 0) e.lhs.push_back({SuperPolynomial::constant(S.vars, -c), ui, std::nullopt});
        }
        auto da = a.coeff(u).partial(S.vars->var(unknown_coord[ui]));
        if (!da.is_zero())
          e.lhs.push_back({*da.regular_part() * Rational(-s), ui, std::nullopt});
      }
      pdes[g.label] = std::move(e);
      groups.push_back(std::move(g));
    }
  }

  std::vector<const Group*> all;
  for (const auto& g : groups) all.push_back(&g);

  if (consistent(all, n)) {
    Echelon e(static_cast<std::uint32_t>(n + 1));
    for (const auto* g : all)
      for (const auto& r : g->rows) e.add(r);
    e.make_reduced();
    std::vector<Rational> sol(n, 0);
    for (const auto& r : e.rows()) {
      const auto& last = r.entries.back();
      if (last.first == rhs_col) sol[r.lead()] = -Rational(last.second) / Rational(r.entries.front().second);
    }
    res.feasible = true;
    res.witness = L + combine_fields(S, items, sol);
    return res;
  }

  // Minimal inconsistent subset by greedy deletion.
  std::vector<const Group*> order = all;
  std::stable_sort(order.begin(), order.end(), [](const Group* a, const Group* b) { return a->priority < b->priority; });
  std::vector<const Group*> kept = all;
  for (const auto* g : order) {
    std::vector<const Group*> trial;
    for (const auto* h : kept)
      if (h != g) trial.push_back(h);
    if (!consistent(trial, n)) kept = std::move(trial);
  }
  std::vector<Pde> kept_pdes;
  for (const auto* g : kept) {
    auto it = pdes.find(g->label);
    if (it != pdes.end()) {
      res.certificate.push_back({g->label, render(it->second, *S.vars, unknown_coord)});
      kept_pdes.push_back(it->second);
    } else {
      res.certificate.push_back({g->label, std::to_string(g->rows.size()) + " linear conditions"});
    }
  }
  res.rules = derive_rules(kept_pdes, S, unknown_coord);
  return res;
}

std::string LiftResult::to_text() const {
  std::ostringstream os;
  os << (feasible ? "feasible" : "infeasible") << "\n";
  if (witness) os << "witness: " << witness->to_string() << "\n";
  if (!feasible) {
    for (const auto& u : unknown_names) os << "  " << u << "\n";
    os << "minimal inconsistent conditions:\n";
    for (const auto& c : certificate) os << "  [" << c.source << "] " << c.equation << "\n";
    if (!rules.empty()) os << "consequences:\n";
    for (const auto& r : rules) os << "  ∂" << r.unknown << "/∂" << r.var << " = " << r.rhs.to_string() << "\n";
    // Mixed partials of two rules on the same unknown.
    for (std::size_t i = 0; i < rules.size(); ++i)
      for (std::size_t j = i + 1; j < rules.size(); ++j) {
        if (rules[i].unknown != rules[j].unknown) continue;
        const auto& t = rules[i].rhs.table();
        Variable vi = t->at(rules[i].var), vj = t->at(rules[j].var);
        auto a = rules[j].rhs.partial(vi);  // d_i d_j g
        auto b = rules[i].rhs.partial(vj);  // d_j d_i g
        int s = sign_of(vi.parity, vj.parity);
        if (!(a == b * Rational(s)))
          os << "  ∂²" << rules[i].unknown << "/∂" << rules[i].var << "∂" << rules[j].var << " = " << a.to_string()
             << ", ∂²" << rules[i].unknown << "/∂" << rules[j].var << "∂" << rules[i].var << " = " << b.to_string()
             << ": contradiction\n";
      }
  }
  return os.str();
}

// ---------------------------------------------------------------- reports

std::string SolveReport::to_json() const {
  nlohmann::json j;
  j["space"] = space;
  j["degree"] = degree;
  j["dimension"] = dimension;
  j["stabilized"] = stabilized;
  j["dimension_next"] = dimension_next;
  j["basis"] = basis;
  j["certificates"] = certificates;
  return j.dump(2);
}

SolveReport SolveReport::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  SolveReport r;
  r.space = j.at("space").get<std::string>();
  r.degree = j.at("degree").get<int>();
  r.dimension = j.at("dimension").get<std::size_t>();
  r.stabilized = j.at("stabilized").get<bool>();
  r.dimension_next = j.value("dimension_next", r.dimension);
  r.basis = j.at("basis").get<std::vector<std::string>>();
  r.certificates = j.at("certificates").get<std::vector<std::string>>();
  return r;
}

std::string SolveReport::to_text() const {
  std::ostringstream os;
  os << "space: " << space << "\n";
  os << "degree: " << degree << "\n";
  os << "dimension: " << dimension << "\n";
  os << "stabilized: " << (stabilized ? "yes" : "no") << " (dimension at degree " << degree + 1 << ": "
     << dimension_next << ")\n";
  return os.str();
}

}  // namespace superflag

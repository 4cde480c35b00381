#include "superflag/fields.hpp"

#include <limits>

namespace superflag {

SuperDerivation::SuperDerivation(VarTablePtr table) : table_(std::move(table)) {
  coeffs_.assign(table_->size(), RationalSuperFunction(table_));
}

SuperDerivation::SuperDerivation(VarTablePtr table, std::vector<RationalSuperFunction> coeffs)
    : table_(std::move(table)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != table_->size()) throw AlgebraError("field: coefficient count mismatch");
}

SuperDerivation SuperDerivation::partial(VarTablePtr table, std::string_view var,
                                         const SuperPolynomial& coeff) {
  SuperDerivation d(table);
  d.coeffs_[table->flat(table->at(var))] = RationalSuperFunction(coeff);
  return d;
}

const RationalSuperFunction& SuperDerivation::coeff(std::string_view name) const {
  return coeffs_[table_->flat(table_->at(name))];
}

bool SuperDerivation::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

std::optional<Parity> SuperDerivation::parity() const {
  std::optional<Parity> p;
  for (std::size_t f = 0; f < coeffs_.size(); ++f) {
    if (coeffs_[f].is_zero()) continue;
    auto cp = coeffs_[f].parity();
    if (!cp) return std::nullopt;
    Parity fp = *cp + table_->var(f).parity;
    if (p && *p != fp) return std::nullopt;
    p = fp;
  }
  return p.value_or(Parity::Even);
}

namespace {
SuperDerivation parity_part(const SuperDerivation& v, Parity want) {
  SuperDerivation out(v.table());
  for (std::size_t f = 0; f < v.coeffs().size(); ++f) {
    const auto& c = v.coeff(f);
    if (c.is_zero()) continue;
    Parity coeff_parity = want + v.table()->var(f).parity;
    std::vector<SuperPolynomial::Term> keep;
    for (const auto& t : c.num().terms())
      if (t.mono.parity() == coeff_parity) keep.push_back(t);
    RationalSuperFunction part(SuperPolynomial(v.table(), std::move(keep)), c.factors());
    out.coeff(f) = part.reduce();
  }
  return out;
}
}  // namespace

SuperDerivation SuperDerivation::even_part() const { return parity_part(*this, Parity::Even); }
SuperDerivation SuperDerivation::odd_part() const { return parity_part(*this, Parity::Odd); }

bool SuperDerivation::is_polynomial() const {
  for (const auto& c : coeffs_)
    if (c.has_denominator()) return false;
  return true;
}

SuperDerivation SuperDerivation::operator-() const {
  SuperDerivation r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

SuperDerivation& SuperDerivation::operator+=(const SuperDerivation& o) {
  if (!table_) return *this = o;
  if (!o.table_) return *this;
  if (table_ != o.table_ && !table_->same_as(*o.table_)) throw AlgebraError("fields on different charts");
  for (std::size_t f = 0; f < coeffs_.size(); ++f) coeffs_[f] += o.coeffs_[f];
  return *this;
}

SuperDerivation& SuperDerivation::operator-=(const SuperDerivation& o) { return *this += -o; }

SuperDerivation& SuperDerivation::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= RationalSuperFunction::constant(table_, c);
  return *this;
}

bool operator==(const SuperDerivation& a, const SuperDerivation& b) {
  if (!a.table_ || !b.table_) return a.is_zero() && b.is_zero();
  if (a.coeffs_.size() != b.coeffs_.size()) return false;
  for (std::size_t f = 0; f < a.coeffs_.size(); ++f)
    if (!(a.coeffs_[f] == b.coeffs_[f])) return false;
  return true;
}

SuperDerivation SuperDerivation::remap(const VarTablePtr& target) const {
  SuperDerivation out(target);
  for (std::size_t f = 0; f < coeffs_.size(); ++f) {
    if (coeffs_[f].is_zero()) continue;
    Variable w = target->at(table_->name(table_->var(f)));
    out.coeffs_[target->flat(w)] = coeffs_[f].remap(target);
  }
  return out;
}

std::string SuperDerivation::to_string() const {
  std::string out;
  for (std::size_t f = 0; f < coeffs_.size(); ++f) {
    const auto& c = coeffs_[f];
    if (c.is_zero()) continue;
    std::string d = "∂/∂" + table_->name(table_->var(f));
    std::string cs = c.to_string();
    bool single = !c.has_denominator() && c.num().size() == 1;
    std::string piece;
    if (single) {
      Rational k = c.num().terms()[0].coeff;
      bool neg = k < 0;
      std::string body = (neg ? -c.num() : c.num()).to_string();
      piece = body == "1" ? d : body + " " + d;
      out += out.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
      out += piece;
    } else {
      if (!out.empty()) out += " + ";
      out += "(" + cs + ") " + d;
    }
  }
  return out.empty() ? "0" : out;
}

std::string SuperDerivation::to_text() const {
  std::string out;
  for (std::size_t f = 0; f < coeffs_.size(); ++f) {
    if (coeffs_[f].is_zero()) continue;
    if (!out.empty()) out += "; ";
    out += table_->name(table_->var(f)) + ": " + coeffs_[f].to_string();
  }
  return out;
}

RationalSuperFunction apply(const SuperDerivation& v, const RationalSuperFunction& f) {
  std::vector<RationalSuperFunction> parts;
  for (std::size_t k = 0; k < v.coeffs().size(); ++k) {
    if (v.coeff(k).is_zero()) continue;
    RationalSuperFunction d = f.partial(v.table()->var(k));
    if (d.is_zero()) continue;
    parts.push_back(v.coeff(k) * d);
  }
  return sum(parts, v.table());
}

RationalSuperFunction apply(const SuperDerivation& v, const SuperPolynomial& f) {
  return apply(v, RationalSuperFunction(f));
}

namespace {
SuperDerivation bracket_homogeneous(const SuperDerivation& a, Parity pa, const SuperDerivation& b,
                                    Parity pb) {
  SuperDerivation out(a.table());
  int s = sign_of(pa, pb);
  for (std::size_t k = 0; k < a.coeffs().size(); ++k) {
    RationalSuperFunction c = apply(a, b.coeff(k));
    RationalSuperFunction d = apply(b, a.coeff(k));
    out.coeff(k) = s < 0 ? c + d : c - d;
  }
  return out;
}
}  // namespace

SuperDerivation field_bracket(const SuperDerivation& a, const SuperDerivation& b) {
  if (a.table() != b.table() && !a.table()->same_as(*b.table()))
    throw AlgebraError("bracket of fields on different charts");
  auto pa = a.parity(), pb = b.parity();
  if (pa && pb) return bracket_homogeneous(a, *pa, b, *pb);
  SuperDerivation out(a.table());
  const SuperDerivation as[2] = {a.even_part(), a.odd_part()};
  const SuperDerivation bs[2] = {b.even_part(), b.odd_part()};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (as[i].is_zero() || bs[j].is_zero()) continue;
      out += bracket_homogeneous(as[i], static_cast<Parity>(i), bs[j], static_cast<Parity>(j));
    }
  return out;
}

SuperDerivation pushforward(const SuperDerivation& v, const Atlas& atlas, std::size_t from,
                            std::size_t to) {
  if (from == to) return v;
  const auto& phi = atlas.transition(from, to);
  const auto& psi = atlas.transition(to, from);
  const Chart& target = atlas.chart(to);
  SuperDerivation out(target.vars);
  for (std::size_t w = 0; w < phi.size(); ++w) {
    RationalSuperFunction g = apply(v, phi[w]);
    if (g.is_zero()) continue;
    out.coeff(w) = g.substitute(psi);
  }
  return out;
}

namespace {
SuperDerivation fundamental_homogeneous(const GlElement& X, Parity px, const Chart& chart) {
  const auto& vars = chart.vars;
  std::vector<std::string> odd;
  if (px == Parity::Odd)
    odd.push_back("τ");
  else {
    odd.push_back("τ1");
    odd.push_back("τ2");
  }
  std::size_t nt = odd.size();
  for (const auto& s : vars->odd_names()) odd.push_back(s);
  auto ext = VarTable::make(vars->even_names(), odd, vars->label() + " +τ");
  std::vector<std::size_t> flat_map(vars->size());
  for (std::size_t i = 0; i < vars->num_even(); ++i) flat_map[i] = i;
  for (std::size_t j = 0; j < vars->num_odd(); ++j) flat_map[vars->num_even() + j] = ext->num_even() + nt + j;

  std::vector<SuperMatrix> Z;
  for (const auto& z : chart.Z)
    Z.push_back(z.map([&](const RationalSuperFunction& f) { return f.remap(ext, flat_map); }, ext));

  SuperPolynomial t = SuperPolynomial::variable(ext, Variable{Parity::Odd, 0});
  if (nt == 2) t = t * SuperPolynomial::variable(ext, Variable{Parity::Odd, 1});
  auto m = static_cast<std::size_t>(chart.type.m), n = static_cast<std::size_t>(chart.type.n);
  SuperMatrix L = SuperMatrix::identity(ext, {m, n});
  for (std::size_t i = 0; i < m + n; ++i)
    for (std::size_t j = 0; j < m + n; ++j)
      if (X(i, j) != 0) L(i, j) += RationalSuperFunction(t * X(i, j));

  auto acted = act_on_chart(Z, &L, chart.type, chart.index);
  // Back from ext to the chart table; tau must not survive.
  std::vector<std::size_t> back(ext->size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t f = 0; f < vars->size(); ++f) back[flat_map[f]] = f;

  SuperDerivation out(vars);
  for (std::size_t f = 0; f < vars->size(); ++f) {
    auto [r, c] = chart.position[f];
    const RationalSuperFunction& e = acted[static_cast<std::size_t>(chart.level_of[f] - 1)](r, c);
    RationalSuperFunction coeff = e.partial(Variable{Parity::Odd, 0});
    if (nt == 2) coeff = e.partial(Variable{Parity::Odd, 0}).partial(Variable{Parity::Odd, 1});
    if (coeff.is_zero()) continue;
    out.coeff(f) = coeff.remap(vars, back);
  }
  return out;
}
}  // namespace

SuperDerivation fundamental_field(const GlElement& X, const Chart& chart) {
  if (X.m() != static_cast<std::size_t>(chart.type.m) || X.n() != static_cast<std::size_t>(chart.type.n))
    throw AlgebraError("fundamental_field: size mismatch");
  SuperDerivation out(chart.vars);
  GlElement ev = X.even_part(), od = X.odd_part();
  if (!ev.is_zero()) out += fundamental_homogeneous(ev, Parity::Even, chart);
  if (!od.is_zero()) out += fundamental_homogeneous(od, Parity::Odd, chart);
  return out;
}

Chart base_chart(const Chart& chart) {
  ChartIndex idx;
  idx.levels.push_back(chart.index.levels.at(0));
  return make_chart(chart.type.base(), idx);
}

namespace {
bool only_level_one(const SuperPolynomial& p, const Chart& chart) {
  for (const auto& t : p.terms()) {
    for (std::size_t i = 0; i < chart.vars->num_even(); ++i)
      if (t.mono.exps[i] && chart.level_of[i] != 1) return false;
    for (std::size_t j = 0; j < chart.vars->num_odd(); ++j)
      if ((t.mono.odd >> j) & 1U)
        if (chart.level_of[chart.vars->num_even() + j] != 1) return false;
  }
  return true;
}
}  // namespace

ProjectionResult project(const SuperDerivation& v, const Chart& chart) {
  ProjectionResult res;
  Chart base = base_chart(chart);
  res.base = SuperDerivation(base.vars);
  std::vector<std::size_t> to_base(chart.vars->size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t f = 0; f < chart.vars->size(); ++f)
    if (chart.level_of[f] == 1) {
      auto w = base.vars->find(chart.vars->name(chart.vars->var(f)));
      if (w) to_base[f] = base.vars->flat(*w);
    }
  for (std::size_t f = 0; f < chart.vars->size(); ++f) {
    if (chart.level_of[f] != 1) continue;
    const auto& c = v.coeff(f);
    if (c.is_zero()) continue;
    bool ok = only_level_one(c.num(), chart);
    for (const auto& fac : c.factors()) ok = ok && only_level_one(fac.poly, chart);
    if (!ok) {
      res.projectable = false;
      res.offending = chart.vars->name(chart.vars->var(f));
      res.base = SuperDerivation(base.vars);
      return res;
    }
    res.base.coeff(to_base[f]) = c.remap(base.vars, to_base);
  }
  res.projectable = true;
  return res;
}

SuperDerivation lift_base_field(const SuperDerivation& w, const Chart& chart) {
  return w.remap(chart.vars);
}

H4Basis h4_basis() {
  H4Basis h;
  h.chart = standard_chart(FlagType{2, 2, {1}, {2}});
  const auto& t = h.chart.vars;
  auto x = SuperPolynomial::variable(t, "x^1_{11}");
  auto s1 = SuperPolynomial::variable(t, "ξ^1_{11}");
  auto s2 = SuperPolynomial::variable(t, "ξ^1_{12}");
  auto one = SuperPolynomial::constant(t, 1);
  const std::string X = "x^1_{11}", S1 = "ξ^1_{11}", S2 = "ξ^1_{12}";
  auto d = [&](const std::string& v, const SuperPolynomial& c) { return SuperDerivation::partial(t, v, c); };
  auto add = [&](int deg, std::string label, SuperDerivation f) {
    h.degree.push_back(deg);
    h.labels.push_back(std::move(label));
    h.fields.push_back(std::move(f));
  };
  add(-1, "∂/∂ξ1", d(S1, one));
  add(-1, "∂/∂ξ2", d(S2, one));
  add(-1, "x∂/∂ξ1", d(S1, x));
  add(-1, "x∂/∂ξ2", d(S2, x));
  add(0, "∂/∂x", d(X, one));
  add(0, "x∂/∂x + ξ1∂/∂ξ1", d(X, x) + d(S1, s1));
  add(0, "x∂/∂x + ξ2∂/∂ξ2", d(X, x) + d(S2, s2));
  add(0, "ξ1∂/∂ξ2", d(S2, s1));
  add(0, "ξ2∂/∂ξ1", d(S1, s2));
  add(0, "xξ1∂/∂ξ1 + xξ2∂/∂ξ2 + x^2∂/∂x", d(S1, x * s1) + d(S2, x * s2) + d(X, x * x));
  add(1, "ξ1∂/∂x", d(X, s1));
  add(1, "ξ2∂/∂x", d(X, s2));
  add(1, "xξ1∂/∂x + ξ1ξ2∂/∂ξ2", d(X, x * s1) + d(S2, s1 * s2));
  add(1, "xξ2∂/∂x - ξ1ξ2∂/∂ξ1", d(X, x * s2) - d(S1, s1 * s2));
  add(2, "θ = ξ1ξ2∂/∂x", d(X, s1 * s2));
  h.z = d(S1, s1) + d(S2, s2);
  return h;
}

std::vector<Rational> FieldCoordinates::coords(const SuperDerivation& v) {
  std::vector<std::pair<std::size_t, Rational>> entries;
  for (std::size_t f = 0; f < v.coeffs().size(); ++f) {
    const auto& c = v.coeff(f);
    if (c.is_zero()) continue;
    auto poly = c.regular_part();
    if (!poly) throw AlgebraError("field coordinates need polynomial coefficients");
    for (const auto& t : poly->terms()) {
      auto [it, inserted] = index_.try_emplace({f, t.mono}, index_.size());
      entries.emplace_back(it->second, t.coeff);
    }
  }
  std::vector<Rational> out(index_.size(), 0);
  for (auto& [i, c] : entries) out[i] = c;
  return out;
}

std::vector<std::vector<Rational>> field_matrix(const std::vector<SuperDerivation>& fields) {
  FieldCoordinates fc;
  std::vector<std::vector<Rational>> rows;
  for (const auto& f : fields) rows.push_back(fc.coords(f));
  for (auto& r : rows) r.resize(fc.size(), 0);
  return rows;
}

}  // namespace superflag

#include "superflag/superpoly.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <sstream>

namespace superflag {

const char* to_string(Parity p) { return p == Parity::Even ? "even" : "odd"; }

// ---------------------------------------------------------------- VarTable

VarTable::VarTable(std::vector<std::string> even_names, std::vector<std::string> odd_names,
                   std::string label)
    : even_(std::move(even_names)), odd_(std::move(odd_names)), label_(std::move(label)) {
  if (even_.size() > kMaxEven) throw AlgebraError("too many even variables");
  if (odd_.size() > kMaxOdd) throw AlgebraError("too many odd variables");
}

std::shared_ptr<const VarTable> VarTable::make(std::vector<std::string> even_names,
                                               std::vector<std::string> odd_names,
                                               std::string label) {
  return std::make_shared<const VarTable>(std::move(even_names), std::move(odd_names),
                                          std::move(label));
}

const std::string& VarTable::name(Variable v) const {
  return v.parity == Parity::Even ? even_.at(v.index) : odd_.at(v.index);
}

std::size_t VarTable::flat(Variable v) const {
  return v.parity == Parity::Even ? v.index : even_.size() + v.index;
}

Variable VarTable::var(std::size_t flat_index) const {
  if (flat_index < even_.size()) return {Parity::Even, static_cast<std::uint32_t>(flat_index)};
  if (flat_index < size())
    return {Parity::Odd, static_cast<std::uint32_t>(flat_index - even_.size())};
  throw AlgebraError("variable index out of range");
}

namespace {
std::string unalias(std::string_view name) {
  std::string s(name);
  if (s.rfind("xi", 0) == 0) return "ξ" + s.substr(2);
  if (s.rfind("eta", 0) == 0) return "η" + s.substr(3);
  return s;
}
}  // namespace

std::optional<Variable> VarTable::find(std::string_view name) const {
  for (int pass = 0; pass < 2; ++pass) {
    std::string key = pass == 0 ? std::string(name) : unalias(name);
    for (std::size_t i = 0; i < even_.size(); ++i)
      if (even_[i] == key) return Variable{Parity::Even, static_cast<std::uint32_t>(i)};
    for (std::size_t i = 0; i < odd_.size(); ++i)
      if (odd_[i] == key) return Variable{Parity::Odd, static_cast<std::uint32_t>(i)};
  }
  return std::nullopt;
}

Variable VarTable::at(std::string_view name) const {
  auto v = find(name);
  if (!v) throw AlgebraError("unknown variable '" + std::string(name) + "'");
  return *v;
}

bool VarTable::same_as(const VarTable& other) const {
  return this == &other ||
         (even_ == other.even_ && odd_ == other.odd_ && label_ == other.label_);
}

// ---------------------------------------------------------------- Monomial

unsigned Monomial::even_degree() const {
  unsigned d = 0;
  for (auto e : exps) d += e;
  return d;
}

unsigned Monomial::odd_degree() const { return static_cast<unsigned>(std::popcount(odd)); }

int compare(const Monomial& a, const Monomial& b) {
  unsigned da = a.even_degree(), db = b.even_degree();
  if (da != db) return da < db ? -1 : 1;
  int c = std::memcmp(a.exps.data(), b.exps.data(), kMaxEven);
  if (c != 0) return c < 0 ? -1 : 1;
  if (a.odd == b.odd) return 0;
  int pa = std::popcount(a.odd), pb = std::popcount(b.odd);
  if (pa != pb) return pa < pb ? -1 : 1;
  std::uint32_t diff = a.odd ^ b.odd;
  std::uint32_t low = diff & (~diff + 1U);
  return (a.odd & low) ? -1 : 1;
}

namespace {
// Sign of xi_S * xi_T brought to increasing order.
int odd_sign(std::uint32_t s, std::uint32_t t) {
  if (s & t) return 0;
  unsigned inv = 0;
  while (t) {
    unsigned i = static_cast<unsigned>(std::countr_zero(t));
    t &= t - 1;
    std::uint32_t above = i >= 31 ? 0U : (s >> (i + 1));
    inv += static_cast<unsigned>(std::popcount(above));
  }
  return (inv & 1U) ? -1 : 1;
}
}  // namespace

std::pair<int, Monomial> multiply(const Monomial& a, const Monomial& b) {
  Monomial r;
  int sign = odd_sign(a.odd, b.odd);
  if (sign == 0) return {0, r};
  for (std::size_t i = 0; i < kMaxEven; ++i) {
    unsigned e = static_cast<unsigned>(a.exps[i]) + b.exps[i];
    if (e > 255) throw AlgebraError("exponent overflow");
    r.exps[i] = static_cast<std::uint8_t>(e);
  }
  r.odd = a.odd | b.odd;
  return {sign, r};
}

// ---------------------------------------------------------------- SuperPolynomial

SuperPolynomial::SuperPolynomial(VarTablePtr table) : table_(std::move(table)) {}

SuperPolynomial::SuperPolynomial(VarTablePtr table, std::vector<Term> terms)
    : table_(std::move(table)), terms_(std::move(terms)) {
  normalize();
}

SuperPolynomial SuperPolynomial::constant(VarTablePtr table, const Rational& c) {
  SuperPolynomial p(std::move(table));
  if (c != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

SuperPolynomial SuperPolynomial::variable(VarTablePtr table, Variable v) {
  Monomial m;
  if (v.parity == Parity::Even) {
    if (v.index >= table->num_even()) throw AlgebraError("even variable out of range");
    m.exps[v.index] = 1;
  } else {
    if (v.index >= table->num_odd()) throw AlgebraError("odd variable out of range");
    m.odd = 1U << v.index;
  }
  return monomial(std::move(table), m, 1);
}

SuperPolynomial SuperPolynomial::variable(VarTablePtr table, std::string_view name) {
  Variable v = table->at(name);
  return variable(std::move(table), v);
}

SuperPolynomial SuperPolynomial::monomial(VarTablePtr table, const Monomial& m,
                                          const Rational& c) {
  SuperPolynomial p(std::move(table));
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

void SuperPolynomial::normalize() {
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return compare(a.mono, b.mono) < 0; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  terms_ = std::move(out);
}

void SuperPolynomial::check_table(const SuperPolynomial& o) const {
  if (!table_ || !o.table_) return;
  if (table_ != o.table_ && !table_->same_as(*o.table_))
    throw AlgebraError("polynomials over different variable tables");
}

bool SuperPolynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rational SuperPolynomial::constant_term() const {
  if (!terms_.empty() && terms_[0].mono.is_one()) return terms_[0].coeff;
  return 0;
}

std::optional<Parity> SuperPolynomial::parity() const {
  if (terms_.empty()) return Parity::Even;
  Parity p = terms_[0].mono.parity();
  for (const auto& t : terms_)
    if (t.mono.parity() != p) return std::nullopt;
  return p;
}

bool SuperPolynomial::is_homogeneous(Parity p) const {
  for (const auto& t : terms_)
    if (t.mono.parity() != p) return false;
  return true;
}

bool SuperPolynomial::is_odd_free() const {
  for (const auto& t : terms_)
    if (t.mono.odd) return false;
  return true;
}

unsigned SuperPolynomial::max_even_degree() const {
  unsigned d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.even_degree());
  return d;
}

SuperPolynomial SuperPolynomial::body() const {
  SuperPolynomial r(table_);
  for (const auto& t : terms_)
    if (!t.mono.odd) r.terms_.push_back(t);
  return r;
}

SuperPolynomial SuperPolynomial::nilpotent_part() const {
  SuperPolynomial r(table_);
  for (const auto& t : terms_)
    if (t.mono.odd) r.terms_.push_back(t);
  return r;
}

const SuperPolynomial::Term& SuperPolynomial::leading_term() const {
  if (terms_.empty()) throw AlgebraError("leading term of zero");
  return terms_.back();
}

Rational SuperPolynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& k) {
    return compare(t.mono, k) < 0;
  });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return 0;
}

std::map<std::uint32_t, SuperPolynomial> SuperPolynomial::odd_components() const {
  std::map<std::uint32_t, SuperPolynomial> out;
  for (const auto& t : terms_) {
    auto [it, inserted] = out.try_emplace(t.mono.odd, table_);
    Monomial m = t.mono;
    m.odd = 0;
    it->second.terms_.push_back({m, t.coeff});
  }
  for (auto& [k, p] : out) p.normalize();
  return out;
}

SuperPolynomial SuperPolynomial::operator-() const {
  SuperPolynomial r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {
template <class Op>
std::vector<SuperPolynomial::Term> merge(const std::vector<SuperPolynomial::Term>& a,
                                         const std::vector<SuperPolynomial::Term>& b, Op op) {
  std::vector<SuperPolynomial::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c = i == a.size() ? 1 : j == b.size() ? -1 : compare(a[i].mono, b[j].mono);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back({b[j].mono, op(Rational(0), b[j].coeff)});
      ++j;
    } else {
      Rational s = op(a[i].coeff, b[j].coeff);
      if (s != 0) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}
}  // namespace

SuperPolynomial& SuperPolynomial::operator+=(const SuperPolynomial& o) {
  check_table(o);
  if (!table_) table_ = o.table_;
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, [](const Rational& x, const Rational& y) { return Rational(x + y); });
  return *this;
}

SuperPolynomial& SuperPolynomial::operator-=(const SuperPolynomial& o) {
  check_table(o);
  if (!table_) table_ = o.table_;
  if (o.terms_.empty()) return *this;
  terms_ = merge(terms_, o.terms_, [](const Rational& x, const Rational& y) { return Rational(x - y); });
  return *this;
}

SuperPolynomial& SuperPolynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b) {
  a.check_table(b);
  SuperPolynomial r(a.table_ ? a.table_ : b.table_);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  r.terms_.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) {
      auto [s, m] = multiply(x.mono, y.mono);
      if (s == 0) continue;
      Rational c = x.coeff * y.coeff;
      if (s < 0) c = -c;
      r.terms_.push_back({m, std::move(c)});
    }
  r.normalize();
  return r;
}

bool operator==(const SuperPolynomial& a, const SuperPolynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

SuperPolynomial SuperPolynomial::pow(unsigned k) const {
  SuperPolynomial result = constant(table_, 1);
  SuperPolynomial base = *this;
  while (k) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k) base = base * base;
  }
  return result;
}

SuperPolynomial SuperPolynomial::partial(Variable v) const {
  SuperPolynomial r(table_);
  for (const auto& t : terms_) {
    Monomial m = t.mono;
    if (v.parity == Parity::Even) {
      if (m.exps[v.index] == 0) continue;
      Rational c = t.coeff * static_cast<unsigned long>(m.exps[v.index]);
      --m.exps[v.index];
      r.terms_.push_back({m, std::move(c)});
    } else {
      std::uint32_t bit = 1U << v.index;
      if (!(m.odd & bit)) continue;
      int before = std::popcount(m.odd & (bit - 1U));
      m.odd &= ~bit;
      r.terms_.push_back({m, (before & 1) ? Rational(-t.coeff) : t.coeff});
    }
  }
  r.normalize();
  return r;
}

namespace {
bool divides(const Monomial& d, const Monomial& m) {
  for (std::size_t i = 0; i < kMaxEven; ++i)
    if (d.exps[i] > m.exps[i]) return false;
  return true;
}
Monomial even_quotient(const Monomial& m, const Monomial& d) {
  Monomial q = m;
  for (std::size_t i = 0; i < kMaxEven; ++i) q.exps[i] = static_cast<std::uint8_t>(m.exps[i] - d.exps[i]);
  return q;
}
}  // namespace

std::pair<SuperPolynomial, SuperPolynomial> SuperPolynomial::divide(
    const SuperPolynomial& divisor) const {
  check_table(divisor);
  if (divisor.is_zero()) throw AlgebraError("division by zero polynomial");
  if (!divisor.is_odd_free()) throw AlgebraError("divisor must be odd-free");
  const Term& lead = divisor.leading_term();
  SuperPolynomial quot(table_), rem(table_);
  if (divisor.terms_.size() == 1) {
    for (const auto& t : terms_) {
      if (divides(lead.mono, t.mono))
        quot.terms_.push_back({even_quotient(t.mono, lead.mono), t.coeff / lead.coeff});
      else
        rem.terms_.push_back(t);
    }
    quot.normalize();
    rem.normalize();
    return {quot, rem};
  }
  std::map<Monomial, Rational, MonomialLess> work;
  for (const auto& t : terms_) work.emplace(t.mono, t.coeff);
  while (!work.empty()) {
    auto it = std::prev(work.end());
    Monomial m = it->first;
    Rational c = std::move(it->second);
    work.erase(it);
    if (!divides(lead.mono, m)) {
      rem.terms_.push_back({m, std::move(c)});
      continue;
    }
    Monomial q = even_quotient(m, lead.mono);
    Rational qc = c / lead.coeff;
    // Every non-leading divisor term lands strictly below m.
    for (std::size_t k = 0; k + 1 < divisor.terms_.size(); ++k) {
      const Term& dt = divisor.terms_[k];
      auto [s, prod] = multiply(q, dt.mono);
      auto [pos, inserted] = work.try_emplace(prod, 0);
      pos->second -= qc * dt.coeff;
      if (pos->second == 0) work.erase(pos);
    }
    quot.terms_.push_back({q, std::move(qc)});
  }
  quot.normalize();
  rem.normalize();
  return {quot, rem};
}

SuperPolynomial SuperPolynomial::remainder(const SuperPolynomial& divisor) const {
  return divide(divisor).second;
}

std::optional<SuperPolynomial> SuperPolynomial::exact_quotient(
    const SuperPolynomial& divisor) const {
  auto [q, r] = divide(divisor);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

RationalSuperFunction SuperPolynomial::substitute(
    std::span<const RationalSuperFunction> images) const {
  if (!table_) return RationalSuperFunction();
  if (images.size() != table_->size()) throw AlgebraError("substitution size mismatch");
  VarTablePtr target = images.empty() ? table_ : images[0].table();
  std::vector<std::vector<RationalSuperFunction>> powers(table_->num_even());
  auto power = [&](std::size_t i, unsigned e) -> const RationalSuperFunction& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(RationalSuperFunction::constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };
  std::vector<RationalSuperFunction> parts;
  parts.reserve(terms_.size());
  for (const auto& t : terms_) {
    RationalSuperFunction f = RationalSuperFunction::constant(target, t.coeff);
    for (std::size_t i = 0; i < table_->num_even(); ++i)
      if (t.mono.exps[i]) f *= power(i, t.mono.exps[i]);
    std::uint32_t odd = t.mono.odd;
    while (odd) {
      unsigned j = static_cast<unsigned>(std::countr_zero(odd));
      odd &= odd - 1;
      f *= images[table_->num_even() + j];
    }
    parts.push_back(std::move(f));
  }
  return sum(parts, target);
}

SuperPolynomial SuperPolynomial::remap(const VarTablePtr& target) const {
  if (!table_) return SuperPolynomial(target);
  std::vector<std::size_t> map(table_->size());
  for (std::size_t i = 0; i < table_->size(); ++i) {
    Variable v = table_->var(i);
    Variable w = target->at(table_->name(v));
    if (w.parity != v.parity) throw AlgebraError("remap changes parity of " + table_->name(v));
    map[i] = target->flat(w);
  }
  return remap(target, map);
}

SuperPolynomial SuperPolynomial::remap(const VarTablePtr& target,
                                       std::span<const std::size_t> flat_map) const {
  SuperPolynomial r(target);
  if (!table_) return r;
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t i = 0; i < table_->num_even(); ++i)
      if (t.mono.exps[i]) {
        Variable w = target->var(flat_map[i]);
        if (w.parity != Parity::Even) throw AlgebraError("remap changes parity");
        m.exps[w.index] = static_cast<std::uint8_t>(m.exps[w.index] + t.mono.exps[i]);
      }
    int sign = 1;
    std::uint32_t odd = t.mono.odd;
    while (odd) {
      unsigned j = static_cast<unsigned>(std::countr_zero(odd));
      odd &= odd - 1;
      Variable w = target->var(flat_map[table_->num_even() + j]);
      if (w.parity != Parity::Odd) throw AlgebraError("remap changes parity");
      int s = odd_sign(m.odd, 1U << w.index);
      sign *= s;
      m.odd |= 1U << w.index;
    }
    if (sign == 0) continue;
    r.terms_.push_back({m, sign < 0 ? Rational(-t.coeff) : t.coeff});
  }
  r.normalize();
  return r;
}

std::string format_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

namespace {
std::string monomial_string(const VarTable& table, const Monomial& m) {
  std::string out;
  auto append = [&](const std::string& s) {
    if (!out.empty()) out += "*";
    out += s;
  };
  for (std::size_t i = 0; i < table.num_even(); ++i) {
    if (!m.exps[i]) continue;
    std::string s = table.even_names()[i];
    if (m.exps[i] > 1) s += "^" + std::to_string(m.exps[i]);
    append(s);
  }
  for (std::size_t j = 0; j < table.num_odd(); ++j)
    if (m.odd & (1U << j)) append(table.odd_names()[j]);
  return out;
}
}  // namespace

std::string SuperPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Rational c = it->coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    std::string mono = table_ ? monomial_string(*table_, it->mono) : std::string();
    if (mono.empty())
      out += format_rational(c);
    else if (c == 1)
      out += mono;
    else
      out += format_rational(c) + "*" + mono;
  }
  return out;
}

std::pair<Rational, SuperPolynomial> make_monic(const SuperPolynomial& p) {
  if (p.is_zero()) throw AlgebraError("make_monic of zero");
  Rational lc = p.leading_term().coeff;
  SuperPolynomial q = p;
  q *= Rational(1 / lc);
  return {lc, q};
}

// ---------------------------------------------------------------- RationalSuperFunction

RationalSuperFunction::RationalSuperFunction(VarTablePtr table) : num_(std::move(table)) {}

RationalSuperFunction::RationalSuperFunction(SuperPolynomial num) : num_(std::move(num)) {}

RationalSuperFunction::RationalSuperFunction(SuperPolynomial num, std::vector<Factor> factors)
    : num_(std::move(num)), factors_(std::move(factors)) {
  std::vector<Factor> clean;
  for (auto& f : factors_) {
    if (f.exp == 0) continue;
    if (f.exp < 0) throw AlgebraError("negative denominator exponent");
    if (!f.poly.is_odd_free()) throw AlgebraError("denominator factor must be odd-free");
    if (f.poly.is_zero()) throw AlgebraError("zero denominator factor");
    auto [lc, monic] = make_monic(f.poly);
    if (lc != 1) {
      Rational scale = 1;
      for (int k = 0; k < f.exp; ++k) scale /= lc;
      num_ *= scale;
    }
    if (monic.is_constant()) continue;
    auto it = std::find_if(clean.begin(), clean.end(),
                           [&](const Factor& g) { return g.poly == monic; });
    if (it != clean.end())
      it->exp += f.exp;
    else
      clean.push_back({monic, f.exp});
  }
  factors_ = std::move(clean);
  if (num_.is_zero()) factors_.clear();
}

RationalSuperFunction RationalSuperFunction::constant(VarTablePtr table, const Rational& c) {
  return RationalSuperFunction(SuperPolynomial::constant(std::move(table), c));
}

RationalSuperFunction RationalSuperFunction::quotient(SuperPolynomial num,
                                                      const SuperPolynomial& den) {
  RationalSuperFunction r(std::move(num), {Factor{den, 1}});
  r.reduce();
  return r;
}

SuperPolynomial RationalSuperFunction::den() const {
  SuperPolynomial d = SuperPolynomial::constant(num_.table(), 1);
  for (const auto& f : factors_) d = d * f.poly.pow(static_cast<unsigned>(f.exp));
  return d;
}

RationalSuperFunction RationalSuperFunction::body() const {
  RationalSuperFunction r(num_.body(), factors_);
  return r;
}

RationalSuperFunction RationalSuperFunction::operator-() const {
  RationalSuperFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

namespace {
using Factor = RationalSuperFunction::Factor;

// Numerator of a over the denominator `common` (a superset of a's factors).
SuperPolynomial lift_numerator(const SuperPolynomial& num, const std::vector<Factor>& own,
                               const std::vector<Factor>& common) {
  SuperPolynomial out = num;
  for (const auto& c : common) {
    int have = 0;
    for (const auto& f : own)
      if (f.poly == c.poly) have = f.exp;
    if (c.exp > have) out = out * c.poly.pow(static_cast<unsigned>(c.exp - have));
  }
  return out;
}

void merge_max(std::vector<Factor>& acc, const std::vector<Factor>& more) {
  for (const auto& f : more) {
    auto it = std::find_if(acc.begin(), acc.end(), [&](const Factor& g) { return g.poly == f.poly; });
    if (it == acc.end())
      acc.push_back(f);
    else
      it->exp = std::max(it->exp, f.exp);
  }
}
}  // namespace

RationalSuperFunction& RationalSuperFunction::operator+=(const RationalSuperFunction& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (factors_.empty() && o.factors_.empty()) {
    num_ += o.num_;
    return *this;
  }
  std::vector<Factor> common = factors_;
  merge_max(common, o.factors_);
  SuperPolynomial n = lift_numerator(num_, factors_, common) +
                      lift_numerator(o.num_, o.factors_, common);
  num_ = std::move(n);
  factors_ = std::move(common);
  if (num_.is_zero()) factors_.clear();
  return reduce();
}

RationalSuperFunction& RationalSuperFunction::operator-=(const RationalSuperFunction& o) {
  return *this += -o;
}

RationalSuperFunction& RationalSuperFunction::operator*=(const RationalSuperFunction& o) {
  num_ = num_ * o.num_;
  if (num_.is_zero()) {
    factors_.clear();
    return *this;
  }
  if (o.factors_.empty()) return *this;
  for (const auto& f : o.factors_) {
    auto it = std::find_if(factors_.begin(), factors_.end(),
                           [&](const Factor& g) { return g.poly == f.poly; });
    if (it == factors_.end())
      factors_.push_back(f);
    else
      it->exp += f.exp;
  }
  return reduce();
}

bool operator==(const RationalSuperFunction& a, const RationalSuperFunction& b) {
  return (a - b).num().is_zero();
}

RationalSuperFunction& RationalSuperFunction::reduce() {
  if (num_.is_zero()) {
    factors_.clear();
    return *this;
  }
  for (auto& f : factors_) {
    while (f.exp > 0) {
      auto q = num_.exact_quotient(f.poly);
      if (!q) break;
      num_ = std::move(*q);
      --f.exp;
    }
  }
  std::erase_if(factors_, [](const Factor& f) { return f.exp == 0; });
  return *this;
}

RationalSuperFunction RationalSuperFunction::inverse(std::span<const Factor> hints) const {
  if (num_.is_zero()) throw AlgebraError("inverse of zero");
  if (num_.parity() != Parity::Even) throw AlgebraError("inverse of a non-even function");
  SuperPolynomial b = num_.body();
  if (b.is_zero()) throw AlgebraError("inverse of a nilpotent function");
  SuperPolynomial n = num_.nilpotent_part();
  auto [lc, monic] = make_monic(b);
  // 1/N = sum_j (-n)^j b^{J-j} / b^{J+1}
  std::vector<SuperPolynomial> npow{SuperPolynomial::constant(num_.table(), 1)};
  SuperPolynomial neg_n = -n;
  while (true) {
    SuperPolynomial next = npow.back() * neg_n;
    if (next.is_zero()) break;
    npow.push_back(std::move(next));
  }
  unsigned J = static_cast<unsigned>(npow.size() - 1);
  SuperPolynomial numer(num_.table());
  for (unsigned j = 0; j <= J; ++j) numer += npow[j] * b.pow(J - j);

  // Split the monic body into known factors and a remainder.
  std::vector<Factor> inv_factors;
  SuperPolynomial rest = monic;
  auto try_factor = [&](const SuperPolynomial& f) {
    if (f.is_constant()) return;
    int k = 0;
    while (!rest.is_constant()) {
      auto q = rest.exact_quotient(f);
      if (!q) break;
      rest = std::move(*q);
      ++k;
    }
    if (k) inv_factors.push_back({f, k});
  };
  for (const auto& h : hints) try_factor(h.poly);
  for (const auto& h : factors_) try_factor(h.poly);
  Rational rest_lc = 1;
  if (!rest.is_constant()) {
    auto [c, m] = make_monic(rest);
    rest_lc = c;
    inv_factors.push_back({m, 1});
  } else {
    rest_lc = rest.constant_term();
  }
  for (auto& f : inv_factors) f.exp *= static_cast<int>(J + 1);
  Rational scale = 1;
  for (unsigned k = 0; k <= J; ++k) scale /= lc * rest_lc;
  // b = lc * monic and monic = rest_lc * prod(factors); numer used b^{J-j}, so
  // the leftover constant is (lc*rest_lc)^{-(J+1)} on the factored form.
  numer *= scale;
  RationalSuperFunction inv(std::move(numer), std::move(inv_factors));
  // Multiply by this function's own denominator.
  if (!factors_.empty()) inv *= RationalSuperFunction(den());
  return inv;
}

RationalSuperFunction RationalSuperFunction::partial(Variable v) const {
  if (v.parity == Parity::Odd || factors_.empty()) {
    RationalSuperFunction r(num_.partial(v), factors_);
    return r.reduce();
  }
  // d(N / prod f_i^e_i) = (N' F - N sum_i e_i f_i' F/f_i) / (prod f_i^e_i * F), F = prod f_i
  SuperPolynomial F = SuperPolynomial::constant(num_.table(), 1);
  for (const auto& f : factors_) F = F * f.poly;
  SuperPolynomial top = num_.partial(v) * F;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    SuperPolynomial df = factors_[i].poly.partial(v);
    if (df.is_zero()) continue;
    SuperPolynomial others = SuperPolynomial::constant(num_.table(), factors_[i].exp);
    for (std::size_t j = 0; j < factors_.size(); ++j)
      if (j != i) others = others * factors_[j].poly;
    top -= num_ * df * others;
  }
  std::vector<Factor> den = factors_;
  for (auto& f : den) ++f.exp;
  RationalSuperFunction r(std::move(top), std::move(den));
  return r.reduce();
}

RationalSuperFunction RationalSuperFunction::substitute(
    std::span<const RationalSuperFunction> images) const {
  RationalSuperFunction out = num_.substitute(images);
  if (factors_.empty()) return out;
  std::vector<Factor> hints;
  for (const auto& img : images) merge_max(hints, img.factors());
  for (const auto& f : factors_) {
    RationalSuperFunction g = f.poly.substitute(images);
    RationalSuperFunction ginv = g.inverse(hints);
    for (int k = 0; k < f.exp; ++k) out *= ginv;
  }
  return out;
}

std::optional<SuperPolynomial> RationalSuperFunction::regular_part() const {
  if (factors_.empty()) return num_;
  return num_.exact_quotient(den());
}

RationalSuperFunction RationalSuperFunction::remap(const VarTablePtr& target) const {
  std::vector<Factor> f;
  for (const auto& g : factors_) f.push_back({g.poly.remap(target), g.exp});
  return RationalSuperFunction(num_.remap(target), std::move(f));
}

RationalSuperFunction RationalSuperFunction::remap(const VarTablePtr& target,
                                                   std::span<const std::size_t> flat_map) const {
  std::vector<Factor> f;
  for (const auto& g : factors_) f.push_back({g.poly.remap(target, flat_map), g.exp});
  return RationalSuperFunction(num_.remap(target, flat_map), std::move(f));
}

std::string RationalSuperFunction::to_string() const {
  if (factors_.empty()) return num_.to_string();
  std::string out = "(" + num_.to_string() + ")/(";
  bool first = true;
  for (const auto& f : factors_) {
    if (!first) out += "*";
    first = false;
    out += "(" + f.poly.to_string() + ")";
    if (f.exp > 1) out += "^" + std::to_string(f.exp);
  }
  return out + ")";
}

RationalSuperFunction sum(std::span<const RationalSuperFunction> parts, const VarTablePtr& table) {
  std::vector<Factor> common;
  bool any = false;
  for (const auto& p : parts)
    if (!p.is_zero()) {
      merge_max(common, p.factors());
      any = true;
    }
  if (!any) return RationalSuperFunction(table);
  SuperPolynomial n(table);
  for (const auto& p : parts)
    if (!p.is_zero()) n += lift_numerator(p.num(), p.factors(), common);
  RationalSuperFunction r(std::move(n), std::move(common));
  return r.reduce();
}

SuperPolynomial sp_add(const SuperPolynomial& a, const SuperPolynomial& b) { return a + b; }
SuperPolynomial sp_mul(const SuperPolynomial& a, const SuperPolynomial& b) { return a * b; }
SuperPolynomial sp_partial(const SuperPolynomial& a, Variable v) { return a.partial(v); }
RationalSuperFunction sp_substitute(const SuperPolynomial& a,
                                    std::span<const RationalSuperFunction> images) {
  return a.substitute(images);
}
RationalSuperFunction sp_invert(const SuperPolynomial& a) {
  return RationalSuperFunction(a).inverse();
}
std::optional<SuperPolynomial> rf_is_regular(const RationalSuperFunction& f) {
  return f.regular_part();
}

}  // namespace superflag

#include "superflag/lie_superalgebra.hpp"

#include <json.hpp>

#include "superflag/linalg.hpp"

namespace superflag {

GlElement::GlElement(std::size_t m, std::size_t n) : m_(m), n_(n), a_((m + n) * (m + n), 0) {}

GlElement GlElement::E(std::size_t m, std::size_t n, std::size_t a, std::size_t b) {
  if (a == 0 || b == 0 || a > m + n || b > m + n) throw AlgebraError("E_ab index out of range");
  GlElement e(m, n);
  e(a - 1, b - 1) = 1;
  return e;
}

GlElement GlElement::identity(std::size_t m, std::size_t n) {
  GlElement e(m, n);
  for (std::size_t i = 0; i < m + n; ++i) e(i, i) = 1;
  return e;
}

std::optional<Parity> GlElement::parity() const {
  bool even = false, odd = false;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if ((*this)(i, j) != 0) (index_parity(i) == index_parity(j) ? even : odd) = true;
  if (even && odd) return std::nullopt;
  return odd ? Parity::Odd : Parity::Even;
}

GlElement GlElement::even_part() const {
  GlElement r = *this;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (index_parity(i) != index_parity(j)) r(i, j) = 0;
  return r;
}

GlElement GlElement::odd_part() const { return *this - even_part(); }

bool GlElement::is_zero() const {
  for (const auto& x : a_)
    if (x != 0) return false;
  return true;
}

GlElement GlElement::transpose() const {
  GlElement r(m_, n_);
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) r(j, i) = (*this)(i, j);
  return r;
}

GlElement& GlElement::operator+=(const GlElement& o) {
  if (o.m_ != m_ || o.n_ != n_) throw AlgebraError("gl size mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

GlElement& GlElement::operator-=(const GlElement& o) {
  if (o.m_ != m_ || o.n_ != n_) throw AlgebraError("gl size mismatch");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

GlElement& GlElement::operator*=(const Rational& c) {
  for (auto& x : a_) x *= c;
  return *this;
}

bool operator==(const GlElement& a, const GlElement& b) {
  return a.m_ == b.m_ && a.n_ == b.n_ && a.a_ == b.a_;
}

std::string GlElement::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j) {
      const Rational& c = (*this)(i, j);
      if (c == 0) continue;
      std::string e = "E" + std::to_string(i + 1) + std::to_string(j + 1);
      if (size() >= 10) e = "E" + std::to_string(i + 1) + "," + std::to_string(j + 1);
      if (!out.empty()) out += c < 0 ? " - " : " + ";
      else if (c < 0) out += "-";
      Rational a = abs(c);
      out += a == 1 ? e : format_rational(a) + "*" + e;
    }
  return out.empty() ? "0" : out;
}

GlElement gl_product(const GlElement& a, const GlElement& b) {
  if (a.m() != b.m() || a.n() != b.n()) throw AlgebraError("gl size mismatch");
  GlElement c(a.m(), a.n());
  std::size_t s = a.size();
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t k = 0; k < s; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < s; ++j)
        if (b(k, j) != 0) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

GlElement gl_bracket(const GlElement& a, const GlElement& b) {
  GlElement out(a.m(), a.n());
  const GlElement parts_a[2] = {a.even_part(), a.odd_part()};
  const GlElement parts_b[2] = {b.even_part(), b.odd_part()};
  for (int pa = 0; pa < 2; ++pa)
    for (int pb = 0; pb < 2; ++pb) {
      if (parts_a[pa].is_zero() || parts_b[pb].is_zero()) continue;
      GlElement xy = gl_product(parts_a[pa], parts_b[pb]);
      GlElement yx = gl_product(parts_b[pb], parts_a[pa]);
      if (pa == 1 && pb == 1)
        out += xy + yx;
      else
        out += xy - yx;
    }
  return out;
}

GlElement pgl_project(const GlElement& a) {
  if (a.size() == 0) return a;
  Rational c = a(0, 0);
  return a - c * GlElement::identity(a.m(), a.n());
}

Rational supertrace(const GlElement& a) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a.index_parity(i) == Parity::Even ? a(i, i) : Rational(-a(i, i));
  return s;
}

long long wn_dimension(int n) {
  if (n < 0) throw AlgebraError("wn_dimension: negative n");
  return static_cast<long long>(n) * (1LL << n);
}

// ---------------------------------------------------------------- AbstractSuperAlgebra

namespace {
using Vec = AbstractSuperAlgebra::Vec;
bool is_zero_vec(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}
}  // namespace

AbstractSuperAlgebra::AbstractSuperAlgebra(std::string name, std::vector<std::string> labels,
                                           std::vector<Parity> parity,
                                           std::vector<std::vector<Vec>> brackets)
    : name_(std::move(name)), labels_(std::move(labels)), parity_(std::move(parity)),
      brackets_(std::move(brackets)) {
  std::size_t d = labels_.size();
  if (parity_.size() != d || brackets_.size() != d) throw AlgebraError("structure table size mismatch");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (brackets_[i][j].size() != d) throw AlgebraError("structure vector size mismatch");
      Vec sum = brackets_[i][j];
      int s = sign_of(parity_[i], parity_[j]);
      for (std::size_t k = 0; k < d; ++k) sum[k] += s * brackets_[j][i][k];
      if (!is_zero_vec(sum))
        throw AlgebraError(name_ + ": super-antisymmetry fails for " + labels_[i] + ", " + labels_[j]);
    }
  // Sparse copy for the Jacobi sweep.
  std::vector<std::vector<std::vector<std::pair<std::size_t, Rational>>>> sp(
      d, std::vector<std::vector<std::pair<std::size_t, Rational>>>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (brackets_[i][j][k] != 0) sp[i][j].emplace_back(k, brackets_[i][j][k]);
  auto nested = [&](std::size_t a, std::size_t b, std::size_t c, int sign, Vec& acc) {
    for (const auto& [l, v] : sp[b][c])
      for (const auto& [k, w] : sp[a][l]) acc[k] += sign * v * w;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        Vec acc(d, 0);
        nested(i, j, k, sign_of(parity_[i], parity_[k]), acc);
        nested(j, k, i, sign_of(parity_[j], parity_[i]), acc);
        nested(k, i, j, sign_of(parity_[k], parity_[j]), acc);
        ++jacobi_checks_;
        if (!is_zero_vec(acc))
          throw AlgebraError(name_ + ": super-Jacobi fails for " + labels_[i] + ", " + labels_[j] +
                             ", " + labels_[k]);
      }
}

Vec AbstractSuperAlgebra::bracket(const Vec& a, const Vec& b) const {
  std::size_t d = dim();
  Vec out(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (b[j] == 0) continue;
      Rational c = a[i] * b[j];
      for (std::size_t k = 0; k < d; ++k)
        if (brackets_[i][j][k] != 0) out[k] += c * brackets_[i][j][k];
    }
  }
  return out;
}

std::string AbstractSuperAlgebra::to_json() const {
  nlohmann::json j;
  j["name"] = name_;
  j["basis"] = labels_;
  std::vector<std::string> par;
  for (auto p : parity_) par.emplace_back(superflag::to_string(p));
  j["parity"] = par;
  nlohmann::json consts = nlohmann::json::array();
  for (std::size_t a = 0; a < dim(); ++a)
    for (std::size_t b = 0; b < dim(); ++b)
      for (std::size_t k = 0; k < dim(); ++k)
        if (brackets_[a][b][k] != 0)
          consts.push_back({labels_[a], labels_[b], labels_[k], format_rational(brackets_[a][b][k])});
  j["structure_constants"] = consts;
  return j.dump(2);
}

namespace {
std::string e_label(std::size_t a, std::size_t b, std::size_t size) {
  if (size >= 10) return "E" + std::to_string(a) + "," + std::to_string(b);
  return "E" + std::to_string(a) + std::to_string(b);
}

// Structure constants of span(basis) with bracket followed by `project`,
// coordinates obtained by exact solving.
AbstractSuperAlgebra from_matrices(std::string name, std::vector<std::string> labels,
                                   const std::vector<GlElement>& basis,
                                   GlElement (*project)(const GlElement&)) {
  std::vector<std::vector<Rational>> rows;
  std::vector<Parity> par;
  for (const auto& e : basis) {
    rows.push_back(project(e).coords());
    auto p = e.parity();
    if (!p) throw AlgebraError("inhomogeneous basis element");
    par.push_back(*p);
  }
  std::size_t d = basis.size();
  std::vector<std::vector<Vec>> br(d, std::vector<Vec>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      GlElement c = project(gl_bracket(basis[i], basis[j]));
      auto coords = express_in(rows, c.coords());
      if (!coords) throw AlgebraError(name + ": bracket leaves the span");
      br[i][j] = std::move(*coords);
    }
  return AbstractSuperAlgebra(std::move(name), std::move(labels), std::move(par), std::move(br));
}

GlElement no_projection(const GlElement& a) { return a; }
}  // namespace

AbstractSuperAlgebra make_gl(std::size_t m, std::size_t n) {
  std::vector<GlElement> basis;
  std::vector<std::string> labels;
  std::size_t s = m + n;
  for (std::size_t a = 1; a <= s; ++a)
    for (std::size_t b = 1; b <= s; ++b) {
      basis.push_back(GlElement::E(m, n, a, b));
      labels.push_back(e_label(a, b, s));
    }
  return from_matrices("gl(" + std::to_string(m) + "|" + std::to_string(n) + ")", std::move(labels),
                       basis, no_projection);
}

AbstractSuperAlgebra make_pgl(std::size_t m, std::size_t n) {
  std::vector<GlElement> basis;
  std::vector<std::string> labels;
  std::size_t s = m + n;
  for (std::size_t a = 1; a <= s; ++a)
    for (std::size_t b = 1; b <= s; ++b) {
      if (a == 1 && b == 1) continue;
      basis.push_back(GlElement::E(m, n, a, b));
      labels.push_back(e_label(a, b, s));
    }
  return from_matrices("pgl(" + std::to_string(m) + "|" + std::to_string(n) + ")", std::move(labels),
                       basis, pgl_project);
}

AbstractSuperAlgebra make_sl(std::size_t m, std::size_t n) {
  std::vector<GlElement> basis;
  std::vector<std::string> labels;
  std::size_t s = m + n;
  for (std::size_t a = 1; a <= s; ++a)
    for (std::size_t b = 1; b <= s; ++b)
      if (a != b) {
        basis.push_back(GlElement::E(m, n, a, b));
        labels.push_back(e_label(a, b, s));
      }
  for (std::size_t a = 1; a < s; ++a) {
    GlElement h = GlElement::E(m, n, a, a);
    // E_aa - E_{a+1,a+1} inside a block, E_mm + E_{m+1,m+1} across the boundary.
    if (a == m)
      h += GlElement::E(m, n, a + 1, a + 1);
    else
      h -= GlElement::E(m, n, a + 1, a + 1);
    basis.push_back(h);
    labels.push_back("H" + std::to_string(a));
  }
  return from_matrices("sl(" + std::to_string(m) + "|" + std::to_string(n) + ")", std::move(labels),
                       basis, no_projection);
}

AbstractSuperAlgebra make_wn(std::size_t n) {
  std::vector<std::string> odd;
  for (std::size_t i = 1; i <= n; ++i) odd.push_back("ζ" + std::to_string(i));
  auto table = VarTable::make({}, odd, "W");
  // basis: (S, i) meaning zeta_S d/dzeta_i
  std::vector<std::pair<std::uint32_t, std::size_t>> basis;
  std::vector<std::string> labels;
  std::vector<Parity> par;
  for (std::uint32_t S = 0; S < (1U << n); ++S)
    for (std::size_t i = 0; i < n; ++i) {
      basis.emplace_back(S, i);
      Monomial m;
      m.odd = S;
      std::string f = SuperPolynomial::monomial(table, m).to_string();
      labels.push_back((f == "1" ? std::string() : f) + "∂" + odd[i]);
      par.push_back(static_cast<Parity>((std::popcount(S) + 1) & 1));
    }
  std::size_t d = basis.size();
  auto coeff = [&](std::size_t b) {
    Monomial m;
    m.odd = basis[b].first;
    return SuperPolynomial::monomial(table, m);
  };
  std::vector<std::vector<Vec>> br(d, std::vector<Vec>(d, Vec(d, 0)));
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      // [f d_i, g d_j] = f d_i(g) d_j - (-1)^{p p'} g d_j(f) d_i
      SuperPolynomial f = coeff(a), g = coeff(b);
      Variable vi{Parity::Odd, static_cast<std::uint32_t>(basis[a].second)};
      Variable vj{Parity::Odd, static_cast<std::uint32_t>(basis[b].second)};
      SuperPolynomial cj = f * g.partial(vi);
      SuperPolynomial ci = g * f.partial(vj);
      int s = sign_of(par[a], par[b]);
      auto add = [&](const SuperPolynomial& c, std::size_t idx, const Rational& scale) {
        for (const auto& t : c.terms()) {
          std::size_t k = static_cast<std::size_t>(t.mono.odd) * n + idx;
          br[a][b][k] += scale * t.coeff;
        }
      };
      add(cj, basis[b].second, 1);
      add(ci, basis[a].second, -s);
    }
  return AbstractSuperAlgebra("W(" + std::to_string(n) + ")", std::move(labels), std::move(par),
                              std::move(br));
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(std::size_t ambient, const std::vector<std::vector<Rational>>& vectors)
    : ambient_(ambient) {
  for (const auto& v : vectors) add(v);
}

bool Subspace::add(const std::vector<Rational>& v) {
  if (v.size() != ambient_) throw AlgebraError("subspace: dimension mismatch");
  if (contains(v)) return false;
  basis_.push_back(v);
  return true;
}

bool Subspace::contains(const std::vector<Rational>& v) const {
  if (basis_.empty()) {
    for (const auto& x : v)
      if (x != 0) return false;
    return true;
  }
  return express_in(basis_, v).has_value();
}

bool is_ideal(const AbstractSuperAlgebra& g, const std::vector<std::vector<Rational>>& vectors) {
  Subspace s(g.dim(), vectors);
  for (std::size_t i = 0; i < g.dim(); ++i) {
    Vec e(g.dim(), 0);
    e[i] = 1;
    for (const auto& v : s.basis())
      if (!s.contains(g.bracket(e, v))) return false;
  }
  return true;
}

std::vector<std::vector<Rational>> psl_in_pgl(std::size_t m, std::size_t n) {
  // psl = sl / <E>; inside pgl it is the image of sl, spanned by the projected
  // sl basis.
  std::size_t s = m + n;
  std::vector<std::vector<Rational>> out;
  auto to_pgl = [&](const GlElement& x) {
    GlElement p = pgl_project(x);
    std::vector<Rational> c;
    for (std::size_t a = 0; a < s; ++a)
      for (std::size_t b = 0; b < s; ++b)
        if (a != 0 || b != 0) c.push_back(p(a, b));
    return c;
  };
  for (std::size_t a = 1; a <= s; ++a)
    for (std::size_t b = 1; b <= s; ++b)
      if (a != b) out.push_back(to_pgl(GlElement::E(m, n, a, b)));
  for (std::size_t a = 1; a < s; ++a) {
    GlElement h = GlElement::E(m, n, a, a);
    if (a == m)
      h += GlElement::E(m, n, a + 1, a + 1);
    else
      h -= GlElement::E(m, n, a + 1, a + 1);
    out.push_back(to_pgl(h));
  }
  Subspace sp(s * s - 1, out);
  return sp.basis();
}

}  // namespace superflag

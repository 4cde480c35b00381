#include "superflag/weights.hpp"

#include <algorithm>

namespace superflag {

Weight Weight::zero(std::size_t m, std::size_t n) { return {std::vector<long>(m, 0), std::vector<long>(n, 0)}; }

Weight Weight::mu_unit(std::size_t m, std::size_t n, std::size_t i) {
  Weight w = zero(m, n);
  w.mu.at(i - 1) = 1;
  return w;
}

Weight Weight::lambda_unit(std::size_t m, std::size_t n, std::size_t j) {
  Weight w = zero(m, n);
  w.lambda.at(j - 1) = 1;
  return w;
}

bool Weight::is_zero() const {
  return std::all_of(mu.begin(), mu.end(), [](long a) { return a == 0; }) &&
         std::all_of(lambda.begin(), lambda.end(), [](long a) { return a == 0; });
}

Weight Weight::operator+(const Weight& o) const {
  if (mu.size() != o.mu.size() || lambda.size() != o.lambda.size()) throw AlgebraError("weight size mismatch");
  Weight r = *this;
  for (std::size_t i = 0; i < mu.size(); ++i) r.mu[i] += o.mu[i];
  for (std::size_t j = 0; j < lambda.size(); ++j) r.lambda[j] += o.lambda[j];
  return r;
}

Weight Weight::operator-() const {
  Weight r = *this;
  for (auto& a : r.mu) a = -a;
  for (auto& a : r.lambda) a = -a;
  return r;
}

Weight Weight::operator-(const Weight& o) const { return *this + (-o); }

std::string Weight::to_string() const {
  std::string out;
  auto emit = [&](long c, const std::string& name) {
    if (c == 0) return;
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    long a = c < 0 ? -c : c;
    if (a != 1) out += std::to_string(a);
    out += name;
  };
  for (std::size_t i = 0; i < mu.size(); ++i) emit(mu[i], "μ" + std::to_string(i + 1));
  for (std::size_t j = 0; j < lambda.size(); ++j) emit(lambda[j], "λ" + std::to_string(j + 1));
  return out.empty() ? "0" : out;
}

std::optional<Weight> weight_of(const SuperDerivation& v, const FlagType& t, const Chart& chart) {
  if (v.is_zero()) return std::nullopt;
  auto m = static_cast<std::size_t>(t.m), n = static_cast<std::size_t>(t.n);
  // A reference coefficient to read eigenvalues from.
  std::size_t u = 0;
  while (v.coeff(u).is_zero()) ++u;
  auto vu = v.coeff(u).regular_part();
  if (!vu) return std::nullopt;
  const Monomial& ref = vu->terms().front().mono;
  Weight w = Weight::zero(m, n);
  for (std::size_t i = 1; i <= m + n; ++i) {
    auto br = field_bracket(fundamental_field(GlElement::E(m, n, i, i), chart), v);
    auto bu = br.coeff(u).regular_part();
    if (!bu) return std::nullopt;
    Rational c = bu->coefficient(ref) / vu->terms().front().coeff;
    if (!(br == c * v)) return std::nullopt;
    if (c.get_den() != 1) return std::nullopt;
    long val = c.get_num().get_si();
    if (i <= m)
      w.mu[i - 1] = val;
    else
      w.lambda[i - m - 1] = val;
  }
  return w;
}

bool is_dominant(const Weight& w) {
  return std::is_sorted(w.mu.rbegin(), w.mu.rend()) && std::is_sorted(w.lambda.rbegin(), w.lambda.rend());
}

namespace {
// prod_{i<j} (a_i - a_j + j - i) / (j - i)
Integer gl_dim(const std::vector<long>& a) {
  Rational d = 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      d *= Rational(a[i] - a[j] + static_cast<long>(j - i), static_cast<long>(j - i));
  d.canonicalize();
  return d.get_num();
}

std::vector<long> tail(const std::vector<long>& a, std::size_t k) {
  return {a.end() - static_cast<std::ptrdiff_t>(k), a.end()};
}
}  // namespace

Integer weyl_dim(const Weight& w) {
  if (!is_dominant(w)) throw AlgebraError("weyl_dim needs a dominant weight, got " + w.to_string());
  return gl_dim(w.mu) * gl_dim(w.lambda);
}

const char* to_string(PsiCase c) {
  switch (c) {
    case PsiCase::Generic: return "generic";
    case PsiCase::ExceptionalA: return "a";
    case PsiCase::ExceptionalB1: return "b1";
    case PsiCase::ExceptionalB2: return "b2";
  }
  return "?";
}

std::optional<PsiCase> parse_psi_case(std::string_view s) {
  for (PsiCase c : {PsiCase::Generic, PsiCase::ExceptionalA, PsiCase::ExceptionalB1, PsiCase::ExceptionalB2})
    if (s == to_string(c)) return c;
  return std::nullopt;
}

PsiRepresentation psi_weights(std::size_t m, std::size_t n, std::size_t k1, std::size_t l1, PsiCase kind) {
  if (k1 > m || l1 > n) throw AlgebraError("psi_weights: need k1 <= m and l1 <= n");
  PsiRepresentation rep{m, n, k1, l1, kind, {}};
  auto M = [&](std::size_t i) { return Weight::mu_unit(m, n, i); };
  auto L = [&](std::size_t j) { return Weight::lambda_unit(m, n, j); };
  auto add = [&](Weight w) { rep.weights.emplace_back(std::move(w), 1); };
  if (kind == PsiCase::Generic) {
    if (k1 > 1 && l1 > 1) {
      add(M(m - k1 + 1) - M(m));
      add(M(m - k1 + 1) - L(n));
      add(L(n - l1 + 1) - M(m));
      add(L(n - l1 + 1) - L(n));
      add(Weight::zero(m, n));
    } else if (k1 == 1 && l1 > 1) {
      add(M(m) - L(n));
      add(L(n - l1 + 1) - M(m));
      add(L(n - l1 + 1) - L(n));
      add(Weight::zero(m, n));
    } else if (k1 > 1 && l1 == 1) {
      add(M(m - k1 + 1) - M(m));
      add(M(m - k1 + 1) - L(n));
      add(L(n) - M(m));
      add(Weight::zero(m, n));
    } else if (k1 == 1 && l1 == 1) {
      add(M(m) - L(n));
      add(L(n) - M(m));
      add(Weight::zero(m, n));
    } else if (k1 > 1 && l1 == 0) {
      add(M(m - k1 + 1) - M(m));
    } else if (k1 == 0 && l1 > 1) {
      add(L(n - l1 + 1) - L(n));
    }
    return rep;
  }
  if (m < 2 || n < 2) throw AlgebraError("exceptional fibers need m, n >= 2");
  add(M(m - 1) - M(m));
  add(L(n - 1) - L(n));
  add(M(m - 1) - L(n));
  add(L(n - 1) - M(m));
  add(Weight::zero(m, n));
  Weight extra = M(m - 1) + M(m) - L(n - 1) - L(n);
  if (kind == PsiCase::ExceptionalA || kind == PsiCase::ExceptionalB1) add(extra);
  if (kind == PsiCase::ExceptionalA || kind == PsiCase::ExceptionalB2) add(-extra);
  return rep;
}

Integer fiber_dim(const PsiRepresentation& rep) {
  std::size_t k = rep.kind == PsiCase::Generic ? rep.k1 : 2;
  std::size_t l = rep.kind == PsiCase::Generic ? rep.l1 : 2;
  Integer total = 0;
  for (const auto& [w, mult] : rep.weights) {
    Weight r{tail(w.mu, k), tail(w.lambda, l)};
    if (!is_dominant(r)) throw AlgebraError("restricted weight not dominant: " + w.to_string());
    total += weyl_dim(r) * mult;
  }
  return total;
}

BwbResult bwb_sections(const PsiRepresentation& rep) {
  BwbResult r;
  r.dimension = 0;
  for (const auto& [w, mult] : rep.weights)
    if (is_dominant(w)) {
      r.survivors.push_back(w);
      r.dimension += weyl_dim(w) * mult;
    }
  std::sort(r.survivors.begin(), r.survivors.end());
  return r;
}

Weight r_weight(std::size_t m, std::size_t n, int which) {
  auto M = [&](std::size_t i) { return Weight::mu_unit(m, n, i); };
  auto L = [&](std::size_t j) { return Weight::lambda_unit(m, n, j); };
  switch (which) {
    case 1: return M(1) - M(m);
    case 2: return M(1) - L(n);
    case 3: return L(1) - M(m);
    case 4: return L(1) - L(n);
    default: throw AlgebraError("r_weight: index 1..4");
  }
}

bool SectionRow::agrees() const {
  if (cases.empty() || conflict) return false;
  return predicted == computed.survivors && predicted_dim && *predicted_dim == computed.dimension;
}

std::optional<SectionRow> section_row(std::size_t m, std::size_t n, std::size_t k1, std::size_t l1) {
  if (k1 > m || l1 > n) return std::nullopt;
  SectionRow row{m, n, k1, l1, {}, {}, false, std::nullopt, {}};
  Weight zero = Weight::zero(m, n);
  auto r = [&](int i) { return r_weight(m, n, i); };
  // The printed cases, in order; case 6 is the union of its four conditions.
  std::vector<std::pair<bool, std::vector<Weight>>> table = {
      {0 < k1 && k1 < m && 0 < l1 && l1 < n, {zero}},
      {1 < k1 && k1 == m && 0 < l1 && l1 < n, {r(1), r(2), zero}},
      {0 < k1 && k1 < m && 1 < l1 && l1 == n, {r(3), r(4), zero}},
      {1 == k1 && k1 == m && 0 < l1 && l1 < n, {r(2), zero}},
      {0 < k1 && k1 < m && 1 == l1 && l1 == n, {r(3), zero}},
      {(0 < k1 && k1 < m && 0 == l1 && l1 <= n) || (0 == k1 && k1 <= m && 0 < l1 && l1 < n) ||
           (0 == k1 && k1 < m && 1 == l1 && l1 <= n) || (1 == k1 && k1 <= m && 0 == l1 && l1 < n),
       {}},
      {1 < k1 && k1 == m && 0 == l1 && l1 < n, {r(1)}},
      {0 == k1 && k1 < m && 1 < l1 && l1 == n, {r(4)}},
  };
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (!table[i].first) continue;
    auto mods = table[i].second;
    std::sort(mods.begin(), mods.end());
    if (row.cases.empty())
      row.predicted = mods;
    else if (mods != row.predicted)
      row.conflict = true;
    row.cases.push_back(static_cast<int>(i + 1));
  }
  row.computed = bwb_sections(psi_weights(m, n, k1, l1));
  if (!row.cases.empty()) {
    Integer d = 0;
    for (const auto& w : row.predicted) d += weyl_dim(w);
    row.predicted_dim = d;
  }
  return row;
}

std::vector<SectionRow> section_table(std::size_t max_m, std::size_t max_n) {
  std::vector<SectionRow> out;
  for (std::size_t m = 1; m <= max_m; ++m)
    for (std::size_t n = 1; n <= max_n; ++n)
      for (std::size_t k1 = 0; k1 <= m; ++k1)
        for (std::size_t l1 = 0; l1 <= n; ++l1)
          if (auto r = section_row(m, n, k1, l1); r && !r->cases.empty()) out.push_back(std::move(*r));
  return out;
}

}  // namespace superflag

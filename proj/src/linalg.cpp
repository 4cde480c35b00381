#include "superflag/linalg.hpp"

#include <algorithm>

namespace superflag {

namespace {
void make_primitive(SparseRow& r) {
  if (r.entries.empty()) return;
  Integer g = 0;
  for (const auto& [c, v] : r.entries) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (r.entries.front().second < 0) g = -g;
  if (g != 1)
    for (auto& [c, v] : r.entries) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// a*r - b*p
SparseRow combine(const Integer& a, const SparseRow& r, const Integer& b, const SparseRow& p) {
  SparseRow out;
  out.entries.reserve(r.entries.size() + p.entries.size());
  std::size_t i = 0, j = 0;
  while (i < r.entries.size() || j < p.entries.size()) {
    if (j == p.entries.size() || (i < r.entries.size() && r.entries[i].first < p.entries[j].first)) {
      out.entries.emplace_back(r.entries[i].first, a * r.entries[i].second);
      ++i;
    } else if (i == r.entries.size() || p.entries[j].first < r.entries[i].first) {
      out.entries.emplace_back(p.entries[j].first, -b * p.entries[j].second);
      ++j;
    } else {
      Integer v = a * r.entries[i].second - b * p.entries[j].second;
      if (v != 0) out.entries.emplace_back(r.entries[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

// Eliminates column `col` of r using p (whose lead is col).
SparseRow eliminate(const SparseRow& r, const SparseRow& p, std::uint32_t col) {
  auto it = std::lower_bound(r.entries.begin(), r.entries.end(), col,
                             [](const SparseEntry& e, std::uint32_t c) { return e.first < c; });
  if (it == r.entries.end() || it->first != col) return r;
  Integer pv = p.entries.front().second, rv = it->second;
  Integer g;
  mpz_gcd(g.get_mpz_t(), pv.get_mpz_t(), rv.get_mpz_t());
  Integer a = pv / g, b = rv / g;
  SparseRow out = combine(a, r, b, p);
  make_primitive(out);
  return out;
}
}  // namespace

SparseRow make_row(std::vector<std::pair<std::uint32_t, Rational>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  Integer l = 1;
  for (const auto& [c, v] : entries)
    if (v != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  SparseRow r;
  for (auto& [c, v] : entries) {
    if (v == 0) continue;
    Rational s = v * l;
    Integer n(s.get_num());
    if (!r.entries.empty() && r.entries.back().first == c) {
      r.entries.back().second += n;
      if (r.entries.back().second == 0) r.entries.pop_back();
    } else {
      r.entries.emplace_back(c, std::move(n));
    }
  }
  make_primitive(r);
  return r;
}

SparseRow Echelon::reduce(SparseRow row) const {
  std::size_t pos = 0;
  while (pos < row.entries.size()) {
    std::uint32_t c = row.entries[pos].first;
    if (c < pivot_row_.size() && pivot_row_[c] >= 0) {
      row = eliminate(row, rows_[static_cast<std::size_t>(pivot_row_[c])], c);
      // entries before pos are unchanged pivots-free columns; restart at same column
      pos = static_cast<std::size_t>(
          std::lower_bound(row.entries.begin(), row.entries.end(), c,
                           [](const SparseEntry& e, std::uint32_t k) { return e.first < k; }) -
          row.entries.begin());
    } else {
      ++pos;
    }
  }
  return row;
}

bool Echelon::add(SparseRow row) {
  // Only the leading column must be new; full reduction is deferred.
  while (!row.empty()) {
    std::uint32_t c = row.lead();
    if (c < pivot_row_.size() && pivot_row_[c] >= 0)
      row = eliminate(row, rows_[static_cast<std::size_t>(pivot_row_[c])], c);
    else
      break;
  }
  if (row.empty()) return false;
  std::uint32_t c = row.lead();
  if (pivot_row_.size() <= c) pivot_row_.resize(std::max<std::size_t>(c + 1, columns_ + 1), -1);
  pivot_row_[c] = static_cast<std::int64_t>(rows_.size());
  rows_.push_back(std::move(row));
  return true;
}

void Echelon::make_reduced() {
  std::vector<std::size_t> order(rows_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return rows_[a].lead() < rows_[b].lead(); });
  std::vector<SparseRow> sorted;
  sorted.reserve(rows_.size());
  for (auto i : order) sorted.push_back(std::move(rows_[i]));
  rows_ = std::move(sorted);
  std::fill(pivot_row_.begin(), pivot_row_.end(), -1);
  for (std::size_t i = 0; i < rows_.size(); ++i) pivot_row_[rows_[i].lead()] = static_cast<std::int64_t>(i);
  // Back substitution from the last pivot upward.
  for (std::size_t k = rows_.size(); k-- > 0;) {
    std::uint32_t c = rows_[k].lead();
    for (std::size_t i = 0; i < k; ++i) rows_[i] = eliminate(rows_[i], rows_[k], c);
  }
}

std::vector<std::vector<Rational>> Echelon::nullspace() const {
  Echelon red = *this;
  red.make_reduced();
  std::vector<bool> is_pivot(columns_, false);
  for (const auto& r : red.rows_)
    if (r.lead() < columns_) is_pivot[r.lead()] = true;
  std::vector<std::vector<Rational>> basis;
  for (std::uint32_t f = 0; f < columns_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(columns_, 0);
    v[f] = 1;
    for (const auto& r : red.rows_) {
      if (r.lead() >= columns_) continue;
      auto it = std::lower_bound(r.entries.begin(), r.entries.end(), f,
                                 [](const SparseEntry& e, std::uint32_t k) { return e.first < k; });
      if (it != r.entries.end() && it->first == f)
        v[r.lead()] = -Rational(it->second) / Rational(r.entries.front().second);
    }
    for (auto& x : v) x.canonicalize();
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {
SparseRow dense_row(const std::vector<Rational>& v) {
  std::vector<std::pair<std::uint32_t, Rational>> e;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) e.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  return make_row(std::move(e));
}
}  // namespace

std::size_t rank_of(const std::vector<std::vector<Rational>>& rows) {
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  Echelon e(static_cast<std::uint32_t>(cols));
  for (const auto& r : rows) e.add(dense_row(r));
  return e.rank();
}

std::vector<std::vector<Rational>> nullspace_of(const std::vector<std::vector<Rational>>& rows,
                                                std::size_t columns) {
  Echelon e(static_cast<std::uint32_t>(columns));
  for (const auto& r : rows) e.add(dense_row(r));
  return e.nullspace();
}

std::optional<std::vector<Rational>> express_in(const std::vector<std::vector<Rational>>& rows,
                                                const std::vector<Rational>& target) {
  // Unknowns c_i; equations per coordinate j: sum_i c_i rows[i][j] = target[j].
  std::size_t k = rows.size(), n = target.size();
  Echelon e(static_cast<std::uint32_t>(k));
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::pair<std::uint32_t, Rational>> eq;
    for (std::size_t i = 0; i < k; ++i)
      if (rows[i][j] != 0) eq.emplace_back(static_cast<std::uint32_t>(i), rows[i][j]);
    if (target[j] != 0) eq.emplace_back(static_cast<std::uint32_t>(k), -target[j]);
    e.add(make_row(std::move(eq)));
  }
  e.make_reduced();
  std::vector<Rational> c(k, 0);
  for (const auto& r : e.rows()) {
    if (r.lead() == k) return std::nullopt;
    // Free columns are set to zero; the constant column supplies the value.
    const auto& last = r.entries.back();
    if (last.first == k) c[r.lead()] = -Rational(last.second) / Rational(r.entries.front().second);
  }
  for (auto& x : c) x.canonicalize();
  return c;
}

}  // namespace superflag

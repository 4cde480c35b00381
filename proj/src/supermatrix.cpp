#include "superflag/supermatrix.hpp"

#include <sstream>

namespace superflag {

SuperMatrix::SuperMatrix(VarTablePtr table, Split rows, Split cols)
    : table_(std::move(table)), rows_(rows), cols_(cols) {
  entries_.assign(this->rows() * this->cols(), RationalSuperFunction(table_));
}

SuperMatrix SuperMatrix::identity(VarTablePtr table, Split split) {
  SuperMatrix m(table, split, split);
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) = RationalSuperFunction::constant(table, 1);
  return m;
}

bool SuperMatrix::is_even() const {
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) {
      const auto& e = (*this)(i, j);
      if (e.is_zero()) continue;
      Parity want = row_parity(i) + col_parity(j);
      if (!e.num().is_homogeneous(want)) return false;
    }
  return true;
}

bool SuperMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) {
      const auto& e = (*this)(i, j);
      if (i == j) {
        if (e.has_denominator() || !e.num().is_constant() || e.num().constant_term() != 1)
          return false;
      } else if (!e.is_zero()) {
        return false;
      }
    }
  return true;
}

SuperMatrix SuperMatrix::map(
    const std::function<RationalSuperFunction(const RationalSuperFunction&)>& f,
    VarTablePtr target) const {
  SuperMatrix out(std::move(target), rows_, cols_);
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = f(entries_[k]);
  return out;
}

std::string SuperMatrix::to_string() const {
  std::vector<std::vector<std::string>> cells(rows(), std::vector<std::string>(cols()));
  std::vector<std::size_t> width(cols(), 1);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) {
      cells[i][j] = (*this)(i, j).to_string();
      width[j] = std::max(width[j], cells[i][j].size());
    }
  std::ostringstream os;
  for (std::size_t i = 0; i < rows(); ++i) {
    if (i == rows_.first && i > 0 && rows_.second > 0) {
      std::size_t total = 0;
      for (auto w : width) total += w + 2;
      os << std::string(total + 2, '-') << "\n";
    }
    os << "(";
    for (std::size_t j = 0; j < cols(); ++j) {
      if (j == cols_.first && j > 0) os << " |";
      os << " " << cells[i][j] << std::string(width[j] - cells[i][j].size(), ' ');
    }
    os << " )\n";
  }
  return os.str();
}

bool operator==(const SuperMatrix& a, const SuperMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
  for (std::size_t k = 0; k < a.entries_.size(); ++k)
    if (!(a.entries_[k] == b.entries_[k])) return false;
  return true;
}

SuperMatrix mat_mul(const SuperMatrix& a, const SuperMatrix& b) {
  if (a.col_split() != b.row_split()) throw AlgebraError("mat_mul: shape mismatch");
  SuperMatrix c(a.table(), a.row_split(), b.col_split());
  std::vector<RationalSuperFunction> parts;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      parts.clear();
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a(i, k).is_zero() || b(k, j).is_zero()) continue;
        parts.push_back(a(i, k) * b(k, j));
      }
      c(i, j) = sum(parts, a.table());
    }
  return c;
}

SuperMatrix mat_rows(const SuperMatrix& a, const std::vector<std::size_t>& even_rows,
                     const std::vector<std::size_t>& odd_rows) {
  auto [p, q] = a.row_split();
  SuperMatrix out(a.table(), {even_rows.size(), odd_rows.size()}, a.col_split());
  std::size_t r = 0;
  for (auto i : even_rows) {
    if (i >= p) throw AlgebraError("mat_rows: even row out of range");
    for (std::size_t j = 0; j < a.cols(); ++j) out(r, j) = a(i, j);
    ++r;
  }
  for (auto i : odd_rows) {
    if (i >= q) throw AlgebraError("mat_rows: odd row out of range");
    for (std::size_t j = 0; j < a.cols(); ++j) out(r, j) = a(p + i, j);
    ++r;
  }
  return out;
}

SuperPolynomial body_determinant(const std::vector<std::vector<SuperPolynomial>>& m,
                                 const VarTablePtr& table) {
  std::size_t n = m.size();
  if (n == 0) return SuperPolynomial::constant(table, 1);
  auto a = m;
  int sign = 1;
  SuperPolynomial prev = SuperPolynomial::constant(table, 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && a[r][k].is_zero()) ++r;
      if (r == n) return SuperPolynomial(table);
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        SuperPolynomial t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        auto q = t.exact_quotient(prev);
        if (!q) throw AlgebraError("Bareiss step not exact");
        a[i][j] = std::move(*q);
      }
    prev = a[k][k];
  }
  SuperPolynomial d = a[n - 1][n - 1];
  return sign < 0 ? -d : d;
}

namespace {
// Inverse of an odd-free polynomial matrix as adj / det.
std::vector<std::vector<RationalSuperFunction>> body_inverse(
    const std::vector<std::vector<SuperPolynomial>>& b, const VarTablePtr& table) {
  std::size_t n = b.size();
  SuperPolynomial det = body_determinant(b, table);
  if (det.is_zero()) throw AlgebraError("mat_inverse: singular body");
  std::vector<std::vector<RationalSuperFunction>> inv(
      n, std::vector<RationalSuperFunction>(n, RationalSuperFunction(table)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      // inv(i,j) = (-1)^{i+j} minor(j,i) / det
      std::vector<std::vector<SuperPolynomial>> minor;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        std::vector<SuperPolynomial> row;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) row.push_back(b[r][c]);
        minor.push_back(std::move(row));
      }
      SuperPolynomial cof = body_determinant(minor, table);
      if ((i + j) & 1U) cof = -cof;
      if (!cof.is_zero()) inv[i][j] = RationalSuperFunction::quotient(cof, det);
    }
  return inv;
}
}  // namespace

SuperMatrix mat_inverse(const SuperMatrix& a) {
  if (a.row_split() != a.col_split()) throw AlgebraError("mat_inverse: not square");
  std::size_t n = a.rows();
  const auto& table = a.table();
  // Clear row denominators: a = diag(1/d_i) * at with at polynomial.
  std::vector<RationalSuperFunction> row_den(n, RationalSuperFunction::constant(table, 1));
  std::vector<std::vector<SuperPolynomial>> at(n, std::vector<SuperPolynomial>(n, SuperPolynomial(table)));
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<RationalSuperFunction::Factor> common;
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& f : a(i, j).factors()) {
        bool found = false;
        for (auto& g : common)
          if (g.poly == f.poly) {
            g.exp = std::max(g.exp, f.exp);
            found = true;
          }
        if (!found) common.push_back(f);
      }
    SuperPolynomial d = SuperPolynomial::constant(table, 1);
    for (const auto& f : common) d = d * f.poly.pow(static_cast<unsigned>(f.exp));
    row_den[i] = RationalSuperFunction(d);
    for (std::size_t j = 0; j < n; ++j) {
      auto q = (a(i, j) * row_den[i]).regular_part();
      if (!q) throw AlgebraError("mat_inverse: row scaling failed");
      at[i][j] = std::move(*q);
    }
  }
  std::vector<std::vector<SuperPolynomial>> body(n, std::vector<SuperPolynomial>(n));
  SuperMatrix nil(table, a.row_split(), a.col_split());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      body[i][j] = at[i][j].body();
      nil(i, j) = RationalSuperFunction(at[i][j].nilpotent_part());
    }
  auto binv_entries = body_inverse(body, table);
  SuperMatrix binv(table, a.row_split(), a.col_split());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) binv(i, j) = binv_entries[i][j];

  // at^{-1} = sum_j (-B^{-1} N)^j B^{-1}
  SuperMatrix step = mat_mul(binv, nil);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) step(i, j) = -step(i, j);
  SuperMatrix term = binv;
  SuperMatrix total = binv;
  for (std::size_t guard = 0; guard <= table->num_odd() + 1; ++guard) {
    term = mat_mul(step, term);
    bool zero = true;
    for (std::size_t i = 0; i < n && zero; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!term(i, j).is_zero()) {
          zero = false;
          break;
        }
    if (zero) break;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) total(i, j) += term(i, j);
  }
  // a^{-1} = at^{-1} diag(d)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!total(i, j).is_zero()) total(i, j) *= row_den[j];
  return total;
}

}  // namespace superflag

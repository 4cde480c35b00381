#ifndef SUPERFLAG_SUPERMATRIX_HPP
#define SUPERFLAG_SUPERMATRIX_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "superflag/superpoly.hpp"

namespace superflag {

/// Dense matrix over RationalSuperFunction with an even|odd split on rows
/// and columns. Even rows/columns come first.
class SuperMatrix {
 public:
  using Split = std::pair<std::size_t, std::size_t>;

  SuperMatrix() = default;
  SuperMatrix(VarTablePtr table, Split rows, Split cols);

  static SuperMatrix identity(VarTablePtr table, Split split);

  const VarTablePtr& table() const { return table_; }
  Split row_split() const { return rows_; }
  Split col_split() const { return cols_; }
  std::size_t rows() const { return rows_.first + rows_.second; }
  std::size_t cols() const { return cols_.first + cols_.second; }

  const RationalSuperFunction& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols() + j];
  }
  RationalSuperFunction& operator()(std::size_t i, std::size_t j) { return entries_[i * cols() + j]; }

  Parity row_parity(std::size_t i) const { return i < rows_.first ? Parity::Even : Parity::Odd; }
  Parity col_parity(std::size_t j) const { return j < cols_.first ? Parity::Even : Parity::Odd; }

  /// Diagonal blocks even, off-diagonal blocks odd.
  bool is_even() const;
  bool is_identity() const;

  SuperMatrix map(const std::function<RationalSuperFunction(const RationalSuperFunction&)>& f,
                  VarTablePtr target) const;

  /// Block layout, one row per line with a rule between even and odd rows.
  std::string to_string() const;

  friend bool operator==(const SuperMatrix& a, const SuperMatrix& b);

 private:
  VarTablePtr table_;
  Split rows_{0, 0};
  Split cols_{0, 0};
  std::vector<RationalSuperFunction> entries_;
};

SuperMatrix mat_mul(const SuperMatrix& a, const SuperMatrix& b);

/// Square submatrix made of the listed even rows and odd rows (0-based,
/// odd indices counted within the odd block).
SuperMatrix mat_rows(const SuperMatrix& a, const std::vector<std::size_t>& even_rows,
                     const std::vector<std::size_t>& odd_rows);

/// Exact inverse of a square matrix whose body is invertible.
SuperMatrix mat_inverse(const SuperMatrix& a);

/// Determinant of a square odd-free polynomial matrix (Bareiss).
SuperPolynomial body_determinant(const std::vector<std::vector<SuperPolynomial>>& m,
                                 const VarTablePtr& table);

}  // namespace superflag

#endif  // SUPERFLAG_SUPERMATRIX_HPP

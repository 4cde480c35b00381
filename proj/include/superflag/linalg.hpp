#ifndef SUPERFLAG_LINALG_HPP
#define SUPERFLAG_LINALG_HPP

// Exact linear algebra over Q. Rows are stored sparse with integer entries
// and reduced fraction-free, with the content divided out after each step.

#include <cstdint>
#include <optional>
#include <vector>

#include "superflag/superpoly.hpp"

namespace superflag {

using SparseEntry = std::pair<std::uint32_t, Integer>;

struct SparseRow {
  std::vector<SparseEntry> entries;  // strictly increasing columns, nonzero values
  bool empty() const { return entries.empty(); }
  std::uint32_t lead() const { return entries.front().first; }
};

/// Builds a primitive integer row from rational (column, value) pairs.
SparseRow make_row(std::vector<std::pair<std::uint32_t, Rational>> entries);

/// Incremental row echelon form. Every stored row has a distinct leading
/// column and a positive leading coefficient.
class Echelon {
 public:
  explicit Echelon(std::uint32_t columns) : columns_(columns) {}

  /// Reduces the row against the basis and stores the remainder if nonzero.
  /// Returns true when the rank grew.
  bool add(SparseRow row);
  /// Reduced form of a row against the current basis (not stored).
  SparseRow reduce(SparseRow row) const;
  bool in_span(const SparseRow& row) const { return reduce(row).empty(); }

  std::uint32_t columns() const { return columns_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<SparseRow>& rows() const { return rows_; }

  /// Fully reduces every row (reduced row echelon form, rows ordered by pivot).
  void make_reduced();
  /// Basis of {x : R x = 0} over the first `columns` coordinates, one vector per
  /// free column in increasing order, with x[free] = 1.
  std::vector<std::vector<Rational>> nullspace() const;

 private:
  std::uint32_t columns_;
  std::vector<SparseRow> rows_;
  std::vector<std::int64_t> pivot_row_;  // column -> row index or -1
};

/// Dense helpers for small systems.
std::size_t rank_of(const std::vector<std::vector<Rational>>& rows);
std::vector<std::vector<Rational>> nullspace_of(const std::vector<std::vector<Rational>>& rows,
                                                std::size_t columns);
/// Solves sum_i c_i rows[i] = target, if possible.
std::optional<std::vector<Rational>> express_in(const std::vector<std::vector<Rational>>& rows,
                                                const std::vector<Rational>& target);

}  // namespace superflag

#endif  // SUPERFLAG_LINALG_HPP

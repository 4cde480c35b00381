#ifndef SUPERFLAG_FLAG_ATLAS_HPP
#define SUPERFLAG_FLAG_ATLAS_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "superflag/lie_superalgebra.hpp"
#include "superflag/supermatrix.hpp"

namespace superflag {

/// Flags 0 < k_r+l_r < ... < k_1+l_1 < m+n of sub-superspaces of C^{m|n}.
struct FlagType {
  int m = 0, n = 0;
  std::vector<int> k, l;

  std::size_t length() const { return k.size(); }
  int k_at(std::size_t s) const { return s == 0 ? m : k[s - 1]; }  // s = 0..r
  int l_at(std::size_t s) const { return s == 0 ? n : l[s - 1]; }
  void validate() const;
  bool is_grassmannian() const { return k.size() == 1; }
  /// Grassmannian of the first level.
  FlagType base() const;
  std::size_t even_dim() const;
  std::size_t odd_dim() const;

  /// "F(m|n; k1,...,kr | l1,...,lr)" or "Gr(m|n; k|l)".
  static FlagType parse(const std::string& text);
  std::string to_string() const;
  friend bool operator==(const FlagType&, const FlagType&) = default;
};

/// Identity-row choice per level; indices 0-based within their parity block.
struct ChartIndex {
  struct Level {
    std::vector<int> even, odd;
    friend bool operator==(const Level&, const Level&) = default;
    friend auto operator<=>(const Level&, const Level&) = default;
  };
  std::vector<Level> levels;
  std::string to_string() const;  // 1-based, e.g. "{2|1,2}{1|2}"
  friend bool operator==(const ChartIndex&, const ChartIndex&) = default;
  friend auto operator<=>(const ChartIndex&, const ChartIndex&) = default;
};

/// Coordinates of one chart: the free entries of Z_1..Z_r.
struct Chart {
  FlagType type;
  ChartIndex index;
  VarTablePtr vars;
  std::vector<SuperMatrix> Z;
  /// Flat variable index -> level (1-based).
  std::vector<int> level_of;
  /// Flat variable index -> (row, col) inside Z[level-1].
  std::vector<std::pair<std::size_t, std::size_t>> position;
};

std::vector<ChartIndex> enumerate_charts(const FlagType& t);
ChartIndex standard_index(const FlagType& t);
Chart make_chart(const FlagType& t, const ChartIndex& idx);
Chart standard_chart(const FlagType& t);

/// Applies Z_1 -> L Z_1 C_1^{-1}, Z_s -> C_{s-1} Z_s C_s^{-1} where C_s are
/// the J-rows. `Z` may live over a larger table than the chart (e.g. with
/// formal parameters); L may be empty (identity).
std::vector<SuperMatrix> act_on_chart(const std::vector<SuperMatrix>& Z, const SuperMatrix* L,
                                      const FlagType& t, const ChartIndex& J);

/// Images of the target chart's variables (flat order) as functions on the
/// source chart. Throws when a C body is singular.
std::vector<RationalSuperFunction> transition(const Chart& from, const Chart& to);

/// Owns the charts of one flag type and caches transitions.
class Atlas {
 public:
  explicit Atlas(FlagType t);
  const FlagType& type() const { return type_; }
  std::size_t size() const { return indices_.size(); }
  const std::vector<ChartIndex>& indices() const { return indices_; }
  std::size_t standard() const { return standard_; }
  const Chart& chart(std::size_t i) const;
  std::size_t find(const ChartIndex& idx) const;

  /// Cached transition; falls back to composing through another chart when
  /// the direct computation is singular.
  const std::vector<RationalSuperFunction>& transition(std::size_t from, std::size_t to) const;

 private:
  FlagType type_;
  std::vector<ChartIndex> indices_;
  std::size_t standard_ = 0;
  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<Chart>> charts_;
  mutable std::map<std::pair<std::size_t, std::size_t>, std::vector<RationalSuperFunction>> cache_;
};

/// Composition: images of `outer` (functions of the middle chart) pulled back
/// along `inner` (middle variables as functions of the source).
std::vector<RationalSuperFunction> compose(const std::vector<RationalSuperFunction>& outer,
                                           const std::vector<RationalSuperFunction>& inner);

}  // namespace superflag

#endif  // SUPERFLAG_FLAG_ATLAS_HPP

#ifndef SUPERFLAG_FIELDS_HPP
#define SUPERFLAG_FIELDS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "superflag/flag_atlas.hpp"
#include "superflag/lie_superalgebra.hpp"

namespace superflag {

/// sum_v c_v d/dv on one coordinate table, with left derivatives.
class SuperDerivation {
 public:
  SuperDerivation() = default;
  explicit SuperDerivation(VarTablePtr table);
  SuperDerivation(VarTablePtr table, std::vector<RationalSuperFunction> coeffs);

  /// c * d/dv
  static SuperDerivation partial(VarTablePtr table, std::string_view var,
                                 const SuperPolynomial& coeff);

  const VarTablePtr& table() const { return table_; }
  const std::vector<RationalSuperFunction>& coeffs() const { return coeffs_; }
  const RationalSuperFunction& coeff(std::size_t flat) const { return coeffs_[flat]; }
  const RationalSuperFunction& coeff(std::string_view name) const;
  RationalSuperFunction& coeff(std::size_t flat) { return coeffs_[flat]; }

  bool is_zero() const;
  /// nullopt for inhomogeneous fields; zero is even.
  std::optional<Parity> parity() const;
  SuperDerivation even_part() const;
  SuperDerivation odd_part() const;
  /// Polynomial coefficients, or nullopt if some coefficient has a denominator.
  bool is_polynomial() const;

  SuperDerivation operator-() const;
  SuperDerivation& operator+=(const SuperDerivation& o);
  SuperDerivation& operator-=(const SuperDerivation& o);
  SuperDerivation& operator*=(const Rational& c);
  friend SuperDerivation operator+(SuperDerivation a, const SuperDerivation& b) { return a += b; }
  friend SuperDerivation operator-(SuperDerivation a, const SuperDerivation& b) { return a -= b; }
  friend SuperDerivation operator*(const Rational& c, SuperDerivation a) { return a *= c; }
  friend bool operator==(const SuperDerivation& a, const SuperDerivation& b);

  /// Same field over another table whose names include this table's names.
  SuperDerivation remap(const VarTablePtr& target) const;

  /// "-x^2 ∂/∂x + ξη ∂/∂y" style.
  std::string to_string() const;
  /// "coord: poly; coord: poly", the input syntax of the parser.
  std::string to_text() const;

 private:
  VarTablePtr table_;
  std::vector<RationalSuperFunction> coeffs_;
};

RationalSuperFunction apply(const SuperDerivation& v, const RationalSuperFunction& f);
RationalSuperFunction apply(const SuperDerivation& v, const SuperPolynomial& f);
SuperDerivation field_bracket(const SuperDerivation& a, const SuperDerivation& b);

/// Pushes a field on atlas chart `from` to chart `to`.
SuperDerivation pushforward(const SuperDerivation& v, const Atlas& atlas, std::size_t from,
                            std::size_t to);

/// Fundamental field of X on the chart: first-order part of Z -> L Z C^{-1}
/// with L = E + tX, t a nilpotent parameter of the parity of X.
SuperDerivation fundamental_field(const GlElement& X, const Chart& chart);

struct ProjectionResult {
  bool projectable = false;
  std::string offending;  // coordinate whose coefficient leaves the base
  SuperDerivation base;   // field on the first-level Grassmannian chart
};

/// Base-chart table of a flag chart: the Grassmannian chart with the same I_1.
Chart base_chart(const Chart& chart);
ProjectionResult project(const SuperDerivation& v, const Chart& chart);
inline bool is_projectable(const SuperDerivation& v, const Chart& chart) {
  return project(v, chart).projectable;
}
/// Lifts a base field to the flag chart by putting its coefficients on the
/// level-1 coordinates.
SuperDerivation lift_base_field(const SuperDerivation& w, const Chart& chart);

/// The fifteen fields of the Cartan-type algebra on the Gr(2|2; 1|2)
/// standard chart, graded (-1, 0, 1, 2) with sizes (4, 6, 4, 1).
struct H4Basis {
  Chart chart;
  std::vector<SuperDerivation> fields;
  std::vector<int> degree;
  std::vector<std::string> labels;
  SuperDerivation z;
};
H4Basis h4_basis();

/// Linear coordinates of polynomial fields over a shared monomial index.
class FieldCoordinates {
 public:
  /// Returns the coordinate vector, growing the index as needed.
  std::vector<Rational> coords(const SuperDerivation& v);
  std::size_t size() const { return index_.size(); }

 private:
  std::map<std::pair<std::size_t, Monomial>, std::size_t,
           bool (*)(const std::pair<std::size_t, Monomial>&, const std::pair<std::size_t, Monomial>&)>
      index_{[](const std::pair<std::size_t, Monomial>& a, const std::pair<std::size_t, Monomial>& b) {
        if (a.first != b.first) return a.first < b.first;
        return compare(a.second, b.second) < 0;
      }};
};

/// Coordinate rows of polynomial fields, padded to a common length.
std::vector<std::vector<Rational>> field_matrix(const std::vector<SuperDerivation>& fields);

}  // namespace superflag

#endif  // SUPERFLAG_FIELDS_HPP

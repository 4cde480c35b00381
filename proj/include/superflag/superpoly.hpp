#ifndef SUPERFLAG_SUPERPOLY_HPP
#define SUPERFLAG_SUPERPOLY_HPP

// Exact arithmetic in Q[x_1..x_p] (x) Lambda(xi_1..xi_q) and in its
// localization at odd-free denominators.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace superflag {

using Rational = mpq_class;
using Integer = mpz_class;

inline constexpr std::size_t kMaxEven = 16;
inline constexpr std::size_t kMaxOdd = 32;

enum class Parity : std::uint8_t { Even = 0, Odd = 1 };

inline Parity operator+(Parity a, Parity b) {
  return static_cast<Parity>(static_cast<int>(a) ^ static_cast<int>(b));
}
inline int sign_of(Parity a, Parity b) {
  return (a == Parity::Odd && b == Parity::Odd) ? -1 : 1;
}
const char* to_string(Parity p);

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Variable {
  Parity parity = Parity::Even;
  std::uint32_t index = 0;
  friend bool operator==(const Variable&, const Variable&) = default;
};

/// Ordered even and odd variable names. The order fixes the canonical
/// monomial order, so a table is never mutated after construction.
class VarTable {
 public:
  VarTable(std::vector<std::string> even_names, std::vector<std::string> odd_names,
           std::string label = {});

  static std::shared_ptr<const VarTable> make(std::vector<std::string> even_names,
                                              std::vector<std::string> odd_names,
                                              std::string label = {});

  std::size_t num_even() const { return even_.size(); }
  std::size_t num_odd() const { return odd_.size(); }
  std::size_t size() const { return even_.size() + odd_.size(); }
  const std::string& label() const { return label_; }
  const std::vector<std::string>& even_names() const { return even_; }
  const std::vector<std::string>& odd_names() const { return odd_; }
  const std::string& name(Variable v) const;

  // Flat index: even variables first, then odd ones.
  std::size_t flat(Variable v) const;
  Variable var(std::size_t flat_index) const;

  /// Accepts the exact name and the ASCII spellings xi/eta for ξ/η.
  std::optional<Variable> find(std::string_view name) const;
  Variable at(std::string_view name) const;

  bool same_as(const VarTable& other) const;

 private:
  std::vector<std::string> even_;
  std::vector<std::string> odd_;
  std::string label_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

struct Monomial {
  std::array<std::uint8_t, kMaxEven> exps{};
  std::uint32_t odd = 0;

  unsigned even_degree() const;
  unsigned odd_degree() const;
  Parity parity() const { return (odd_degree() & 1U) ? Parity::Odd : Parity::Even; }
  bool is_one() const { return odd == 0 && even_degree() == 0; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Graded-lex on even exponents, then lex on odd index sets.
int compare(const Monomial& a, const Monomial& b);

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
};

/// Product of monomials; the sign is 0 when an odd variable repeats.
std::pair<int, Monomial> multiply(const Monomial& a, const Monomial& b);

class RationalSuperFunction;

class SuperPolynomial {
 public:
  struct Term {
    Monomial mono;
    Rational coeff;
  };

  SuperPolynomial() = default;
  explicit SuperPolynomial(VarTablePtr table);
  SuperPolynomial(VarTablePtr table, std::vector<Term> terms);

  static SuperPolynomial constant(VarTablePtr table, const Rational& c);
  static SuperPolynomial variable(VarTablePtr table, Variable v);
  static SuperPolynomial variable(VarTablePtr table, std::string_view name);
  static SuperPolynomial monomial(VarTablePtr table, const Monomial& m,
                                  const Rational& c = 1);

  const VarTablePtr& table() const { return table_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  std::size_t size() const { return terms_.size(); }

  /// nullopt when the terms mix parities; zero counts as even.
  std::optional<Parity> parity() const;
  bool is_homogeneous(Parity p) const;
  bool is_odd_free() const;
  unsigned max_even_degree() const;

  SuperPolynomial body() const;
  SuperPolynomial nilpotent_part() const;
  const Term& leading_term() const;
  Rational coefficient(const Monomial& m) const;

  /// Even polynomial coefficient of each odd monomial.
  std::map<std::uint32_t, SuperPolynomial> odd_components() const;

  SuperPolynomial operator-() const;
  SuperPolynomial& operator+=(const SuperPolynomial& o);
  SuperPolynomial& operator-=(const SuperPolynomial& o);
  SuperPolynomial& operator*=(const Rational& c);
  friend SuperPolynomial operator+(SuperPolynomial a, const SuperPolynomial& b) { return a += b; }
  friend SuperPolynomial operator-(SuperPolynomial a, const SuperPolynomial& b) { return a -= b; }
  friend SuperPolynomial operator*(const SuperPolynomial& a, const SuperPolynomial& b);
  friend SuperPolynomial operator*(SuperPolynomial a, const Rational& c) { return a *= c; }
  friend SuperPolynomial operator*(const Rational& c, SuperPolynomial a) { return a *= c; }
  friend bool operator==(const SuperPolynomial& a, const SuperPolynomial& b);

  SuperPolynomial pow(unsigned k) const;

  /// Left derivative: an odd variable is moved to the front before it is struck.
  SuperPolynomial partial(Variable v) const;

  /// Division by an odd-free divisor: returns (quotient, remainder) with no
  /// remainder term divisible by the divisor's leading monomial.
  std::pair<SuperPolynomial, SuperPolynomial> divide(const SuperPolynomial& divisor) const;
  SuperPolynomial remainder(const SuperPolynomial& divisor) const;
  std::optional<SuperPolynomial> exact_quotient(const SuperPolynomial& divisor) const;

  /// Ring homomorphism sending variable i (flat order) to images[i].
  RationalSuperFunction substitute(std::span<const RationalSuperFunction> images) const;

  /// Moves every variable to a variable of another table by name.
  SuperPolynomial remap(const VarTablePtr& target) const;
  /// Same, with an explicit flat-index map (entries must be valid).
  SuperPolynomial remap(const VarTablePtr& target, std::span<const std::size_t> flat_map) const;

  std::string to_string() const;

 private:
  void normalize();
  void check_table(const SuperPolynomial& o) const;

  VarTablePtr table_;
  std::vector<Term> terms_;  // ascending canonical order, no zero coefficients
};

/// num / den with den an odd-free polynomial kept as a product of monic
/// factors. Denominators are never merged by gcd; reduce() strips factors
/// that divide the numerator.
class RationalSuperFunction {
 public:
  struct Factor {
    SuperPolynomial poly;  // odd-free, monic, nonconstant
    int exp = 0;
  };

  RationalSuperFunction() = default;
  explicit RationalSuperFunction(VarTablePtr table);
  RationalSuperFunction(SuperPolynomial num);  // NOLINT(google-explicit-constructor)
  RationalSuperFunction(SuperPolynomial num, std::vector<Factor> factors);

  static RationalSuperFunction constant(VarTablePtr table, const Rational& c);
  /// num / den for an odd-free nonzero den.
  static RationalSuperFunction quotient(SuperPolynomial num, const SuperPolynomial& den);

  const VarTablePtr& table() const { return num_.table(); }
  const SuperPolynomial& num() const { return num_; }
  const std::vector<Factor>& factors() const { return factors_; }
  SuperPolynomial den() const;
  bool is_zero() const { return num_.is_zero(); }
  bool has_denominator() const { return !factors_.empty(); }
  std::optional<Parity> parity() const { return num_.parity(); }

  /// Odd-free part of the function.
  RationalSuperFunction body() const;

  RationalSuperFunction operator-() const;
  RationalSuperFunction& operator+=(const RationalSuperFunction& o);
  RationalSuperFunction& operator-=(const RationalSuperFunction& o);
  RationalSuperFunction& operator*=(const RationalSuperFunction& o);
  friend RationalSuperFunction operator+(RationalSuperFunction a, const RationalSuperFunction& b) {
    return a += b;
  }
  friend RationalSuperFunction operator-(RationalSuperFunction a, const RationalSuperFunction& b) {
    return a -= b;
  }
  friend RationalSuperFunction operator*(RationalSuperFunction a, const RationalSuperFunction& b) {
    return a *= b;
  }
  friend bool operator==(const RationalSuperFunction& a, const RationalSuperFunction& b);

  /// 1/f for even f with nonzero body. Candidate factors are tried on the
  /// new denominator before it is stored.
  RationalSuperFunction inverse(std::span<const Factor> hints = {}) const;

  RationalSuperFunction partial(Variable v) const;
  RationalSuperFunction substitute(std::span<const RationalSuperFunction> images) const;

  /// Cancels denominator factors that divide the numerator.
  RationalSuperFunction& reduce();
  /// The polynomial quotient when the denominator divides the numerator.
  std::optional<SuperPolynomial> regular_part() const;

  RationalSuperFunction remap(const VarTablePtr& target) const;
  RationalSuperFunction remap(const VarTablePtr& target, std::span<const std::size_t> flat_map) const;

  std::string to_string() const;

 private:
  SuperPolynomial num_;
  std::vector<Factor> factors_;
};

using SuperFunction = RationalSuperFunction;

SuperPolynomial sp_add(const SuperPolynomial& a, const SuperPolynomial& b);
SuperPolynomial sp_mul(const SuperPolynomial& a, const SuperPolynomial& b);
SuperPolynomial sp_partial(const SuperPolynomial& a, Variable v);
RationalSuperFunction sp_substitute(const SuperPolynomial& a,
                                    std::span<const RationalSuperFunction> images);
RationalSuperFunction sp_invert(const SuperPolynomial& a);
std::optional<SuperPolynomial> rf_is_regular(const RationalSuperFunction& f);

/// Sums RationalSuperFunctions over one shared common denominator.
RationalSuperFunction sum(std::span<const RationalSuperFunction> parts, const VarTablePtr& table);

/// Splits c * p with p monic (leading coefficient 1).
std::pair<Rational, SuperPolynomial> make_monic(const SuperPolynomial& p);

std::string format_rational(const Rational& q);

}  // namespace superflag

#endif  // SUPERFLAG_SUPERPOLY_HPP

#ifndef SUPERFLAG_LIE_SUPERALGEBRA_HPP
#define SUPERFLAG_LIE_SUPERALGEBRA_HPP

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "superflag/superpoly.hpp"

namespace superflag {

/// Element of gl(m|n) as an (m+n)x(m+n) rational matrix. Indices are
/// 0-based here; row/column i is even iff i < m.
class GlElement {
 public:
  GlElement() = default;
  GlElement(std::size_t m, std::size_t n);

  /// Elementary matrix E_ab, 1-based as in the usual notation.
  static GlElement E(std::size_t m, std::size_t n, std::size_t a, std::size_t b);
  static GlElement identity(std::size_t m, std::size_t n);

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  std::size_t size() const { return m_ + n_; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * size() + j]; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * size() + j]; }

  Parity index_parity(std::size_t i) const { return i < m_ ? Parity::Even : Parity::Odd; }
  /// nullopt when both blocks are populated; zero is even.
  std::optional<Parity> parity() const;
  GlElement even_part() const;
  GlElement odd_part() const;
  bool is_zero() const;
  GlElement transpose() const;

  GlElement& operator+=(const GlElement& o);
  GlElement& operator-=(const GlElement& o);
  GlElement& operator*=(const Rational& c);
  friend GlElement operator+(GlElement a, const GlElement& b) { return a += b; }
  friend GlElement operator-(GlElement a, const GlElement& b) { return a -= b; }
  friend GlElement operator*(const Rational& c, GlElement a) { return a *= c; }
  friend bool operator==(const GlElement& a, const GlElement& b);

  /// Coordinates in the E_ab basis, row-major.
  std::vector<Rational> coords() const { return a_; }
  std::string to_string() const;

 private:
  std::size_t m_ = 0, n_ = 0;
  std::vector<Rational> a_;
};

GlElement gl_product(const GlElement& a, const GlElement& b);
/// Super commutator, extended bilinearly to inhomogeneous arguments.
GlElement gl_bracket(const GlElement& a, const GlElement& b);
/// Representative of a + <identity> with vanishing (1,1) entry.
GlElement pgl_project(const GlElement& a);
Rational supertrace(const GlElement& a);

/// n * 2^n.
long long wn_dimension(int n);

/// A Lie superalgebra given by a basis and structure constants.
class AbstractSuperAlgebra {
 public:
  using Vec = std::vector<Rational>;

  /// brackets[i][j] are the coordinates of [e_i, e_j]. Throws when
  /// super-antisymmetry or super-Jacobi fails.
  AbstractSuperAlgebra(std::string name, std::vector<std::string> labels, std::vector<Parity> parity,
                       std::vector<std::vector<Vec>> brackets);

  const std::string& name() const { return name_; }
  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Parity>& parities() const { return parity_; }
  const Vec& structure(std::size_t i, std::size_t j) const { return brackets_[i][j]; }

  Vec bracket(const Vec& a, const Vec& b) const;
  /// Number of graded-Jacobi triples checked at construction.
  std::size_t jacobi_checks() const { return jacobi_checks_; }

  std::string to_json() const;

 private:
  std::string name_;
  std::vector<std::string> labels_;
  std::vector<Parity> parity_;
  std::vector<std::vector<Vec>> brackets_;
  std::size_t jacobi_checks_ = 0;
};

AbstractSuperAlgebra make_gl(std::size_t m, std::size_t n);
/// Basis E_ab except E_11, bracket reduced by pgl_project.
AbstractSuperAlgebra make_pgl(std::size_t m, std::size_t n);
/// Supertrace-free matrices.
AbstractSuperAlgebra make_sl(std::size_t m, std::size_t n);
/// Derivations of the Grassmann algebra on n generators.
AbstractSuperAlgebra make_wn(std::size_t n);

/// Subspace of a coordinate space with exact membership tests.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}
  Subspace(std::size_t ambient, const std::vector<std::vector<Rational>>& vectors);
  bool add(const std::vector<Rational>& v);
  std::size_t dim() const { return basis_.size(); }
  std::size_t ambient() const { return ambient_; }
  bool contains(const std::vector<Rational>& v) const;
  const std::vector<std::vector<Rational>>& basis() const { return basis_; }

 private:
  std::size_t ambient_;
  std::vector<std::vector<Rational>> basis_;
};

/// Is span(vectors) closed under bracket with every basis element of g?
bool is_ideal(const AbstractSuperAlgebra& g, const std::vector<std::vector<Rational>>& vectors);
/// Coordinates of psl(m|n) inside make_pgl(m, n): supertrace-free representatives.
std::vector<std::vector<Rational>> psl_in_pgl(std::size_t m, std::size_t n);

}  // namespace superflag

#endif  // SUPERFLAG_LIE_SUPERALGEBRA_HPP

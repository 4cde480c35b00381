#ifndef SUPERFLAG_WEIGHTS_HPP
#define SUPERFLAG_WEIGHTS_HPP

// Cartan weights in the mu/lambda basis, dominance, Weyl dimensions and
// Borel-Weil-Bott counts of global sections.

#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "superflag/fields.hpp"

namespace superflag {

struct Weight {
  std::vector<long> mu;      // length m
  std::vector<long> lambda;  // length n

  static Weight zero(std::size_t m, std::size_t n);
  /// mu_i or lambda_j as a unit vector, 1-based.
  static Weight mu_unit(std::size_t m, std::size_t n, std::size_t i);
  static Weight lambda_unit(std::size_t m, std::size_t n, std::size_t j);

  bool is_zero() const;
  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight operator-() const;
  friend bool operator==(const Weight&, const Weight&) = default;
  friend bool operator<(const Weight& a, const Weight& b) {
    return std::tie(a.mu, a.lambda) < std::tie(b.mu, b.lambda);
  }

  /// "μ1 - λ3", "0", "μ1 + μ2 - λ1 - λ2".
  std::string to_string() const;
};

/// Simultaneous eigenvalues of [mu(E_ii), v]; nullopt when v is not a joint eigenvector.
std::optional<Weight> weight_of(const SuperDerivation& v, const FlagType& t, const Chart& chart);

/// mu and lambda strings weakly decreasing.
bool is_dominant(const Weight& w);

/// Dimension of the irreducible gl_m + gl_n module (trace characters forgotten).
Integer weyl_dim(const Weight& w);

enum class PsiCase {
  Generic,
  ExceptionalA,   // fiber Gr(2|2;1|1)
  ExceptionalB1,  // fibers Gr(2|2;0|1), Gr(2|2;1|2)
  ExceptionalB2,  // fibers Gr(2|2;1|0), Gr(2|2;2|1)
};

const char* to_string(PsiCase c);
std::optional<PsiCase> parse_psi_case(std::string_view s);

struct PsiRepresentation {
  std::size_t m = 0, n = 0, k1 = 0, l1 = 0;
  PsiCase kind = PsiCase::Generic;
  std::vector<std::pair<Weight, int>> weights;  // highest weights with multiplicities
};

PsiRepresentation psi_weights(std::size_t m, std::size_t n, std::size_t k1, std::size_t l1,
                              PsiCase kind = PsiCase::Generic);

/// Sum of Weyl dimensions over the acting factors gl_k1 + gl_l1 (gl_2 + gl_2
/// for exceptional fibers): the dimension of the fiber itself.
Integer fiber_dim(const PsiRepresentation& rep);

struct BwbResult {
  Integer dimension;
  std::vector<Weight> survivors;
};

BwbResult bwb_sections(const PsiRepresentation& rep);

/// One row of the section table: which printed cases apply and what they predict.
struct SectionRow {
  std::size_t m, n, k1, l1;
  std::vector<int> cases;             // 1-based case numbers that match
  std::vector<Weight> predicted;      // modules named by the first matching case
  bool conflict = false;              // matching cases disagree
  std::optional<Integer> predicted_dim;
  BwbResult computed;
  bool agrees() const;
};

/// Highest weights r1..r4: mu1-mu_m, mu1-lambda_n, lambda1-mu_m, lambda1-lambda_n.
Weight r_weight(std::size_t m, std::size_t n, int which);

std::optional<SectionRow> section_row(std::size_t m, std::size_t n, std::size_t k1, std::size_t l1);
std::vector<SectionRow> section_table(std::size_t max_m, std::size_t max_n);

}  // namespace superflag

#endif  // SUPERFLAG_WEIGHTS_HPP

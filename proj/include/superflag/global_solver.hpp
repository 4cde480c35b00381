#ifndef SUPERFLAG_GLOBAL_SOLVER_HPP
#define SUPERFLAG_GLOBAL_SOLVER_HPP

#include <optional>
#include <string>
#include <vector>

#include "superflag/fields.hpp"

namespace superflag {

struct SolveOptions {
  bool parallel = false;
  /// Only fields with coefficients on level >= 2 coordinates.
  bool vertical = false;
  /// Skip the D+1 run.
  bool check_stabilization = true;
};

struct SolveReport {
  std::string space;
  int degree = 0;
  std::size_t dimension = 0;
  bool stabilized = false;
  std::size_t dimension_next = 0;  // at degree + 1 (when checked)
  std::vector<std::string> basis;  // serialized fields or functions
  std::vector<std::string> certificates;

  // In-memory results on the standard chart (not serialized).
  std::vector<SuperDerivation> fields;
  std::vector<SuperPolynomial> functions;

  std::string to_json() const;
  static SolveReport from_json(const std::string& text);
  std::string to_text() const;
  friend bool operator==(const SolveReport& a, const SolveReport& b) {
    return a.space == b.space && a.degree == b.degree && a.dimension == b.dimension &&
           a.stabilized == b.stabilized && a.dimension_next == b.dimension_next && a.basis == b.basis &&
           a.certificates == b.certificates;
  }
};

SolveReport solve_global_fields(const FlagType& t, int degree, const SolveOptions& opts = {});
SolveReport solve_global_functions(const FlagType& t, int degree, const SolveOptions& opts = {});

/// Fields on the standard chart at a fixed degree, without stabilization.
std::vector<SuperDerivation> global_fields_at(const Atlas& atlas, int degree, const SolveOptions& opts);

/// Basis of {X in gl(m|n) : mu(X) = 0}.
std::vector<GlElement> mu_kernel(const FlagType& t);

/// Does a field on the standard chart extend regularly to every chart?
bool is_global(const SuperDerivation& v, const Atlas& atlas, std::string* failure = nullptr);

/// One constraint of a lift query in readable form.
struct LiftCondition {
  std::string source;    // e.g. "bracket with E13, component η^2_{11}"
  std::string equation;  // e.g. "∂g/∂ξ^1_{11} = y^2_{11}"
};

/// Derived single-derivative rule d(unknown)/d(var) = rhs.
struct DerivativeRule {
  std::string unknown;  // letter naming the vertical coefficient
  std::string coordinate;
  std::string var;
  SuperPolynomial rhs;
};

struct LiftResult {
  bool feasible = false;
  std::optional<SuperDerivation> witness;       // on the flag's standard chart
  std::vector<SuperDerivation> vertical_space;  // ambiguity of the witness
  std::vector<LiftCondition> certificate;       // minimal inconsistent set
  std::vector<DerivativeRule> rules;            // simplified consequences
  std::vector<std::string> unknown_names;       // "f = coefficient of ∂/∂y^2_{11}", ...
  bool used_brackets = false;                   // only when there are no vertical global fields
  std::string to_text() const;
};

/// Looks for a global field on the flag projecting to w (a field on the base
/// Grassmannian's standard chart).
LiftResult lift_query(const SuperDerivation& w, const FlagType& t, int degree = 2);

/// Dimensions of the eigenspaces of ad(z) on span(fields), z = sum over odd
/// level-1 coordinates xi d/dxi; keys are eigenvalues.
std::vector<std::pair<int, std::size_t>> odd_grading_dimensions(const std::vector<SuperDerivation>& fields);

}  // namespace superflag

#endif  // SUPERFLAG_GLOBAL_SOLVER_HPP

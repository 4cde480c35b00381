#ifndef SUPERFLAG_TESTS_PROPERTIES_HPP
#define SUPERFLAG_TESTS_PROPERTIES_HPP

// Randomized algebraic properties with hand-rolled generators. Each run
// returns how many cases it checked and the first counterexample, if any.

#include <cstdint>
#include <random>
#include <string>

#include "superflag/fields.hpp"
#include "superflag/supermatrix.hpp"

namespace superflag::props {

inline constexpr std::uint64_t kDefaultSeed = 20261018;
inline constexpr std::size_t kDefaultCases = 1000;

struct Outcome {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool ok(std::size_t min_cases = kDefaultCases) const { return failures == 0 && cases >= min_cases; }
};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  Monomial monomial(const VarTable& t, int max_deg);
  /// Random polynomial; with `parity` set, only terms of that parity.
  SuperPolynomial poly(const VarTablePtr& t, int terms, int max_deg, std::optional<Parity> parity = {});
  /// Even, with a nonzero constant term so that it is invertible near 0.
  SuperPolynomial unit(const VarTablePtr& t, int terms, int max_deg);
  /// Homogeneous polynomial field of the given parity.
  SuperDerivation field(const VarTablePtr& t, Parity p, int terms, int max_deg);
  /// Even supermatrix with polynomial entries and an invertible body.
  SuperMatrix even_matrix(const VarTablePtr& t, SuperMatrix::Split split, int max_deg);

 private:
  std::mt19937_64 rng_;
};

/// The variable table used by the polynomial-level properties.
VarTablePtr small_table();

Outcome super_jacobi(std::uint64_t seed, std::size_t cases = kDefaultCases);
Outcome leibniz(std::uint64_t seed, std::size_t cases = kDefaultCases);
Outcome odd_partials_anticommute(std::uint64_t seed, std::size_t cases = kDefaultCases);
Outcome inverse_roundtrip(std::uint64_t seed, std::size_t cases = kDefaultCases);
Outcome transition_cocycle(std::uint64_t seed, std::size_t cases = kDefaultCases);
Outcome pushforward_equivariance(std::uint64_t seed, std::size_t cases = kDefaultCases);

}  // namespace superflag::props

#endif  // SUPERFLAG_TESTS_PROPERTIES_HPP

#ifndef SUPERFLAG_VERIFY_HPP
#define SUPERFLAG_VERIFY_HPP

// Named invariant suites shared by the command line and the acceptance run.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "superflag/flag_atlas.hpp"
#include "superflag/parse.hpp"

namespace superflag {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  bool informational = false;  // reported, but does not decide the suite
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed() const;
  std::string to_text() const;
  std::string to_json() const;
};

struct VerifyOptions {
  std::optional<FlagType> space;
  std::uint64_t seed = 20240611;
  int degree = 2;
  bool parallel = false;
};

const std::vector<std::string>& suite_names();
/// Throws std::invalid_argument for an unknown suite.
SuiteReport run_suite(const std::string& name, const VerifyOptions& opts = {});

SuiteReport verify_homomorphism(const FlagType& t, std::uint64_t seed);
SuiteReport verify_kernel(const FlagType& t);
SuiteReport verify_golden_fields();
SuiteReport verify_h4();
SuiteReport verify_bwb_table(std::size_t max_m = 4, std::size_t max_n = 4);
SuiteReport verify_functions();
SuiteReport verify_lift();

/// The gl(2|2) fields on the Gr(2|2; 1|1) standard chart, in the short
/// names x, ξ, η, y.
struct GoldenField {
  std::size_t a, b;
  std::string field;
};
const std::vector<GoldenField>& golden_gr2211();
const Aliases& gr2211_aliases();
/// Short names on the F(2|2; 1,1|2,1) standard chart: x, ξ1, ξ2, η, y.
const Aliases& flag2211_aliases();

/// Brute-force count of semistandard tableaux: the dimension of the gl_k
/// module with weakly decreasing highest weight a.
std::size_t count_tableaux(const std::vector<long>& a);

}  // namespace superflag

#endif  // SUPERFLAG_VERIFY_HPP

#ifndef SUPERFLAG_PARSE_HPP
#define SUPERFLAG_PARSE_HPP

#include <map>
#include <stdexcept>
#include <string>

#include "superflag/fields.hpp"

namespace superflag {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Aliases = std::map<std::string, std::string>;

/// Expressions with + - * / ^, parentheses, rationals and variable names.
/// A name may carry a "^s_{ij}" suffix; a later "^k" is a power. Factors
/// must be separated by '*' or whitespace. Aliases rename short names.
RationalSuperFunction parse_function(const std::string& text, const VarTablePtr& table,
                                     const Aliases& aliases = {});
SuperPolynomial parse_polynomial(const std::string& text, const VarTablePtr& table,
                                 const Aliases& aliases = {});

/// "coord: expr; coord: expr".
SuperDerivation parse_field(const std::string& text, const VarTablePtr& table,
                            const Aliases& aliases = {});

}  // namespace superflag

#endif  // SUPERFLAG_PARSE_HPP

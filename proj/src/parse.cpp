#include "superflag/parse.hpp"

#include <cctype>

namespace superflag {

namespace {
class Parser {
 public:
  Parser(const std::string& s, const VarTablePtr& t, const Aliases& a) : s_(s), table_(t), aliases_(a) {}

  RationalSuperFunction parse() {
    auto r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_, 1) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("parse error at " + std::to_string(pos_) + " in '" + s_ + "': " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_name_start() const {
    if (pos_ >= s_.size()) return false;
    unsigned char c = static_cast<unsigned char>(s_[pos_]);
    return std::isalpha(c) || c >= 0x80;
  }
  bool at_factor_start() const {
    if (pos_ >= s_.size()) return false;
    unsigned char c = static_cast<unsigned char>(s_[pos_]);
    return at_name_start() || std::isdigit(c) || c == '(';
  }

  RationalSuperFunction expr() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      neg = s_[pos_] == '-';
      ++pos_;
    }
    RationalSuperFunction acc = term();
    if (neg) acc = -acc;
    while (true) {
      skip();
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) {
        char op = s_[pos_++];
        RationalSuperFunction t = term();
        acc = op == '+' ? acc + t : acc - t;
      } else {
        return acc;
      }
    }
  }

  RationalSuperFunction term() {
    RationalSuperFunction acc = power();
    while (true) {
      skip();
      if (pos_ < s_.size() && s_[pos_] == '*') {
        ++pos_;
        acc *= power();
      } else if (pos_ < s_.size() && s_[pos_] == '/') {
        ++pos_;
        RationalSuperFunction d = power();
        if (d.is_zero()) fail("division by zero");
        if (d.num().is_constant() && !d.has_denominator())
          acc *= RationalSuperFunction::constant(table_, Rational(1) / d.num().constant_term());
        else
          acc *= d.inverse();
      } else if (at_factor_start()) {
        acc *= power();
      } else {
        return acc;
      }
    }
  }

  RationalSuperFunction power() {
    RationalSuperFunction base = atom();
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      skip();
      unsigned long e = number_digits();
      RationalSuperFunction r = RationalSuperFunction::constant(table_, 1);
      for (unsigned long i = 0; i < e; ++i) r *= base;
      return r;
    }
    return base;
  }

  unsigned long number_digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return std::stoul(s_.substr(start, pos_ - start));
  }

  RationalSuperFunction atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto r = expr();
      skip();
      if (pos_ >= s_.size() || s_[pos_] != ')') fail("missing ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return RationalSuperFunction::constant(table_, Rational(s_.substr(start, pos_ - start)));
    }
    if (at_name_start()) {
      std::string name = read_name();
      auto it = aliases_.find(name);
      if (it != aliases_.end()) name = it->second;
      auto v = table_->find(name);
      if (!v) fail("unknown variable '" + name + "'");
      return RationalSuperFunction(SuperPolynomial::variable(table_, *v));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string read_name() {
    std::size_t start = pos_;
    while (pos_ < s_.size()) {
      unsigned char c = static_cast<unsigned char>(s_[pos_]);
      if (std::isalnum(c) || c >= 0x80)
        ++pos_;
      else
        break;
    }
    // "^digits_{...}" belongs to the name.
    if (pos_ < s_.size() && s_[pos_] == '^') {
      std::size_t p = pos_ + 1;
      while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p;
      if (p > pos_ + 1 && p + 1 < s_.size() && s_[p] == '_' && s_[p + 1] == '{') {
        auto close = s_.find('}', p);
        if (close == std::string::npos) fail("unterminated subscript");
        pos_ = close + 1;
      }
    }
    return s_.substr(start, pos_ - start);
  }

  const std::string& s_;
  VarTablePtr table_;
  const Aliases& aliases_;
  std::size_t pos_ = 0;
};
}  // namespace

RationalSuperFunction parse_function(const std::string& text, const VarTablePtr& table,
                                     const Aliases& aliases) {
  return Parser(text, table, aliases).parse();
}

SuperPolynomial parse_polynomial(const std::string& text, const VarTablePtr& table,
                                 const Aliases& aliases) {
  auto f = parse_function(text, table, aliases);
  auto p = f.regular_part();
  if (!p) throw ParseError("not a polynomial: '" + text + "'");
  return *p;
}

SuperDerivation parse_field(const std::string& text, const VarTablePtr& table, const Aliases& aliases) {
  SuperDerivation out(table);
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    std::string part = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
    start = end == std::string::npos ? text.size() + 1 : end + 1;
    auto first = part.find_first_not_of(" \t\n");
    if (first == std::string::npos) continue;
    auto colon = part.find(':');
    if (colon == std::string::npos) throw ParseError("field component needs 'coord: expr': '" + part + "'");
    std::string name = part.substr(0, colon);
    name.erase(0, name.find_first_not_of(" \t\n"));
    name.erase(name.find_last_not_of(" \t\n") + 1);
    auto it = aliases.find(name);
    if (it != aliases.end()) name = it->second;
    auto v = table->find(name);
    if (!v) throw ParseError("unknown coordinate '" + name + "'");
    out.coeff(table->flat(*v)) += parse_function(part.substr(colon + 1), table, aliases);
  }
  return out;
}

}  // namespace superflag

#include "superflag/flag_atlas.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace superflag {

void FlagType::validate() const {
  if (m < 0 || n < 0) throw AlgebraError("negative superdimension");
  if (k.empty() || k.size() != l.size()) throw AlgebraError("flag needs matching k and l lists");
  int prev_k = m, prev_l = n, prev_sum = m + n;
  for (std::size_t s = 0; s < k.size(); ++s) {
    if (k[s] < 0 || l[s] < 0) throw AlgebraError("negative flag dimension");
    if (k[s] > prev_k || l[s] > prev_l) throw AlgebraError("flag dimensions must decrease");
    int sum = k[s] + l[s];
    if (!(sum < prev_sum)) throw AlgebraError("flag total dimensions must strictly decrease");
    prev_k = k[s];
    prev_l = l[s];
    prev_sum = sum;
  }
  if (prev_sum <= 0) throw AlgebraError("smallest flag member must be nonzero");
}

FlagType FlagType::base() const { return FlagType{m, n, {k.at(0)}, {l.at(0)}}; }

std::size_t FlagType::even_dim() const {
  std::size_t d = 0;
  for (std::size_t s = 1; s <= length(); ++s)
    d += static_cast<std::size_t>((k_at(s - 1) - k_at(s)) * k_at(s) + (l_at(s - 1) - l_at(s)) * l_at(s));
  return d;
}

std::size_t FlagType::odd_dim() const {
  std::size_t d = 0;
  for (std::size_t s = 1; s <= length(); ++s)
    d += static_cast<std::size_t>((k_at(s - 1) - k_at(s)) * l_at(s) + (l_at(s - 1) - l_at(s)) * k_at(s));
  return d;
}

namespace {
std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw AlgebraError("empty number in flag type");
    std::size_t pos = 0;
    int v = std::stoi(item, &pos);
    if (pos != item.size()) throw AlgebraError("bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}
}  // namespace

FlagType FlagType::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  bool gr = s.rfind("Gr(", 0) == 0;
  bool fl = s.rfind("F(", 0) == 0;
  if ((!gr && !fl) || s.back() != ')') throw AlgebraError("space must look like F(m|n; k|l) or Gr(m|n; k|l)");
  std::string body = s.substr(gr ? 3 : 2, s.size() - (gr ? 4 : 3));
  auto semi = body.find(';');
  if (semi == std::string::npos) throw AlgebraError("missing ';' in space");
  std::string dims = body.substr(0, semi), flags = body.substr(semi + 1);
  auto bar1 = dims.find('|'), bar2 = flags.find('|');
  if (bar1 == std::string::npos || bar2 == std::string::npos) throw AlgebraError("missing '|' in space");
  FlagType t;
  try {
    auto mv = parse_ints(dims.substr(0, bar1));
    auto nv = parse_ints(dims.substr(bar1 + 1));
    if (mv.size() != 1 || nv.size() != 1) throw AlgebraError("bad superdimension");
    t.m = mv[0];
    t.n = nv[0];
    t.k = parse_ints(flags.substr(0, bar2));
    t.l = parse_ints(flags.substr(bar2 + 1));
  } catch (const std::invalid_argument&) {
    throw AlgebraError("bad number in space '" + text + "'");
  } catch (const std::out_of_range&) {
    throw AlgebraError("number out of range in space '" + text + "'");
  }
  if (gr && t.k.size() != 1) throw AlgebraError("Gr takes a single k|l");
  t.validate();
  return t;
}

std::string FlagType::to_string() const {
  auto join = [](const std::vector<int>& v) {
    std::string o;
    for (std::size_t i = 0; i < v.size(); ++i) o += (i ? "," : "") + std::to_string(v[i]);
    return o;
  };
  if (k.size() == 1)
    return "Gr(" + std::to_string(m) + "|" + std::to_string(n) + "; " + std::to_string(k[0]) + "|" +
           std::to_string(l[0]) + ")";
  return "F(" + std::to_string(m) + "|" + std::to_string(n) + "; " + join(k) + " | " + join(l) + ")";
}

std::string ChartIndex::to_string() const {
  std::string o;
  for (const auto& lv : levels) {
    o += "{";
    for (std::size_t i = 0; i < lv.even.size(); ++i) o += (i ? "," : "") + std::to_string(lv.even[i] + 1);
    o += "|";
    for (std::size_t i = 0; i < lv.odd.size(); ++i) o += (i ? "," : "") + std::to_string(lv.odd[i] + 1);
    o += "}";
  }
  return o;
}

namespace {
std::vector<std::vector<int>> subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

std::string var_name(Parity row, Parity col, std::size_t level, std::size_t i, std::size_t j) {
  const char* stem = row == Parity::Even ? (col == Parity::Even ? "x" : "ξ") : (col == Parity::Even ? "η" : "y");
  std::string ij = (i < 10 && j < 10) ? std::to_string(i) + std::to_string(j)
                                      : std::to_string(i) + "," + std::to_string(j);
  return std::string(stem) + "^" + std::to_string(level) + "_{" + ij + "}";
}
}  // namespace

std::vector<ChartIndex> enumerate_charts(const FlagType& t) {
  t.validate();
  std::vector<ChartIndex> out{ChartIndex{}};
  for (std::size_t s = 1; s <= t.length(); ++s) {
    auto ev = subsets(t.k_at(s - 1), t.k_at(s));
    auto od = subsets(t.l_at(s - 1), t.l_at(s));
    std::vector<ChartIndex> next;
    for (const auto& base : out)
      for (const auto& e : ev)
        for (const auto& o : od) {
          ChartIndex c = base;
          c.levels.push_back({e, o});
          next.push_back(std::move(c));
        }
    out = std::move(next);
  }
  return out;
}

ChartIndex standard_index(const FlagType& t) {
  ChartIndex idx;
  for (std::size_t s = 1; s <= t.length(); ++s) {
    ChartIndex::Level lv;
    for (int i = t.k_at(s - 1) - t.k_at(s); i < t.k_at(s - 1); ++i) lv.even.push_back(i);
    for (int i = t.l_at(s - 1) - t.l_at(s); i < t.l_at(s - 1); ++i) lv.odd.push_back(i);
    idx.levels.push_back(std::move(lv));
  }
  return idx;
}

Chart make_chart(const FlagType& t, const ChartIndex& idx) {
  t.validate();
  if (idx.levels.size() != t.length()) throw AlgebraError("chart index has wrong length");
  struct Slot {
    std::size_t level, row, col;
    Parity parity;
    std::string name;
  };
  std::vector<Slot> slots;
  for (std::size_t s = 1; s <= t.length(); ++s) {
    const auto& lv = idx.levels[s - 1];
    auto kp = static_cast<std::size_t>(t.k_at(s - 1)), lp = static_cast<std::size_t>(t.l_at(s - 1));
    auto kc = static_cast<std::size_t>(t.k_at(s)), lc = static_cast<std::size_t>(t.l_at(s));
    if (lv.even.size() != kc || lv.odd.size() != lc) throw AlgebraError("chart index has wrong sizes");
    for (std::size_t r = 0; r < kp + lp; ++r) {
      bool is_even_row = r < kp;
      int within = static_cast<int>(is_even_row ? r : r - kp);
      const auto& planted = is_even_row ? lv.even : lv.odd;
      if (std::find(planted.begin(), planted.end(), within) != planted.end()) continue;
      for (std::size_t c = 0; c < kc + lc; ++c) {
        Parity rp = is_even_row ? Parity::Even : Parity::Odd;
        Parity cp = c < kc ? Parity::Even : Parity::Odd;
        std::size_t cj = c < kc ? c : c - kc;
        slots.push_back({s, r, c, rp + cp,
                         var_name(rp, cp, s, static_cast<std::size_t>(within) + 1, cj + 1)});
      }
    }
  }
  std::vector<std::string> even, odd;
  for (const auto& sl : slots) (sl.parity == Parity::Even ? even : odd).push_back(sl.name);
  Chart ch;
  ch.type = t;
  ch.index = idx;
  ch.vars = VarTable::make(even, odd, t.to_string() + " " + idx.to_string());
  ch.level_of.assign(ch.vars->size(), 0);
  ch.position.assign(ch.vars->size(), {0, 0});
  for (std::size_t s = 1; s <= t.length(); ++s) {
    SuperMatrix Z(ch.vars,
                  {static_cast<std::size_t>(t.k_at(s - 1)), static_cast<std::size_t>(t.l_at(s - 1))},
                  {static_cast<std::size_t>(t.k_at(s)), static_cast<std::size_t>(t.l_at(s))});
    const auto& lv = idx.levels[s - 1];
    auto kp = static_cast<std::size_t>(t.k_at(s - 1));
    auto kc = static_cast<std::size_t>(t.k_at(s));
    for (std::size_t j = 0; j < lv.even.size(); ++j)
      Z(static_cast<std::size_t>(lv.even[j]), j) = RationalSuperFunction::constant(ch.vars, 1);
    for (std::size_t j = 0; j < lv.odd.size(); ++j)
      Z(kp + static_cast<std::size_t>(lv.odd[j]), kc + j) = RationalSuperFunction::constant(ch.vars, 1);
    ch.Z.push_back(std::move(Z));
  }
  for (const auto& sl : slots) {
    Variable v = ch.vars->at(sl.name);
    std::size_t f = ch.vars->flat(v);
    ch.level_of[f] = static_cast<int>(sl.level);
    ch.position[f] = {sl.row, sl.col};
    ch.Z[sl.level - 1](sl.row, sl.col) = RationalSuperFunction(SuperPolynomial::variable(ch.vars, v));
  }
  return ch;
}

Chart standard_chart(const FlagType& t) { return make_chart(t, standard_index(t)); }

std::vector<SuperMatrix> act_on_chart(const std::vector<SuperMatrix>& Z, const SuperMatrix* L,
                                      const FlagType& t, const ChartIndex& J) {
  std::vector<SuperMatrix> out;
  SuperMatrix prevC;
  for (std::size_t s = 1; s <= t.length(); ++s) {
    SuperMatrix W = s == 1 ? (L ? mat_mul(*L, Z[0]) : Z[0]) : mat_mul(prevC, Z[s - 1]);
    std::vector<std::size_t> ev, od;
    for (int i : J.levels[s - 1].even) ev.push_back(static_cast<std::size_t>(i));
    for (int i : J.levels[s - 1].odd) od.push_back(static_cast<std::size_t>(i));
    SuperMatrix C = mat_rows(W, ev, od);
    out.push_back(mat_mul(W, mat_inverse(C)));
    prevC = std::move(C);
  }
  return out;
}

std::vector<RationalSuperFunction> transition(const Chart& from, const Chart& to) {
  if (!(from.type == to.type)) throw AlgebraError("transition between different flag types");
  auto Zs = act_on_chart(from.Z, nullptr, from.type, to.index);
  // Planted identity entries must come out exactly.
  for (std::size_t s = 0; s < Zs.size(); ++s) {
    const auto& target = to.Z[s];
    for (std::size_t i = 0; i < target.rows(); ++i)
      for (std::size_t j = 0; j < target.cols(); ++j) {
        const auto& e = target(i, j);
        bool is_var = !e.is_zero() && !e.num().is_constant();
        if (is_var) continue;
        if (!(Zs[s](i, j) == RationalSuperFunction::constant(from.vars, e.num().constant_term())))
          throw AlgebraError("transition: planted entry is not 0/1");
      }
  }
  std::vector<RationalSuperFunction> images;
  images.reserve(to.vars->size());
  for (std::size_t f = 0; f < to.vars->size(); ++f) {
    auto [r, c] = to.position[f];
    images.push_back(Zs[static_cast<std::size_t>(to.level_of[f] - 1)](r, c));
  }
  return images;
}

std::vector<RationalSuperFunction> compose(const std::vector<RationalSuperFunction>& outer,
                                           const std::vector<RationalSuperFunction>& inner) {
  std::vector<RationalSuperFunction> out;
  out.reserve(outer.size());
  for (const auto& f : outer) out.push_back(f.substitute(inner));
  return out;
}

Atlas::Atlas(FlagType t) : type_(std::move(t)) {
  indices_ = enumerate_charts(type_);
  standard_ = find(standard_index(type_));
  charts_.resize(indices_.size());
}

std::size_t Atlas::find(const ChartIndex& idx) const {
  auto it = std::find(indices_.begin(), indices_.end(), idx);
  if (it == indices_.end()) throw AlgebraError("chart index not in atlas");
  return static_cast<std::size_t>(it - indices_.begin());
}

const Chart& Atlas::chart(std::size_t i) const {
  std::lock_guard<std::mutex> lock(mu_);
  if (!charts_.at(i)) charts_[i] = std::make_unique<Chart>(make_chart(type_, indices_[i]));
  return *charts_[i];
}

const std::vector<RationalSuperFunction>& Atlas::transition(std::size_t from, std::size_t to) const {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find({from, to});
    if (it != cache_.end()) return it->second;
  }
  const Chart& a = chart(from);
  const Chart& b = chart(to);
  std::vector<RationalSuperFunction> images;
  if (from == to) {
    for (std::size_t f = 0; f < a.vars->size(); ++f)
      images.emplace_back(SuperPolynomial::variable(a.vars, a.vars->var(f)));
  } else {
    try {
      images = superflag::transition(a, b);
    } catch (const AlgebraError&) {
      bool done = false;
      for (std::size_t k = 0; k < size() && !done; ++k) {
        if (k == from || k == to) continue;
        try {
          auto first = superflag::transition(a, chart(k));
          auto second = superflag::transition(chart(k), b);
          images = compose(second, first);
          done = true;
        } catch (const AlgebraError&) {
        }
      }
      if (!done)
        throw AlgebraError("no transition from chart " + indices_[from].to_string() + " to " +
                           indices_[to].to_string());
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = cache_.emplace(std::make_pair(from, to), std::move(images));
  return it->second;
}

}  // namespace superflag

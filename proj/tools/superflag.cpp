// Command-line front end: dimensions, functions, kernels, projections, lifts,
// invariant suites and the section table.

#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>

#include "superflag/global_solver.hpp"
#include "superflag/parse.hpp"
#include "superflag/verify.hpp"
#include "superflag/weights.hpp"

using namespace superflag;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kUnstable = 3 };

struct Common {
  std::string space;
  int degree = 2;
  std::string format = "text";
  std::uint64_t seed = 20240611;
  bool parallel = false;
  bool json() const { return format == "json"; }
};

FlagType parse_space(const std::string& s) {
  try {
    return FlagType::parse(s);
  } catch (const std::exception& e) {
    throw CLI::ValidationError("--space", e.what());
  }
}

int cmd_dim(const Common& c, bool basis) {
  SolveOptions o;
  o.parallel = c.parallel;
  auto r = solve_global_fields(parse_space(c.space), c.degree, o);
  if (c.json()) {
    std::cout << r.to_json() << "\n";
  } else {
    std::cout << r.to_text();
    if (basis)
      for (const auto& b : r.basis) std::cout << "  " << b << "\n";
  }
  return r.stabilized ? kOk : kUnstable;
}

int cmd_functions(const Common& c) {
  SolveOptions o;
  o.parallel = c.parallel;
  auto r = solve_global_functions(parse_space(c.space), c.degree, o);
  if (c.json()) {
    std::cout << r.to_json() << "\n";
  } else {
    std::cout << r.to_text();
    for (const auto& b : r.basis) std::cout << "  " << b << "\n";
  }
  return r.stabilized ? kOk : kUnstable;
}

int cmd_kernel(const Common& c) {
  auto t = parse_space(c.space);
  auto ker = mu_kernel(t);
  std::size_t N = static_cast<std::size_t>((t.m + t.n) * (t.m + t.n));
  if (c.json()) {
    json j;
    j["space"] = t.to_string();
    j["rank"] = N - ker.size();
    j["kernel"] = json::array();
    for (const auto& k : ker) j["kernel"].push_back(k.to_string());
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "space: " << t.to_string() << "\nrank μ: " << N - ker.size() << "\nkernel:\n";
    for (const auto& k : ker) std::cout << "  " << k.to_string() << "\n";
  }
  return kOk;
}

int cmd_project(const Common& c, const std::string& field) {
  auto t = parse_space(c.space);
  if (t.length() < 2) throw CLI::ValidationError("--space", "project needs a flag of length >= 2");
  Chart S = standard_chart(t);
  auto v = parse_field(field, S.vars);
  auto p = project(v, S);
  if (c.json()) {
    json j;
    j["space"] = t.to_string();
    j["projectable"] = p.projectable;
    if (p.projectable)
      j["base"] = p.base.to_text();
    else
      j["offending"] = p.offending;
    std::cout << j.dump(2) << "\n";
  } else if (p.projectable) {
    std::cout << "projectable\nbase field: " << (p.base.is_zero() ? "0" : p.base.to_string()) << "\n";
  } else {
    std::cout << "not projectable: coefficient of ∂/∂" << p.offending << " leaves the base\n";
  }
  return kOk;
}

int cmd_lift(const Common& c, const std::string& field) {
  auto t = parse_space(c.space);
  if (t.length() < 2) throw CLI::ValidationError("--space", "lift needs a flag of length >= 2");
  Chart B = standard_chart(t.base());
  auto w = field.empty() ? SuperDerivation(B.vars) : parse_field(field, B.vars);
  auto r = lift_query(w, t, c.degree);
  if (c.json()) {
    json j;
    j["space"] = t.to_string();
    j["feasible"] = r.feasible;
    if (r.witness) j["witness"] = r.witness->to_text();
    j["vertical_dimension"] = r.vertical_space.size();
    j["certificate"] = json::array();
    for (const auto& cond : r.certificate) j["certificate"].push_back({{"source", cond.source}, {"equation", cond.equation}});
    j["rules"] = json::array();
    for (const auto& rule : r.rules)
      j["rules"].push_back({{"unknown", rule.unknown}, {"coordinate", rule.coordinate}, {"var", rule.var},
                            {"rhs", rule.rhs.to_string()}});
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << r.to_text();
  }
  return kOk;
}

int cmd_verify(const Common& c, const std::string& suite) {
  VerifyOptions o;
  if (!c.space.empty()) o.space = parse_space(c.space);
  o.seed = c.seed;
  o.degree = c.degree;
  o.parallel = c.parallel;
  auto r = run_suite(suite, o);
  std::cout << (c.json() ? r.to_json() + "\n" : r.to_text());
  return r.passed() ? kOk : kFail;
}

int cmd_table(const Common& c, std::size_t max_m, std::size_t max_n, const std::vector<std::size_t>& row) {
  std::vector<SectionRow> rows;
  if (!row.empty()) {
    if (row.size() != 4) throw CLI::ValidationError("--row", "expects m,n,k1,l1");
    auto r = section_row(row[0], row[1], row[2], row[3]);
    if (!r) throw CLI::ValidationError("--row", "need k1 <= m and l1 <= n");
    rows.push_back(*r);
  } else {
    rows = section_table(max_m, max_n);
  }
  auto names = [](const std::vector<Weight>& ws) {
    std::vector<std::string> s;
    for (const auto& w : ws) s.push_back(w.to_string());
    return s;
  };
  bool all = true;
  if (c.json()) {
    json j = json::array();
    for (const auto& r : rows) {
      j.push_back({{"m", r.m}, {"n", r.n}, {"k1", r.k1}, {"l1", r.l1}, {"cases", r.cases},
                   {"conflict", r.conflict}, {"dimension", r.computed.dimension.get_str()},
                   {"survivors", names(r.computed.survivors)}, {"agrees", r.agrees()}});
      all = all && (r.cases.empty() || r.agrees());
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "m n k1 l1 | case | dim | highest weights\n";
    for (const auto& r : rows) {
      std::string cases;
      for (int k : r.cases) cases += (cases.empty() ? "" : ",") + std::to_string(k);
      std::string mods;
      for (const auto& w : r.computed.survivors) mods += (mods.empty() ? "" : ", ") + w.to_string();
      std::cout << r.m << " " << r.n << " " << r.k1 << "  " << r.l1 << "  | " << (cases.empty() ? "-" : cases)
                << (r.conflict ? " (conflict)" : "") << " | " << r.computed.dimension.get_str() << " | "
                << (mods.empty() ? "{0}" : mods) << (r.cases.empty() || r.agrees() ? "" : "   MISMATCH") << "\n";
      all = all && (r.cases.empty() || r.agrees());
    }
  }
  return all ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact symbolic engine for gl(m|n) flag supermanifolds"};
  app.require_subcommand(1);
  Common c;
  auto add_common = [&](CLI::App* s, bool needs_space) {
    auto* opt = s->add_option("--space", c.space, "flag type, e.g. \"F(2|2; 1,1|2,1)\" or \"Gr(2|2; 1|1)\"");
    if (needs_space) opt->required();
    s->add_option("--degree", c.degree, "ansatz degree bound")->check(CLI::NonNegativeNumber);
    s->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    s->add_option("--seed", c.seed, "seed for randomized checks");
    s->add_flag("--parallel", c.parallel, "generate constraints in parallel per chart");
  };
  bool basis = false;
  std::string field, suite;
  std::size_t max_m = 4, max_n = 4;
  std::vector<std::size_t> row;

  auto* dim = app.add_subcommand("dim", "dimension of the global vector fields");
  add_common(dim, true);
  dim->add_flag("--basis", basis, "print the basis");
  auto* fun = app.add_subcommand("functions", "global holomorphic functions");
  add_common(fun, true);
  auto* ker = app.add_subcommand("kernel", "kernel of the fundamental-field map");
  add_common(ker, true);
  auto* prj = app.add_subcommand("project", "project a field on a flag to the base Grassmannian");
  add_common(prj, true);
  prj->add_option("--field", field, "\"coord: expr; ...\" on the standard chart")->required();
  auto* lft = app.add_subcommand("lift", "lift a base field to a global field on the flag");
  add_common(lft, true);
  lft->add_option("--field", field, "\"coord: expr; ...\" on the base standard chart (empty: zero field)");
  auto* ver = app.add_subcommand("verify", "run an invariant suite");
  add_common(ver, false);
  ver->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  auto* tab = app.add_subcommand("table", "section dimensions of the zero-degree bundle");
  add_common(tab, false);
  tab->add_option("--max-m", max_m, "largest m")->check(CLI::Range(1, 6));
  tab->add_option("--max-n", max_n, "largest n")->check(CLI::Range(1, 6));
  tab->add_option("--row", row, "single row m,n,k1,l1")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
  try {
    if (*dim) return cmd_dim(c, basis);
    if (*fun) return cmd_functions(c);
    if (*ker) return cmd_kernel(c);
    if (*prj) return cmd_project(c, field);
    if (*lft) return cmd_lift(c, field);
    if (*ver) return cmd_verify(c, suite);
    if (*tab) return cmd_table(c, max_m, max_n, row);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "superflag/global_solver.hpp"
#include "superflag/parse.hpp"
#include "superflag/verify.hpp"
#include "superflag/weights.hpp"

namespace py = pybind11;
using namespace superflag;

namespace {

py::dict report_dict(const SolveReport& r) {
  py::dict d;
  d["space"] = r.space;
  d["degree"] = r.degree;
  d["dimension"] = r.dimension;
  d["stabilized"] = r.stabilized;
  d["dimension_next"] = r.dimension_next;
  d["basis"] = r.basis;
  return d;
}

SolveOptions options(bool parallel) {
  SolveOptions o;
  o.parallel = parallel;
  return o;
}

py::dict lift(const std::string& space, const std::string& field, int degree) {
  auto t = FlagType::parse(space);
  Chart B = standard_chart(t.base());
  auto w = field.empty() ? SuperDerivation(B.vars) : parse_field(field, B.vars);
  auto r = lift_query(w, t, degree);
  py::dict d;
  d["feasible"] = r.feasible;
  d["witness"] = r.witness ? py::cast(r.witness->to_text()) : py::none();
  d["vertical_dimension"] = r.vertical_space.size();
  py::list cert;
  for (const auto& c : r.certificate) cert.append(py::make_tuple(c.source, c.equation));
  d["certificate"] = cert;
  d["text"] = r.to_text();
  return d;
}

py::dict project_field(const std::string& space, const std::string& field) {
  auto t = FlagType::parse(space);
  Chart S = standard_chart(t);
  auto p = project(parse_field(field, S.vars), S);
  py::dict d;
  d["projectable"] = p.projectable;
  if (p.projectable)
    d["base"] = p.base.to_text();
  else
    d["offending"] = p.offending;
  return d;
}

py::dict verify(const std::string& suite, std::uint64_t seed) {
  VerifyOptions o;
  o.seed = seed;
  auto r = run_suite(suite, o);
  py::list checks;
  for (const auto& c : r.checks) {
    py::dict d;
    d["name"] = c.name;
    d["pass"] = c.pass;
    d["informational"] = c.informational;
    d["detail"] = c.detail;
    checks.append(d);
  }
  py::dict d;
  d["suite"] = r.suite;
  d["passed"] = r.passed();
  d["checks"] = checks;
  return d;
}

}  // namespace

PYBIND11_MODULE(_superflag, m) {
  m.doc() = "Global vector fields on gl(m|n) flag supermanifolds";
  m.def("dim", [](const std::string& s, int degree, bool parallel) {
    return report_dict(solve_global_fields(FlagType::parse(s), degree, options(parallel)));
  }, py::arg("space"), py::arg("degree") = 2, py::arg("parallel") = false);
  m.def("functions", [](const std::string& s, int degree) {
    return report_dict(solve_global_functions(FlagType::parse(s), degree));
  }, py::arg("space"), py::arg("degree") = 2);
  m.def("kernel", [](const std::string& s) {
    std::vector<std::string> out;
    for (const auto& k : mu_kernel(FlagType::parse(s))) out.push_back(k.to_string());
    return out;
  }, py::arg("space"));
  m.def("project", &project_field, py::arg("space"), py::arg("field"));
  m.def("lift", &lift, py::arg("space"), py::arg("field") = "", py::arg("degree") = 2);
  m.def("verify", &verify, py::arg("suite"), py::arg("seed") = VerifyOptions{}.seed);
  m.def("suites", &suite_names);
  m.def("weyl_dim", [](const std::vector<long>& mu, const std::vector<long>& lambda) {
    return weyl_dim(Weight{mu, lambda}).get_str();
  }, py::arg("mu"), py::arg("lambda_") = std::vector<long>{});
  m.def("section", [](std::size_t mm, std::size_t n, std::size_t k1, std::size_t l1) {
    auto r = section_row(mm, n, k1, l1);
    if (!r) throw py::value_error("need k1 <= m and l1 <= n");
    std::vector<std::string> surv;
    for (const auto& w : r->computed.survivors) surv.push_back(w.to_string());
    py::dict d;
    d["dimension"] = r->computed.dimension.get_str();
    d["survivors"] = surv;
    d["cases"] = r->cases;
    return d;
  }, py::arg("m"), py::arg("n"), py::arg("k1"), py::arg("l1"));
}

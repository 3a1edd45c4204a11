#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "k3disc/errors.hpp"
#include "k3disc/family.hpp"
#include "k3disc/kodaira.hpp"
#include "k3disc/lattice.hpp"
#include "k3disc/verify.hpp"

namespace py = pybind11;
using namespace k3disc;

namespace {

/// Values cross the boundary as decimal strings so big integers and rationals survive.
nlohmann::json point_json(const std::map<std::string, std::string>& point) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : point) j[k] = v;
  return j;
}

std::string scan_json(const std::map<std::string, std::string>& point, std::uint64_t prime) {
  auto j = point_json(point);
  if (prime == 0) {
    auto pt = point_from_json(j, RationalField{});
    auto wd = weierstrass(pt);
    auto out = scan_to_json(scan_fibers(wd), RationalField{});
    out["k"] = k_value(wd).get_str();
    out["r"] = r_value(wd).get_str();
    return out.dump();
  }
  if (!is_prime_u64(prime)) throw UsageError("prime must be prime (or 0 for the rationals)");
  PrimeField f(prime);
  auto pt = point_from_json(j, f);
  auto wd = weierstrass(pt);
  auto out = scan_to_json(scan_fibers(wd), f);
  out["k"] = f.format(k_value(wd));
  out["r"] = f.format(r_value(wd));
  return out.dump();
}

std::string run_json(const std::vector<std::string>& names, std::uint64_t seed, std::uint64_t prime, std::optional<int> trials,
                     std::optional<std::vector<int>> slice, const std::map<std::string, std::int64_t>& params, unsigned jobs) {
  RunOptions o;
  o.check.seed = seed;
  o.check.prime = prime;
  o.check.trials = trials;
  o.check.slice = std::move(slice);
  o.check.params = params;
  o.jobs = jobs;
  py::gil_scoped_release release;
  return report_to_json(run_checks(names, o)).dump();
}

py::dict invariants(int nodes, const std::vector<std::pair<int, int>>& edges) {
  auto inv = lattice_invariants(gram_from_diagram(DynkinDiagram{nodes, edges}));
  py::dict d;
  d["determinant"] = py::int_(py::str(inv.determinant.get_str()));
  d["signature"] = py::make_tuple(inv.positive, inv.negative);
  d["radical"] = inv.radical;
  d["even"] = inv.even;
  return d;
}

std::string canonical_poly(const std::string& text, std::vector<std::string> vars) {
  if (vars.empty()) vars = scan_identifiers(text);
  return to_string(parse_poly(make_ring(RationalField{}, vars), text));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact polynomial and lattice computations for the weighted elliptic K3 family";

  // translators run most-recent-first, so the subclasses shadow the base
  auto& base = py::register_exception<Error>(m, "Error");
  py::register_exception<UsageError>(m, "UsageError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<InvalidDiagramError>(m, "InvalidDiagramError", base.ptr());
  py::register_exception<InconsistentOrdersError>(m, "InconsistentOrdersError", base.ptr());

  m.attr("__version__") = library_version();
  m.attr("DEFAULT_PRIME") = kDefaultPrime;
  m.attr("PARAMETER_WEIGHTS") = std::vector<int>(kParameterWeights.begin(), kParameterWeights.end());

  m.def("check_names", &check_names, "Registered verification checks, in report order");
  m.def("run_checks_json", &run_json, py::arg("names"), py::arg("seed") = 20240601, py::arg("prime") = kDefaultPrime,
        py::arg("trials") = py::none(), py::arg("slice") = py::none(), py::arg("params") = std::map<std::string, std::int64_t>{},
        py::arg("jobs") = 1, "Run checks and return the JSON report as text");
  m.def("scan_json", &scan_json, py::arg("point"), py::arg("prime") = 0, "Kodaira scan of a family point (prime 0 = rationals)");
  m.def(
      "classify",
      [](int a, int b, int d) { return classify({a, b, d}).name(); }, py::arg("a"), py::arg("b"), py::arg("d"),
      "Kodaira type from (ord g2, ord g3, ord Delta)");
  m.def("lattice_invariants", &invariants, py::arg("nodes"), py::arg("edges"), "Determinant, signature and parity of a diagram's Gram matrix");
  m.def(
      "t237_edges", [] { return t237_diagram().edges; }, "Edge list of the T_{2,3,7} diagram (10 nodes)");
  m.def("canonical_poly", &canonical_poly, py::arg("text"), py::arg("vars") = std::vector<std::string>{},
        "Parse polynomial text over Q and print its canonical form");
}

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "k3disc/errors.hpp"
#include "k3disc/family.hpp"
#include "k3disc/kodaira.hpp"
#include "k3disc/verify.hpp"

using namespace k3disc;
using json = nlohmann::ordered_json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text << "\n";
}

std::vector<std::string> split_names(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

/// Polynomial text -> {"vars": [...], "terms": [[exponents], "coefficient"], ...}.
json poly_to_json(const MultiPoly<RationalField>& p) {
  json terms = json::array();
  for (const auto& t : p.terms()) {
    json exps = json::array();
    for (std::size_t i = 0; i < p.ring()->nvars(); ++i) exps.push_back(t.mono[i]);
    terms.push_back(json::array({exps, t.coeff.get_str()}));
  }
  return json{{"vars", p.ring()->names()}, {"terms", terms}};
}

MultiPoly<RationalField> poly_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("vars") || !j.contains("terms")) throw ParseError("expected an object with 'vars' and 'terms'");
  auto ring = make_ring(RationalField{}, j["vars"].get<std::vector<std::string>>());
  std::vector<MultiPoly<RationalField>::Term> terms;
  for (const auto& t : j["terms"]) {
    if (!t.is_array() || t.size() != 2) throw ParseError("each term is [exponents, coefficient]");
    auto exps = t[0].get<std::vector<std::uint32_t>>();
    if (exps.size() != ring->nvars()) throw ParseError("exponent vector has the wrong length");
    Monomial m;
    for (std::size_t i = 0; i < exps.size(); ++i) m.set(i, exps[i]);
    mpq_class c = t[1].is_string() ? RationalField{}.parse(t[1].get<std::string>()) : mpq_class(t[1].get<long>());
    terms.push_back({m, c});
  }
  return MultiPoly<RationalField>::from_terms(ring, std::move(terms));
}

template <class D>
json scan_report(const FamilyPoint<D>& pt, const std::string& field) {
  auto wd = weierstrass(pt);
  const D& dom = pt.domain;
  json out{{"field", field}, {"point", point_to_json(pt)}};
  out["g2"] = json::array();
  for (const auto& c : wd.g2.coeffs()) out["g2"].push_back(dom.format(c));
  out["g3"] = json::array();
  for (const auto& c : wd.g3.coeffs()) out["g3"].push_back(dom.format(c));
  out["k"] = dom.format(k_value(wd));
  out["r"] = dom.format(r_value(wd));
  json nonrdp = json::array();
  for (const auto& p : detect_nonrdp(wd)) nonrdp.push_back(json{{"u", dom.format(p.u0)}, {"ord_g2", p.ord_g2}, {"ord_g3", p.ord_g3}});
  out["nonrdp"] = nonrdp;
  out["fibers"] = scan_to_json(scan_fibers(wd), dom);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification tool for the weighted elliptic K3 discriminant computations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", library_version());
  app.set_config("--config", "", "TOML/INI file with option values, e.g. a [verify] section with seed = 5");

  auto* list = app.add_subcommand("list-checks", "List the registered verification checks");

  auto* verify = app.add_subcommand("verify", "Run verification checks and write a JSON report");
  std::vector<std::string> names;
  RunOptions run;
  std::string slice_text, out_path;
  std::vector<std::string> params;
  int trials = 0;
  verify->add_option("checks", names, "Check names, or 'all'")->required();
  verify->add_option("--seed", run.check.seed, "Random seed")->capture_default_str();
  verify->add_option("--prime", run.check.prime, "Prime for modular checks")->capture_default_str();
  verify->add_option("--slice", slice_text, "Parameter weights of the symbolic slice, e.g. 4,28,42");
  verify->add_option("--trials", trials, "Override the per-check trial count");
  verify->add_option("--param", params, "Check parameter key=value (e.g. n=3 m=2 for lemma-order)");
  verify->add_option("--out", out_path, "Write the report here instead of standard output");
  verify->add_option("--jobs", run.jobs, "Worker threads")->capture_default_str();
  verify->add_flag("--timings", run.timings, "Record wall-clock millis (makes reports non-reproducible)");


  auto* poly = app.add_subcommand("poly", "Convert polynomials between text and JSON term lists");
  poly->require_subcommand(1);
  std::string poly_file, vars_text;
  auto* parse = poly->add_subcommand("parse", "Polynomial text file -> JSON term list");
  parse->add_option("file", poly_file, "Input file ('-' for standard input)")->required();
  parse->add_option("--vars", vars_text, "Variable order, comma separated (default: order of appearance)");
  auto* print = poly->add_subcommand("print", "JSON term list -> canonical polynomial text");
  print->add_option("file", poly_file, "Input file ('-' for standard input)")->required();

  auto* scan = app.add_subcommand("scan", "Kodaira fibers, k and r at a family point");
  std::string point_path;
  std::uint64_t scan_prime = 0;
  scan->add_option("--t", point_path, "JSON point {\"t4\": ..., ..., \"t42\": ...}")->required();
  scan->add_option("--prime", scan_prime, "Prime field; 0 computes over the rationals")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  auto slurp = [](const std::string& path) {
    if (path == "-") {
      std::ostringstream ss;
      ss << std::cin.rdbuf();
      return ss.str();
    }
    return read_file(path);
  };

  try {
    if (*list) {
      for (const auto& c : check_registry()) {
        std::cout << c.name;
        if (!c.params.empty()) {
          std::cout << " [";
          for (std::size_t i = 0; i < c.params.size(); ++i) std::cout << (i ? ", " : "") << c.params[i];
          std::cout << "]";
        }
        std::cout << "\t" << c.description << "\n";
      }
      return 0;
    }
    if (*verify) {
      if (!slice_text.empty()) run.check.slice = parse_slice(slice_text);
      if (verify->count("--trials")) run.check.trials = trials;
      for (const auto& p : params) {
        auto eq = p.find('=');
        if (eq == std::string::npos) throw UsageError("--param expects key=value, got '" + p + "'");
        try {
          run.check.params[p.substr(0, eq)] = std::stoll(p.substr(eq + 1));
        } catch (const std::logic_error&) {
          throw UsageError("--param value must be an integer, got '" + p + "'");
        }
      }
      auto report = run_checks(names, run);
      write_output(out_path, report_to_json(report).dump(2));
      for (const auto& c : report.checks) std::cerr << status_name(c.status) << "\t" << c.name << "\n";
      return report.all_passed() ? 0 : 1;
    }
    if (*parse) {
      auto text = slurp(poly_file);
      while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.pop_back();
      auto vars = vars_text.empty() ? scan_identifiers(text) : split_names(vars_text);
      auto p = parse_poly(make_ring(RationalField{}, vars), text);
      std::cout << poly_to_json(p).dump() << "\n";
      return 0;
    }
    if (*print) {
      auto p = poly_from_json(nlohmann::json::parse(slurp(poly_file)));
      std::cout << to_string(p) << "\n";
      return 0;
    }
    if (*scan) {
      auto j = nlohmann::json::parse(read_file(point_path));
      json out;
      if (scan_prime == 0) {
        out = scan_report(point_from_json(j, RationalField{}), "Q");
      } else {
        if (!is_prime_u64(scan_prime)) throw UsageError("--prime must be prime (or 0 for the rationals)");
        PrimeField f(scan_prime);
        out = scan_report(point_from_json(j, f), "F_" + std::to_string(scan_prime));
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid JSON: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

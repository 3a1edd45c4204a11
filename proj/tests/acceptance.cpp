/// Acceptance runner: one PASS/FAIL line per criterion, exit code 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "k3disc/verify.hpp"

using namespace k3disc;

namespace {

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;
  std::function<std::string()> run;  // empty string on success, otherwise the reason
};

std::string run_check(const std::string& name, CheckOptions o = {}) {
  RunOptions opts;
  opts.check = std::move(o);
  auto report = run_checks({name}, opts);
  const auto& c = report.checks.at(0);
  if (c.status == CheckStatus::pass) return {};
  return status_name(c.status) + ": " + nlohmann::ordered_json(c.witnesses).dump();
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "slice factorization k = r^3 * Delta, multiplicity exactly 3", 60, [] { return run_check("slice-factorization"); }},
      {2, "univariate restriction divisibility mod p (free t4 and t10)", 120, [] { return run_check("univariate-divisibility"); }},
      {3, "scaling-degree probes 1092 / 196, h of degree 84 and 14", 10, [] { return run_check("scaling-probes"); }},
      {4, "local discriminant orders: 3 for 4x^3 + 27(x + c)^2, n(m - 1) for branch collisions", 30, [] { return run_check("lemma-order"); }},
      {5, "non-RDP parametrization over Q and F_p (100 each)", 10, [] { return run_check("nonrdp-param"); }},
      {6, "Kodaira suite: II* at infinity (1000 points), I2 on D1, II on D2, Euler sum 24", 60, [] { return run_check("kodaira"); }},
      {7, "T_{2,3,7}: det -1, signature (1, 9), even, stable under 20 basis changes", 5, [] { return run_check("lattice"); }},
      {8, "degree ledger 242, 10, 1092, 504", 1, [] { return run_check("degree-ledger"); }},
      {9, "full suite twice under one seed gives byte-identical reports", 600,
       [] {
         RunOptions opts;
         opts.jobs = 4;
         auto first = report_to_json(run_checks({"all"}, opts)).dump();
         opts.jobs = 1;
         auto second = report_to_json(run_checks({"all"}, opts)).dump();
         if (first != second) return std::string("reports differ");
         return std::string();
       }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string reason;
    try {
      reason = c.run();
    } catch (const std::exception& e) {
      reason = std::string("error: ") + e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (reason.empty() && seconds > c.budget_seconds) reason = "over the runtime budget of " + std::to_string(c.budget_seconds) + " s";
    const bool ok = reason.empty();
    failed += !ok;
    std::printf("criterion %d: %s  %s (%.2f s)\n", c.id, ok ? "PASS" : "FAIL", c.title, seconds);
    if (!ok) std::printf("    %s\n", reason.c_str());
  }
  return failed == 0 ? 0 : 1;
}

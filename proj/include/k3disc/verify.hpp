#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "k3disc/modular.hpp"

namespace k3disc {

enum class CheckStatus { pass, fail, inconclusive };

std::string status_name(CheckStatus s);

/// Parameters shared by every check; each check reads what it needs.
struct CheckOptions {
  std::uint64_t seed = 20240601;
  std::uint64_t prime = kDefaultPrime;
  std::optional<std::vector<int>> slice;  // parameter weights of a symbolic slice
  std::optional<int> trials;              // overrides the per-check default
  std::map<std::string, std::int64_t> params;  // check-specific, e.g. n and m for lemma-order
};

/// A discrepancy between a printed formula and the verified construction.
struct Erratum {
  std::string id;
  std::string summary;
  nlohmann::ordered_json evidence;
};

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  nlohmann::ordered_json witnesses = nlohmann::ordered_json::object();
  std::vector<Erratum> errata;
  double millis = 0;
};

/// Collects witnesses while a check runs. A failed expectation marks the
/// check failed and stores its evidence under witnesses.failures.
class CheckRecorder {
 public:
  CheckRecorder(std::string name, std::uint64_t seed);

  std::mt19937_64& rng() { return rng_; }
  nlohmann::ordered_json& witness(const std::string& key) { return result_.witnesses[key]; }

  bool expect(bool ok, const std::string& what, nlohmann::ordered_json evidence = nullptr);
  void inconclusive(const std::string& why, nlohmann::ordered_json evidence = nullptr);
  void erratum(std::string id, std::string summary, nlohmann::ordered_json evidence);

  CheckResult finish() &&;

 private:
  CheckResult result_;
  std::mt19937_64 rng_;
};

struct CheckSpec {
  std::string name;
  std::string description;
  std::vector<std::string> params;  // accepted keys of CheckOptions::params
  std::function<void(const CheckOptions&, CheckRecorder&)> run;
};

/// The static registry, in report order.
const std::vector<CheckSpec>& check_registry();
std::vector<std::string> check_names();

/// Per-check generator seed derived from the global seed and the check name.
std::uint64_t check_seed(std::uint64_t seed, const std::string& name);

struct RunOptions {
  CheckOptions check;
  unsigned jobs = 1;
  bool timings = false;  // report wall-clock millis (otherwise 0, for reproducibility)
};

struct VerificationReport {
  std::uint64_t seed = 0;
  std::uint64_t prime = 0;
  std::string version;
  std::vector<CheckResult> checks;

  bool all_passed() const;
};

/// Runs the named checks ("all" selects the registry). Unknown names, bad
/// parameters and unusable primes raise UsageError before anything runs;
/// errors inside a check turn into a failure carrying the error text.
VerificationReport run_checks(const std::vector<std::string>& names, const RunOptions& opts);

nlohmann::ordered_json report_to_json(const VerificationReport& report);

/// One arithmetic identity of the degree bookkeeping.
struct LedgerEntry {
  std::string identity;
  std::int64_t lhs;
  std::int64_t rhs;
  bool holds() const { return lhs == rhs; }
};

std::vector<LedgerEntry> degree_ledger();

std::string library_version();

}  // namespace k3disc

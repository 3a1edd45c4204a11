#include <gtest/gtest.h>

#include <set>

#include "k3disc/errors.hpp"
#include "k3disc/verify.hpp"

using namespace k3disc;

namespace {

CheckResult run_one(const std::string& name, CheckOptions o = {}) {
  RunOptions opts;
  opts.check = std::move(o);
  auto report = run_checks({name}, opts);
  EXPECT_EQ(report.checks.size(), 1u);
  return report.checks.at(0);
}

std::string dump(const CheckResult& c) { return nlohmann::ordered_json(c.witnesses).dump(2); }

}  // namespace

class EveryCheck : public ::testing::TestWithParam<std::string> {};

TEST_P(EveryCheck, PassesWithDefaults) {
  auto c = run_one(GetParam());
  EXPECT_EQ(c.status, CheckStatus::pass) << dump(c);
}

INSTANTIATE_TEST_SUITE_P(Registry, EveryCheck, ::testing::ValuesIn(check_names()),
                         [](const auto& info) {
                           std::string n = info.param;
                           std::replace(n.begin(), n.end(), '-', '_');
                           return n;
                         });

TEST(Registry, NamesAreUnique) {
  auto names = check_names();
  EXPECT_EQ(std::set<std::string>(names.begin(), names.end()).size(), names.size());
  EXPECT_EQ(names.size(), 10u);
}

TEST(Registry, UnknownCheckIsUsageError) {
  EXPECT_THROW(run_checks({"unknown"}, {}), UsageError);
  EXPECT_THROW(run_checks({}, {}), UsageError);
}

TEST(Registry, BadOptionsAreUsageErrors) {
  RunOptions o;
  o.check.prime = 1000003 * 3ULL;
  EXPECT_THROW(run_checks({"degree-ledger"}, o), UsageError);
  o.check.prime = 101;
  EXPECT_THROW(run_checks({"degree-ledger"}, o), UsageError);
  o = {};
  o.check.params["n"] = 3;
  EXPECT_THROW(run_checks({"degree-ledger"}, o), UsageError);  // parameter not taken by the check
  o.check.params["m"] = 4;
  EXPECT_THROW(run_checks({"lemma-order"}, o), UsageError);  // m > n
  o = {};
  o.check.trials = 0;
  EXPECT_THROW(run_checks({"lattice"}, o), UsageError);
  o = {};
  o.check.slice = std::vector<int>{4, 40};
  EXPECT_THROW(run_checks({"slice-factorization"}, o), UsageError);
}

TEST(DegreeLedger, Witnesses) {
  for (const auto& e : degree_ledger()) EXPECT_TRUE(e.holds()) << e.identity;
  auto c = run_one("degree-ledger");
  ASSERT_EQ(c.status, CheckStatus::pass);
  std::set<std::int64_t> values;
  for (const auto& [key, v] : c.witnesses["degrees"].items()) values.insert(v.get<std::int64_t>());
  EXPECT_EQ(values, (std::set<std::int64_t>{242, 504, 10, 1092, 196, 84, 14}));
}

TEST(LocalDiscriminantOrder, SinglePair) {
  CheckOptions o;
  o.params = {{"n", 3}, {"m", 2}};
  auto c = run_one("lemma-order", o);
  EXPECT_EQ(c.status, CheckStatus::pass);
  EXPECT_EQ(c.witnesses["order"], 3);
}

TEST(SliceFactorization, DegenerateSliceRetries) {
  auto c = run_one("slice-factorization");
  ASSERT_EQ(c.status, CheckStatus::pass) << dump(c);
  const auto& attempts = c.witnesses["attempts"];
  ASSERT_EQ(attempts.size(), 2u);
  EXPECT_EQ(attempts[0]["outcome"], "degenerate");
  EXPECT_EQ(attempts[1]["outcome"], "ok");
  EXPECT_EQ(attempts[1]["r"], "t4^7*t42^4 + t28^7");
  EXPECT_EQ(attempts[1]["deg_quotient"], 504);
  EXPECT_TRUE(attempts[1]["factors"][0].contains("irreducibility_certificate"));
  EXPECT_EQ(c.witnesses["slice"], nlohmann::ordered_json::parse(R"(["t4", "t28", "t42"])"));
}

TEST(SliceFactorization, SliceInsideResultantLocusFallsBack) {
  CheckOptions o;
  o.slice = std::vector<int>{10, 36};
  auto c = run_one("slice-factorization", o);
  ASSERT_EQ(c.status, CheckStatus::pass) << dump(c);
  EXPECT_EQ(c.witnesses["attempts"][0]["outcome"], "degenerate");
}

TEST(Report, ErrataAppearExactlyOnce) {
  RunOptions o;
  o.jobs = 4;
  auto report = run_checks({"all"}, o);
  std::multiset<std::string> ids;
  for (const auto& c : report.checks) {
    for (const auto& e : c.errata) {
      ids.insert(e.id);
      EXPECT_FALSE(e.evidence.is_null()) << e.id;
    }
  }
  for (const char* id : {"t40-entry", "t16-component", "nonrdp-condition-typo", "delta-exponent-swap"}) EXPECT_EQ(ids.count(id), 1u) << id;
  EXPECT_EQ(ids.size(), 4u);
  EXPECT_TRUE(report.all_passed());
}

TEST(Report, DeterministicAcrossRunsAndWorkerCounts) {
  RunOptions a;
  a.check.seed = 7;
  a.check.trials = 5;
  RunOptions b = a;
  b.jobs = 3;
  std::vector<std::string> names{"kodaira", "nonrdp-param", "lattice", "univariate-divisibility"};
  auto ja = report_to_json(run_checks(names, a)).dump();
  auto jb = report_to_json(run_checks(names, b)).dump();
  EXPECT_EQ(ja, jb);
  b.check.seed = 8;
  EXPECT_NE(ja, report_to_json(run_checks(names, b)).dump());
}

TEST(Report, SchemaAndOrdering) {
  RunOptions o;
  auto j = report_to_json(run_checks({"lattice", "degree-ledger", "lattice"}, o));
  EXPECT_EQ(j["meta"]["prime"], kDefaultPrime);
  EXPECT_EQ(j["meta"]["version"], library_version());
  ASSERT_EQ(j["checks"].size(), 2u);
  EXPECT_EQ(j["checks"][0]["name"], "degree-ledger");  // registry order, duplicates dropped
  for (const char* key : {"name", "status", "witnesses", "millis", "errata"}) EXPECT_TRUE(j["checks"][0].contains(key)) << key;
  EXPECT_EQ(j["checks"][0]["millis"], 0);
}

TEST(Report, FailuresCarryWitnesses) {
  CheckRecorder rec("demo", 1);
  EXPECT_FALSE(rec.expect(false, "something", nlohmann::ordered_json{{"value", 3}}));
  auto r = std::move(rec).finish();
  EXPECT_EQ(r.status, CheckStatus::fail);
  EXPECT_EQ(r.witnesses["failures"][0]["evidence"]["value"], 3);
}

TEST(Report, SeedsDependOnName) {
  EXPECT_NE(check_seed(1, "kodaira"), check_seed(1, "lattice"));
  EXPECT_EQ(check_seed(1, "kodaira"), check_seed(1, "kodaira"));
}

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <string>

#include "stz/holonomy_db_embedded.hpp"
#include "stz/report.hpp"
#include "stz/suites.hpp"

using namespace stz;

namespace {

const CheckResult* find_check(const SuiteReport& r, const std::string& name) {
  for (const CheckResult& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool sorted_by_name(const SuiteReport& r) {
  return std::is_sorted(r.checks.begin(), r.checks.end(),
                        [](const CheckResult& a, const CheckResult& b) {
                          return a.name < b.name;
                        });
}

SuiteOptions with_db() {
  SuiteOptions o;
  o.holonomy_db_text = stz::dbdata::holonomy_db_text();
  return o;
}

}  // namespace

TEST_CASE("status strings round-trip, hyphen included", "[reports]") {
  for (CheckStatus s : {CheckStatus::PASS, CheckStatus::FAIL,
                        CheckStatus::AXIOM_DEPENDENT,
                        CheckStatus::INCONCLUSIVE})
    CHECK(status_from_string(to_string(s)) == s);
  CHECK(to_string(CheckStatus::AXIOM_DEPENDENT) == "AXIOM-DEPENDENT");
  CHECK_THROWS_AS(status_from_string("AXIOM_DEPENDENT"),
                  std::invalid_argument);
  CHECK_THROWS_AS(status_from_string("maybe"), std::invalid_argument);
}

TEST_CASE("lemma suite passes and is canonically ordered", "[reports]") {
  SuiteReport r = run_lemma_suite();
  CHECK(r.suite == "lemmas");
  CHECK(r.seed == 20260822);  // default seed is embedded in the report
  REQUIRE(r.checks.size() == 5);
  CHECK(sorted_by_name(r));
  for (const CheckResult& c : r.checks) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.status == CheckStatus::PASS);
    CHECK(c.seconds == 0.0);  // timings are opt-in
  }
  CHECK(r.all_ok());
  CHECK_FALSE(r.any_inconclusive());
}

TEST_CASE("case-analysis suite reports conditional closure", "[reports]") {
  SuiteReport r = run_borel_suite();
  CHECK(r.suite == "borel");
  REQUIRE(r.checks.size() == 4);
  CHECK(sorted_by_name(r));
  CHECK(r.all_ok());

  // Closure rests on cited theorems, so it is conditional, never PASS.
  const CheckResult* sph = find_check(r, "case_analysis_closes_sphere");
  REQUIRE(sph != nullptr);
  CHECK(sph->status == CheckStatus::AXIOM_DEPENDENT);
  const CheckResult* acy = find_check(r, "case_analysis_closes_acyclic");
  REQUIRE(acy != nullptr);
  CHECK(acy->status == CheckStatus::AXIOM_DEPENDENT);

  // The survivor table is a computed pin, so it is unconditional.
  const CheckResult* tab = find_check(r, "survivor_table_k4_8");
  REQUIRE(tab != nullptr);
  CHECK(tab->status == CheckStatus::PASS);
  const CheckResult* det = find_check(r, "tree_determinism_roundtrip");
  REQUIRE(det != nullptr);
  CHECK(det->status == CheckStatus::PASS);
}

TEST_CASE("congruence suite states the computed dimensions", "[reports]") {
  SuiteReport r = run_congruence_suite();
  CHECK(r.suite == "congruence");
  REQUIRE(r.checks.size() == 5);
  CHECK(sorted_by_name(r));
  for (const CheckResult& c : r.checks) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.status == CheckStatus::PASS);
  }

  // The central seed closes at dimension 1 and the report says why.
  const CheckResult* central = find_check(r, "closure_central_seed_n4");
  REQUIRE(central != nullptr);
  CHECK(central->detail.find("central") != std::string::npos);
  CHECK(central->detail.find("dimension 1") != std::string::npos);
}

TEST_CASE("decider suite is honest about its axioms and budgets",
          "[reports]") {
  SuiteReport r = run_decider_suite(with_db());
  CHECK(r.suite == "decider");
  REQUIRE(r.checks.size() == 4);
  CHECK(sorted_by_name(r));
  CHECK(r.all_ok());
  CHECK(r.any_inconclusive());

  const CheckResult* db = find_check(r, "db_certificates");
  REQUIRE(db != nullptr);
  CHECK(db->status == CheckStatus::AXIOM_DEPENDENT);
  CHECK(db->detail.find("TRIVIAL_HOM") != std::string::npos);

  const CheckResult* budget = find_check(r, "aut_budget_over_cap");
  REQUIRE(budget != nullptr);
  CHECK(budget->status == CheckStatus::INCONCLUSIVE);

  CHECK(find_check(r, "negative_control_rank5")->status == CheckStatus::PASS);
  CHECK(find_check(r, "tamper_rejection")->status == CheckStatus::PASS);
}

TEST_CASE("decider suite without a database declines the sweep", "[reports]") {
  SuiteReport r = run_decider_suite();
  const CheckResult* db = find_check(r, "db_certificates");
  REQUIRE(db != nullptr);
  CHECK(db->status == CheckStatus::INCONCLUSIVE);
  CHECK(r.all_ok());  // INCONCLUSIVE is not FAIL
}

TEST_CASE("suite selection and exit codes", "[reports]") {
  std::vector<SuiteReport> all = run_suites("all", with_db());
  REQUIRE(all.size() == 4);
  CHECK(all[0].suite == "lemmas");
  CHECK(all[1].suite == "borel");
  CHECK(all[2].suite == "congruence");
  CHECK(all[3].suite == "decider");
  CHECK(suites_exit_code(all) == 0);

  std::vector<SuiteReport> one = run_suites("congruence");
  REQUIRE(one.size() == 1);
  CHECK(one[0].suite == "congruence");

  CHECK_THROWS_AS(run_suites("nope"), std::invalid_argument);

  // A FAIL anywhere flips the exit code.
  all[2].checks[0].status = CheckStatus::FAIL;
  CHECK(suites_exit_code(all) == 1);
}

TEST_CASE("reports round-trip through JSON", "[reports]") {
  SuiteReport r = run_congruence_suite();
  nlohmann::ordered_json j = report_to_json(r);
  SuiteReport back = report_from_json(j);
  CHECK(back == r);
  CHECK(report_to_json(back).dump() == j.dump());

  // Statuses serialize under their display names.
  SuiteReport d = run_decider_suite(with_db());
  nlohmann::ordered_json jd = report_to_json(d);
  bool saw_axiom = false;
  for (const auto& jc : jd["checks"])
    if (jc["status"] == "AXIOM-DEPENDENT") saw_axiom = true;
  CHECK(saw_axiom);
  CHECK(report_from_json(jd) == d);
}

TEST_CASE("suite output is deterministic run to run", "[reports]") {
  SuiteReport a = run_congruence_suite();
  SuiteReport b = run_congruence_suite();
  CHECK(a == b);
  CHECK(report_to_json(a).dump() == report_to_json(b).dump());
}

TEST_CASE("timings are opt-in and reported when asked", "[reports]") {
  SuiteOptions opts;
  opts.timings = true;
  SuiteReport r = run_congruence_suite(opts);
  for (const CheckResult& c : r.checks) CHECK(c.seconds >= 0.0);
  bool any_positive = false;
  for (const CheckResult& c : r.checks) any_positive |= c.seconds > 0.0;
  CHECK(any_positive);
}

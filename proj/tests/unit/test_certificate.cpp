// Run certificates: JSON round-trip, content comparison that ignores
// timings, deterministic re-runs, replay, and scenario exit codes.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>

#include "osc/certificate.hpp"
#include "osc/scenarios.hpp"

using namespace osc;

namespace {

Certificate sample() {
  Certificate c;
  c.scenario = "sample";
  c.params = {{"p", "2"}, {"budget", "6"}};
  c.budgets = {{"word_budget", "6"}};
  c.seed = 41;
  c.verdict = "Verified";
  c.witnesses.push_back(CertWitness{"claim text", "x y'", {"x", "y"}});
  c.notes.push_back("a recorded finding");
  c.timings_ms = {{"total", 12.5}};
  c.tool_version = "0.1.0";
  return c;
}

}  // namespace

TEST_CASE("JSON round-trip preserves everything") {
  Certificate c = sample();
  Certificate back = Certificate::from_json(c.to_json(true));
  CHECK(back.same_content(c));
  CHECK(back.scenario == c.scenario);
  CHECK(back.params == c.params);
  CHECK(back.seed == c.seed);
  CHECK(back.witnesses.size() == 1);
  CHECK(back.witnesses[0] == c.witnesses[0]);
  CHECK(back.notes == c.notes);
  CHECK(back.timings_ms == c.timings_ms);

  // timings are emptied (schema kept stable) when not requested, and they
  // never affect content comparison
  nlohmann::json bare = c.to_json(false);
  CHECK(bare.at("timings_ms").empty());
  CHECK(Certificate::from_json(bare).same_content(c));
}

TEST_CASE("same_content ignores exactly the timings") {
  Certificate a = sample();
  Certificate b = sample();
  b.timings_ms["total"] = 9000.0;
  CHECK(a.same_content(b));

  b = sample();
  b.verdict = "RefutedWithWitness";
  CHECK_FALSE(a.same_content(b));

  b = sample();
  b.witnesses[0].element = "y x'";
  CHECK_FALSE(a.same_content(b));

  b = sample();
  b.notes.push_back("an extra note");
  CHECK_FALSE(a.same_content(b));

  b = sample();
  b.params["p"] = "3";
  CHECK_FALSE(a.same_content(b));
}

TEST_CASE("text report names the scenario, verdict, and witnesses") {
  std::string report = sample().text_report();
  CHECK(report.find("sample") != std::string::npos);
  CHECK(report.find("Verified") != std::string::npos);
  CHECK(report.find("x y'") != std::string::npos);
  CHECK(report.find("a recorded finding") != std::string::npos);
}

TEST_CASE("scenario runs are deterministic and replayable") {
  ScenarioRequest req;
  req.id = "co61";
  req.p = 2;
  req.budget = 6;
  req.seed = 123;

  Certificate first = run_scenario(req);
  Certificate second = run_scenario(req);
  CHECK(first.same_content(second));
  CHECK(first.verdict == "Verified");
  CHECK(first.params.at("p") == "2");
  CHECK(first.timings_ms.count("total") == 1);

  CHECK(replay_certificate(first));

  // a tampered verdict no longer replays
  Certificate tampered = first;
  tampered.verdict = "RefutedWithWitness";
  CHECK_FALSE(replay_certificate(tampered));

  // a tampered witness list no longer replays either
  tampered = first;
  tampered.witnesses.push_back(CertWitness{"forged", "x", {}});
  CHECK_FALSE(replay_certificate(tampered));
}

TEST_CASE("exit codes and the scenario registry") {
  Certificate c;
  c.scenario = "co61";  // expected verdict: Verified
  c.verdict = "Verified";
  CHECK(scenario_exit_code(c) == 0);
  c.verdict = "InconclusiveAtBound";
  CHECK(scenario_exit_code(c) == 2);
  c.verdict = "RefutedWithWitness";
  CHECK(scenario_exit_code(c) == 1);
  c.scenario = "ex2";  // expected verdict: RefutedWithWitness
  CHECK(scenario_exit_code(c) == 0);
  c.scenario = "unknown-scenario";
  CHECK(scenario_exit_code(c) == 1);

  auto ids = scenario_ids();
  CHECK(ids.size() == 5);
  for (const auto& id : ids) {
    CHECK(scenario_expectations().count(id) == 1);
  }

  ScenarioRequest bogus;
  bogus.id = "does-not-exist";
  CHECK_THROWS_AS(run_scenario(bogus), std::invalid_argument);
}

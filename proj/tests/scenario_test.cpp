// Copyright 2026 The BBC Ledger Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include "provenance.hpp"
#include "scenario.hpp"
#include "test_support.hpp"

using namespace bbc;

namespace {

std::string scenario_path(const char* name) {
  return std::string(BBC_SCENARIO_DIR) + "/" + name;
}

}  // namespace

TEST_CASE("demo scenario parses with resolved files") {
  Scenario s = load_scenario(scenario_path("demo_lettuce.json"));
  CHECK(s.node_count == 4);
  CHECK(s.behaviors.size() == 4);
  CHECK(s.registry->size() == 4);
  REQUIRE(s.submissions.size() == 4);
  for (const PreparedSubmission& sub : s.submissions) {
    CHECK(sub.accepted);  // all four probes are genuine
    CHECK(sub.tx.attestation.accepted);
  }
  CHECK(s.threshold == kDefaultThreshold);
}

TEST_CASE("demo scenario commits the full lifecycle on every honest node") {
  Scenario s = load_scenario(scenario_path("demo_lettuce.json"));
  ScenarioRun run = run_scenario(s);
  CHECK(run.completed);
  CHECK(run.honest_heads_identical());
  CHECK(run.chain_of(0).transaction_count() == 4);
  CHECK(run.sim.rejected().empty());

  nlohmann::json summary = nlohmann::json::parse(run.summary_json());
  CHECK(summary["committed_txs"] == 4);
  CHECK(summary["committed_blocks"] == 4);
  CHECK(summary["honest_heads_identical"] == true);
  CHECK(summary["rejected_txs"].is_array());
  CHECK(summary["rejected_txs"].empty());

  // The committed chain answers the provenance queries end to end.
  ItemIndex idx =
      ItemIndex::build(run.chain_of(0), *s.registry, s.threshold);
  auto records = trace_item(idx, run.chain_of(0), "lettuce-42");
  REQUIRE(records.size() == 4);
  CHECK(records[0].stage == Stage::kFarm);
  CHECK(records[3].stage == Stage::kRetail);
  CHECK(audit_labels(idx, run.chain_of(0), "lettuce-42").empty());
}

TEST_CASE("impostor submissions are rejected and never reach a chain") {
  Scenario s = load_scenario(scenario_path("impostor.json"));
  REQUIRE(s.submissions.size() == 2);
  CHECK(s.submissions[0].accepted);
  CHECK(!s.submissions[1].accepted);

  ScenarioRun run = run_scenario(s);
  CHECK(run.completed);
  REQUIRE(run.sim.rejected().size() == 1);
  CHECK(run.sim.rejected()[0].submission_index == 1);
  CHECK(run.sim.rejected()[0].actor_id == 102);
  CHECK(run.sim.rejected()[0].match_score > s.threshold);

  CHECK(run.chain_of(0).transaction_count() == 1);
  for (const Block& b : run.chain_of(0).blocks()) {
    for (const Transaction& tx : b.transactions) {
      CHECK(tx.attestation.accepted);
      CHECK(tx.event.stage == Stage::kFarm);
    }
  }

  nlohmann::json summary = nlohmann::json::parse(run.summary_json());
  REQUIRE(summary["rejected_txs"].size() == 1);
  CHECK(summary["rejected_txs"][0]["item_id"] == "lettuce-43");
  CHECK(summary["rejected_txs"][0]["submission_index"] == 1);
}

TEST_CASE("the peanut incident audits to one undeclared violation") {
  Scenario s = load_scenario(scenario_path("peanut_incident.json"));
  ScenarioRun run = run_scenario(s);
  CHECK(run.completed);
  ItemIndex idx = ItemIndex::build(run.chain_of(0), *s.registry, s.threshold);
  auto violations = audit_labels(idx, run.chain_of(0), "sandwich-7");
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].kind == ViolationKind::kUndeclaredIngredient);
  CHECK(violations[0].ingredient == "peanut");
  REQUIRE(violations[0].introduced_at.has_value());
  // Points at the PROCESSING transaction that introduced it.
  const auto [h, t] = *violations[0].introduced_at;
  const Transaction& tx = run.chain_of(0).blocks()[h].transactions[t];
  CHECK(tx.event.stage == Stage::kProcessing);

  Scenario fixed = load_scenario(scenario_path("peanut_corrected.json"));
  ScenarioRun run2 = run_scenario(fixed);
  ItemIndex idx2 =
      ItemIndex::build(run2.chain_of(0), *fixed.registry, fixed.threshold);
  CHECK(audit_labels(idx2, run2.chain_of(0), "sandwich-7").empty());
}

TEST_CASE("scenario runs are a pure function of (scenario, seed)") {
  Scenario s = load_scenario(scenario_path("demo_lettuce.json"));
  ScenarioRun a = run_scenario(s);
  ScenarioRun b = run_scenario(s);
  CHECK(a.final_tick == b.final_tick);
  CHECK(encode_chain(a.chain_of(0)) == encode_chain(b.chain_of(0)));
  CHECK(a.sim.trace_jsonl() == b.sim.trace_jsonl());
  CHECK(a.summary_json() == b.summary_json());
}

TEST_CASE("scenario parser rejects malformed inputs") {
  CHECK_THROWS_AS(parse_scenario("not json", ""), Error);
  CHECK_THROWS_AS(parse_scenario("{\"nodes\":0}", ""), Error);
  // behaviors length mismatch
  CHECK_THROWS_AS(
      parse_scenario(
          R"({"nodes":4,"behaviors":["HONEST"],"registry_file":"x"})", ""),
      Error);
  // missing registry file path
  CHECK_THROWS_AS(parse_scenario(R"({"nodes":4})", ""), Error);
}

TEST_CASE("byzantine scenarios stay safe and converge") {
  // One byzantine node of each flavor among four; node 1 proposes first.
  for (Behavior b : {Behavior::kEquivocator, Behavior::kTamperer,
                     Behavior::kVoteFlipper, Behavior::kCrashed}) {
    CAPTURE(behavior_name(b));
    Scenario s = load_scenario(scenario_path("demo_lettuce.json"));
    s.behaviors[1] = b;
    ScenarioRun run = run_scenario(s);
    CHECK(run.completed);
    CHECK(run.honest_heads_identical());
    // No committed transaction may carry a failing attestation.
    for (const Node& n : run.sim.nodes()) {
      if (n.behavior() != Behavior::kHonest) continue;
      CHECK(!validate_chain(n.head(), *s.registry, s.threshold).has_value());
    }
  }
}

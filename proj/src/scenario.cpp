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

#include "scenario.hpp"

#include <filesystem>

#include <nlohmann/json.hpp>

#include "fileio.hpp"

namespace bbc {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

SupplyChainEvent event_from_scenario(const json& j) {
  SupplyChainEvent e;
  e.item_id = j.at("item_id").get<std::string>();
  e.stage = stage_from_name(j.at("stage").get<std::string>());
  e.batch_number = j.value("batch_number", std::string{});
  e.origin = j.value("origin", std::string{});
  e.storage_temp = j.value("storage_temp", int32_t{0});
  e.expiry = j.value("expiry", uint64_t{0});
  e.event_time = j.value("event_time", uint64_t{0});
  if (j.contains("ingredients_added")) {
    e.ingredients_added =
        j.at("ingredients_added").get<std::vector<std::string>>();
  }
  if (j.contains("declared_label")) {
    e.declared_label = j.at("declared_label").get<std::vector<std::string>>();
  }
  check_event(e);
  return e;
}

Scenario parse_scenario_json(const json& j, const std::string& base_dir) {
  Scenario s;
  s.node_count = j.at("nodes").get<uint32_t>();
  if (s.node_count == 0) raise(Errc::kParse, "scenario needs nodes >= 1");

  if (j.contains("behaviors")) {
    for (const auto& b : j.at("behaviors")) {
      s.behaviors.push_back(behavior_from_name(b.get<std::string>()));
    }
    if (s.behaviors.size() != s.node_count) {
      raise(Errc::kParse, "behaviors length must equal nodes");
    }
  } else {
    s.behaviors.assign(s.node_count, Behavior::kHonest);
  }

  s.timeout_ticks = j.value("timeout_ticks", uint64_t{50});
  s.seed = j.value("seed", uint64_t{0});
  s.threshold = j.value("threshold", kDefaultThreshold);
  s.max_ticks = j.value("max_ticks", uint64_t{100000});

  s.net.seed = s.seed;
  s.net.base_delay = j.value("base_delay", uint64_t{1});
  s.net.jitter = j.value("jitter", uint64_t{0});
  s.net.drop_rate = j.value("drop_rate", 0.0);
  if (s.net.drop_rate < 0.0 || s.net.drop_rate > 1.0) {
    raise(Errc::kParse, "drop_rate must be within [0, 1]");
  }
  if (j.contains("partitions")) {
    for (const auto& jp : j.at("partitions")) {
      Partition p;
      p.from_tick = jp.at("from_tick").get<uint64_t>();
      p.until_tick = jp.at("until_tick").get<uint64_t>();
      for (const auto& group : jp.at("groups")) {
        std::set<uint32_t> ids;
        for (const auto& id : group) ids.insert(id.get<uint32_t>());
        p.groups.push_back(std::move(ids));
      }
      s.net.partitions.push_back(std::move(p));
    }
  }

  auto resolve = [&](const std::string& p) {
    fs::path path(p);
    if (path.is_absolute() || base_dir.empty()) return path.string();
    return (fs::path(base_dir) / path).string();
  };

  auto registry = std::make_shared<ActorRegistry>(
      registry_from_json(read_text_file(resolve(
          j.at("registry_file").get<std::string>()))));
  s.registry = registry;

  uint64_t submission_index = 0;
  for (const auto& js : j.value("submissions", json::array())) {
    PreparedSubmission sub;
    sub.tick = js.at("tick").get<uint64_t>();
    sub.node = js.at("node").get<uint32_t>();
    if (sub.node >= s.node_count) {
      raise(Errc::kParse, "submission targets unknown node");
    }
    SupplyChainEvent event = event_from_scenario(js.at("event"));
    uint32_t actor_id = js.at("actor_id").get<uint32_t>();
    BiometricTemplate probe = template_from_json(
        read_text_file(resolve(js.at("probe_file").get<std::string>())));
    ScramblingKey key = key_from_json(
        read_text_file(resolve(js.at("key_file").get<std::string>())));

    BiometricAttestation att;
    att.actor_id = actor_id;
    att.verifier_node = sub.node;
    att.nonce = submission_index;
    // In-process verification; the ledger only ever sees the scrambled
    // probe and the verdict.
    const ActorRecord* record = registry->find(actor_id);
    bool verifiable = false;
    try {
      att.encrypted_probe = scramble(probe, key);
      if (record != nullptr &&
          record->enrolled.key_id == att.encrypted_probe.key_id) {
        MatchDecision d =
            verify(att.encrypted_probe, *record, s.threshold);
        att.match_score = d.score;
        att.accepted = d.accepted;
        verifiable = true;
      }
    } catch (const Error&) {
      verifiable = false;  // out-of-range probe component
    }
    if (!verifiable) att.accepted = false;

    sub.meta.submission_index = submission_index;
    sub.meta.item_id = event.item_id;
    sub.meta.actor_id = actor_id;
    sub.meta.match_score = att.match_score;
    sub.meta.threshold = s.threshold;
    sub.accepted = att.accepted;
    sub.tx = seal_transaction(std::move(event), std::move(att));
    s.submissions.push_back(std::move(sub));
    submission_index += 1;
  }
  return s;
}

}  // namespace

Scenario parse_scenario(const std::string& text, const std::string& base_dir) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) raise(Errc::kParse, "invalid scenario JSON");
  try {
    return parse_scenario_json(j, base_dir);
  } catch (const json::exception& e) {
    raise(Errc::kParse, std::string("scenario JSON: ") + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  return parse_scenario(read_text_file(path),
                        fs::path(path).parent_path().string());
}

ScenarioRun run_scenario(const Scenario& scenario) {
  std::vector<Node> nodes;
  nodes.reserve(scenario.node_count);
  for (uint32_t id = 0; id < scenario.node_count; ++id) {
    nodes.emplace_back(id, scenario.node_count, scenario.behaviors[id],
                       scenario.registry, scenario.threshold);
  }
  ScenarioRun run{
      Simulation(scenario.net, std::move(nodes), scenario.timeout_ticks)};
  for (const PreparedSubmission& sub : scenario.submissions) {
    run.sim.add_submission(sub.tick, sub.node, sub.tx, sub.accepted, sub.meta);
  }
  auto result = run.sim.run_until_quiet(scenario.max_ticks);
  run.completed = result.completed;
  run.final_tick = result.final_tick;
  return run;
}

bool ScenarioRun::honest_heads_identical() const {
  std::optional<Bytes> reference;
  for (const Node& node : sim.nodes()) {
    if (node.behavior() != Behavior::kHonest) continue;
    Bytes encoded = encode_chain(node.head());
    if (!reference.has_value()) {
      reference = std::move(encoded);
    } else if (*reference != encoded) {
      return false;
    }
  }
  return true;
}

const Chain& ScenarioRun::chain_of(uint32_t node_id) const {
  return sim.nodes().at(node_id).head();
}

std::string ScenarioRun::summary_json() const {
  const Chain& head = chain_of(0);
  json rejected = json::array();
  for (const SubmissionMeta& meta : sim.rejected()) {
    json r;
    r["submission_index"] = meta.submission_index;
    r["item_id"] = meta.item_id;
    r["actor_id"] = meta.actor_id;
    r["match_score"] = meta.match_score;
    r["threshold"] = meta.threshold;
    rejected.push_back(r);
  }
  json j;
  j["committed_blocks"] = head.blocks().size() - 1;
  j["committed_txs"] = head.transaction_count();
  j["final_tick"] = final_tick;
  j["honest_heads_identical"] = honest_heads_identical();
  j["rejected_txs"] = rejected;
  return j.dump();
}

}  // namespace bbc

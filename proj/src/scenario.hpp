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

#ifndef BBC_SRC_SCENARIO_HPP
#define BBC_SRC_SCENARIO_HPP

#include <memory>
#include <string>
#include <vector>

#include "netsim.hpp"

namespace bbc {

/// One scripted submission after probe scrambling and verification: the
/// transaction is fully built (attestation embedded) before the run starts,
/// so the simulation itself is a pure function of the scenario.
struct PreparedSubmission {
  uint64_t tick = 0;
  uint32_t node = 0;
  Transaction tx;
  bool accepted = false;
  SubmissionMeta meta;
};

struct Scenario {
  uint32_t node_count = 0;
  std::vector<Behavior> behaviors;
  uint64_t timeout_ticks = 50;
  uint64_t seed = 0;
  uint64_t threshold = kDefaultThreshold;
  uint64_t max_ticks = 100000;
  NetworkConfig net;
  std::shared_ptr<const ActorRegistry> registry;
  std::vector<PreparedSubmission> submissions;
};

/// Parses the scenario JSON; probe/key/registry paths resolve relative to
/// the scenario file's directory. Attestations are verified here.
Scenario load_scenario(const std::string& path);

/// Same, with the JSON text supplied directly and an explicit base
/// directory for relative paths.
Scenario parse_scenario(const std::string& text, const std::string& base_dir);

struct ScenarioRun {
  Simulation sim;
  bool completed = false;
  uint64_t final_tick = 0;

  /// {committed_blocks, committed_txs, final_tick, honest_heads_identical,
  ///  rejected_txs:[...]} — stable key order.
  std::string summary_json() const;
  bool honest_heads_identical() const;
  const Chain& chain_of(uint32_t node_id) const;
};

ScenarioRun run_scenario(const Scenario& scenario);

}  // namespace bbc

#endif  // BBC_SRC_SCENARIO_HPP

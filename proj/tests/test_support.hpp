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

#ifndef BBC_TESTS_TEST_SUPPORT_HPP
#define BBC_TESTS_TEST_SUPPORT_HPP

#include <memory>
#include <string>
#include <vector>

#include "biometric.hpp"
#include "fileio.hpp"
#include "ledger.hpp"
#include "rng.hpp"

namespace bbc::test {

// The fixed sample transactions mirrored by tests/oracles/make_goldens.py.
// Any change here must be regenerated there.

inline BiometricTemplate sample_template(int mul, int add) {
  TemplateValues v{};
  for (size_t i = 0; i < kTemplateDim; ++i) {
    v[i] = static_cast<int16_t>(
        static_cast<int>((mul * static_cast<int>(i) + add) % 1201) - 600);
  }
  return BiometricTemplate(v);
}

inline Transaction sample_tx1() {
  SupplyChainEvent e;
  e.item_id = "lettuce-42";
  e.stage = Stage::kFarm;
  e.batch_number = "B-001";
  e.origin = "greenleaf-farm";
  e.storage_temp = 450;
  e.expiry = 9000;
  e.event_time = 17;
  e.ingredients_added = {"lettuce"};

  BiometricAttestation a;
  a.actor_id = 101;
  a.encrypted_probe.key_id = 1;
  a.encrypted_probe.values = sample_template(7, 3).values();
  a.match_score = 1234;
  a.accepted = true;
  a.verifier_node = 2;
  a.nonce = 5;
  return seal_transaction(std::move(e), std::move(a));
}

inline Transaction sample_tx2() {
  SupplyChainEvent e;
  e.item_id = "sandwich-7";
  e.stage = Stage::kProcessing;
  e.batch_number = "B-002";
  e.origin = "midtown-kitchen";
  e.storage_temp = -150;
  e.expiry = 12000;
  e.event_time = 29;
  e.ingredients_added = {"bread", "peanut"};

  BiometricAttestation a;
  a.actor_id = 102;
  a.encrypted_probe.key_id = 1;
  TemplateValues v{};
  for (size_t i = 0; i < kTemplateDim; ++i) {
    v[i] = static_cast<int16_t>(
        static_cast<int>((13 * static_cast<int>(i) + 11) % 1501) - 750);
  }
  a.encrypted_probe.values = v;
  a.match_score = 77;
  a.accepted = true;
  a.verifier_node = 0;
  a.nonce = 6;
  return seal_transaction(std::move(e), std::move(a));
}

// --- A small enrolled world for chain-level tests ---------------------------

struct World {
  std::shared_ptr<ActorRegistry> registry;
  ScramblingKey key;
  std::vector<uint32_t> actor_ids;
  std::vector<BiometricTemplate> raw_templates;  // kept test-side only
};

inline BiometricTemplate world_template(uint32_t actor_id) {
  TemplateValues v{};
  for (size_t i = 0; i < kTemplateDim; ++i) {
    int64_t x =
        (static_cast<int64_t>(actor_id) * 131 + static_cast<int64_t>(i) * 37 +
         11) %
            2049 -
        1024;
    v[i] = static_cast<int16_t>(x);
  }
  return BiometricTemplate(v);
}

inline World make_world(uint32_t actor_count = 4) {
  World w;
  w.registry = std::make_shared<ActorRegistry>();
  w.key = derive_key(7, 1);
  for (uint32_t n = 0; n < actor_count; ++n) {
    uint32_t actor_id = 101 + n;
    BiometricTemplate t = world_template(actor_id);
    w.registry->enroll(actor_id, static_cast<Role>(n % 4), t, w.key);
    w.actor_ids.push_back(actor_id);
    w.raw_templates.push_back(t);
  }
  return w;
}

/// A genuine attested transaction: probe = enrolled raw + tiny noise.
inline Transaction attested_tx(const World& w, size_t actor_index,
                               const std::string& item_id, Stage stage,
                               uint64_t nonce,
                               std::vector<std::string> ingredients = {},
                               std::vector<std::string> label = {},
                               uint64_t event_time = 0) {
  SupplyChainEvent e;
  e.item_id = item_id;
  e.stage = stage;
  e.batch_number = "B-" + std::to_string(nonce);
  e.origin = "origin-" + std::to_string(actor_index);
  e.storage_temp = 400;
  e.expiry = 50000;
  e.event_time = event_time;
  e.ingredients_added = std::move(ingredients);
  e.declared_label = std::move(label);

  TemplateValues probe = w.raw_templates[actor_index].values();
  for (size_t i = 0; i < kTemplateDim; ++i) {
    probe[i] = static_cast<int16_t>(probe[i] +
                                    static_cast<int>((nonce + i) % 7) - 3);
  }
  BiometricAttestation a;
  a.actor_id = w.actor_ids[actor_index];
  a.encrypted_probe = scramble(BiometricTemplate(probe), w.key);
  const ActorRecord* rec = w.registry->find(a.actor_id);
  MatchDecision d = verify(a.encrypted_probe, *rec, kDefaultThreshold);
  a.match_score = d.score;
  a.accepted = d.accepted;
  a.verifier_node = 0;
  a.nonce = nonce;
  return seal_transaction(std::move(e), std::move(a));
}

/// Builds a valid committed-style chain: block_count blocks of txs_per_block
/// generic items, all attestations genuine.
inline Chain build_chain(const World& w, size_t block_count,
                         size_t txs_per_block) {
  Chain chain;
  uint64_t nonce = 0;
  for (size_t b = 0; b < block_count; ++b) {
    std::vector<Transaction> txs;
    for (size_t t = 0; t < txs_per_block; ++t) {
      txs.push_back(attested_tx(w, nonce % w.actor_ids.size(),
                                "item-" + std::to_string(nonce % 17),
                                static_cast<Stage>(nonce % 3), nonce, {},
                                {}, nonce));
      nonce += 1;
    }
    chain.append(make_block(chain.tip(), std::move(txs),
                            100 * (b + 1), static_cast<uint32_t>(b % 4)));
  }
  return chain;
}

inline std::string golden_path(const std::string& name) {
  return std::string(BBC_TEST_DATA_DIR) + "/golden/" + name;
}

inline std::string read_golden_text(const std::string& name) {
  std::string text = read_text_file(golden_path(name));
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) {
    text.pop_back();
  }
  return text;
}

inline Bytes read_golden_bytes(const std::string& name) {
  std::string text = read_text_file(golden_path(name));
  return Bytes(text.begin(), text.end());
}

}  // namespace bbc::test

#endif  // BBC_TESTS_TEST_SUPPORT_HPP

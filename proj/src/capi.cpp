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

#include "bbc/bbc.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <string>

#include "biometric.hpp"
#include "fileio.hpp"
#include "ledger.hpp"
#include "provenance.hpp"
#include "scenario.hpp"

// Opaque handle definitions: each wraps one core value.
struct bbc_key {
  bbc::ScramblingKey key;
  uint64_t seed_note = 0;
};
struct bbc_template {
  bbc::BiometricTemplate tpl;
};
struct bbc_registry {
  bbc::ActorRegistry registry;
};
struct bbc_chain {
  bbc::Chain chain;
};
struct bbc_scenario {
  bbc::Scenario scenario;
};
struct bbc_sim_result {
  bbc::ScenarioRun run;
};

namespace {

thread_local std::string g_last_error;

bbc_status map_errc(bbc::Errc code) {
  using bbc::Errc;
  switch (code) {
    case Errc::kInvalidArgument: return BBC_ERR_INVALID_ARGUMENT;
    case Errc::kIo: return BBC_ERR_IO;
    case Errc::kParse: return BBC_ERR_PARSE;
    case Errc::kBadMagic: return BBC_ERR_BAD_MAGIC;
    case Errc::kTruncated: return BBC_ERR_TRUNCATED;
    case Errc::kDuplicateActor: return BBC_ERR_DUPLICATE_ACTOR;
    case Errc::kTemplateRange: return BBC_ERR_TEMPLATE_RANGE;
    case Errc::kKeyMismatch: return BBC_ERR_KEY_MISMATCH;
    case Errc::kUnknownActor: return BBC_ERR_UNKNOWN_ACTOR;
    case Errc::kUnattestedTx: return BBC_ERR_UNATTESTED_TX;
    case Errc::kEmptyBlock: return BBC_ERR_EMPTY_BLOCK;
    case Errc::kInvalidChain: return BBC_ERR_INVALID_CHAIN;
    case Errc::kNotFound: return BBC_ERR_NOT_FOUND;
    case Errc::kAmbiguous: return BBC_ERR_AMBIGUOUS;
    case Errc::kNotRetailed: return BBC_ERR_NOT_RETAILED;
    case Errc::kBudgetExceeded: return BBC_ERR_BUDGET_EXCEEDED;
    case Errc::kRange: return BBC_ERR_RANGE;
    case Errc::kInternal: return BBC_ERR_INTERNAL;
  }
  return BBC_ERR_INTERNAL;
}

template <typename Fn>
bbc_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const bbc::Error& e) {
    g_last_error = e.what();
    return map_errc(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return BBC_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return BBC_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bbc_status require(bool ok, const char* what) {
  if (!ok) {
    g_last_error = what;
    return BBC_ERR_INVALID_ARGUMENT;
  }
  return BBC_OK;
}

}  // namespace

extern "C" {

const char* bbc_status_name(bbc_status status) {
  switch (status) {
    case BBC_OK: return "OK";
    case BBC_ERR_INVALID_ARGUMENT: return "INVALID_ARGUMENT";
    case BBC_ERR_IO: return "IO";
    case BBC_ERR_PARSE: return "PARSE";
    case BBC_ERR_BAD_MAGIC: return "BAD_MAGIC";
    case BBC_ERR_TRUNCATED: return "TRUNCATED";
    case BBC_ERR_DUPLICATE_ACTOR: return "DUPLICATE_ACTOR";
    case BBC_ERR_TEMPLATE_RANGE: return "TEMPLATE_RANGE";
    case BBC_ERR_KEY_MISMATCH: return "KEY_MISMATCH";
    case BBC_ERR_UNKNOWN_ACTOR: return "UNKNOWN_ACTOR";
    case BBC_ERR_UNATTESTED_TX: return "UNATTESTED_TX";
    case BBC_ERR_EMPTY_BLOCK: return "EMPTY_BLOCK";
    case BBC_ERR_VALIDATION: return "VALIDATION";
    case BBC_ERR_INVALID_CHAIN: return "INVALID_CHAIN";
    case BBC_ERR_NOT_FOUND: return "NOT_FOUND";
    case BBC_ERR_AMBIGUOUS: return "AMBIGUOUS";
    case BBC_ERR_NOT_RETAILED: return "NOT_RETAILED";
    case BBC_ERR_BUDGET_EXCEEDED: return "BUDGET_EXCEEDED";
    case BBC_ERR_RANGE: return "RANGE";
    case BBC_ERR_INTERNAL: return "INTERNAL";
  }
  return "INTERNAL";
}

const char* bbc_last_error(void) { return g_last_error.c_str(); }

void bbc_string_free(char* s) { ::free(s); }

uint64_t bbc_default_threshold(void) { return bbc::kDefaultThreshold; }

/* --- keys / templates ----------------------------------------------------- */

bbc_status bbc_key_derive(uint64_t seed, uint32_t key_id, bbc_key** out) {
  if (auto st = require(out != nullptr, "out is NULL")) return st;
  return guarded([&] {
    *out = new bbc_key{bbc::derive_key(seed, key_id), seed};
    return BBC_OK;
  });
}

bbc_status bbc_key_load(const char* path, bbc_key** out) {
  if (auto st = require(path && out, "path/out is NULL")) return st;
  return guarded([&] {
    *out = new bbc_key{bbc::key_from_json(bbc::read_text_file(path)), 0};
    return BBC_OK;
  });
}

bbc_status bbc_key_save(const bbc_key* key, const char* path) {
  if (auto st = require(key && path, "key/path is NULL")) return st;
  return guarded([&] {
    bbc::write_text_file(path, bbc::key_to_json(key->key, key->seed_note));
    return BBC_OK;
  });
}

void bbc_key_free(bbc_key* key) { delete key; }

bbc_status bbc_template_load(const char* path, bbc_template** out) {
  if (auto st = require(path && out, "path/out is NULL")) return st;
  return guarded([&] {
    *out = new bbc_template{
        bbc::template_from_json(bbc::read_text_file(path))};
    return BBC_OK;
  });
}

void bbc_template_free(bbc_template* tpl) { delete tpl; }

/* --- registry --------------------------------------------------------------- */

bbc_status bbc_registry_create(bbc_registry** out) {
  if (auto st = require(out != nullptr, "out is NULL")) return st;
  *out = new bbc_registry{};
  return BBC_OK;
}

bbc_status bbc_registry_load(const char* path, bbc_registry** out) {
  if (auto st = require(path && out, "path/out is NULL")) return st;
  return guarded([&] {
    *out = new bbc_registry{
        bbc::registry_from_json(bbc::read_text_file(path))};
    return BBC_OK;
  });
}

bbc_status bbc_registry_save(const bbc_registry* registry, const char* path) {
  if (auto st = require(registry && path, "registry/path is NULL")) return st;
  return guarded([&] {
    bbc::write_text_file(path, bbc::registry_to_json(registry->registry));
    return BBC_OK;
  });
}

bbc_status bbc_registry_enroll(bbc_registry* registry, uint32_t actor_id,
                               const char* role, const bbc_template* tpl,
                               const bbc_key* key) {
  if (auto st = require(registry && role && tpl && key, "NULL argument")) {
    return st;
  }
  return guarded([&] {
    registry->registry.enroll(actor_id, bbc::role_from_name(role), tpl->tpl,
                              key->key);
    return BBC_OK;
  });
}

void bbc_registry_free(bbc_registry* registry) { delete registry; }

/* --- scenario / simulation --------------------------------------------------- */

bbc_status bbc_scenario_load(const char* path, bbc_scenario** out) {
  if (auto st = require(path && out, "path/out is NULL")) return st;
  return guarded([&] {
    *out = new bbc_scenario{bbc::load_scenario(path)};
    return BBC_OK;
  });
}

void bbc_scenario_free(bbc_scenario* scenario) { delete scenario; }

bbc_status bbc_sim_run(const bbc_scenario* scenario, bbc_sim_result** out) {
  if (auto st = require(scenario && out, "scenario/out is NULL")) return st;
  return guarded([&] {
    auto* result = new bbc_sim_result{bbc::run_scenario(scenario->scenario)};
    *out = result;
    if (!result->run.completed) {
      g_last_error = "simulation hit max_ticks with work pending";
      return BBC_ERR_BUDGET_EXCEEDED;
    }
    return BBC_OK;
  });
}

bbc_status bbc_sim_summary_json(const bbc_sim_result* result,
                                char** out_json) {
  if (auto st = require(result && out_json, "result/out is NULL")) return st;
  return guarded([&] {
    *out_json = dup_string(result->run.summary_json());
    return BBC_OK;
  });
}

bbc_status bbc_sim_chain(const bbc_sim_result* result, uint32_t node_id,
                         bbc_chain** out) {
  if (auto st = require(result && out, "result/out is NULL")) return st;
  return guarded([&] {
    if (node_id >= result->run.sim.nodes().size()) {
      bbc::raise(bbc::Errc::kInvalidArgument, "node_id out of range");
    }
    *out = new bbc_chain{result->run.chain_of(node_id)};
    return BBC_OK;
  });
}

bbc_status bbc_sim_trace_jsonl(const bbc_sim_result* result,
                               char** out_jsonl) {
  if (auto st = require(result && out_jsonl, "result/out is NULL")) return st;
  return guarded([&] {
    *out_jsonl = dup_string(result->run.sim.trace_jsonl());
    return BBC_OK;
  });
}

void bbc_sim_result_free(bbc_sim_result* result) { delete result; }

/* --- chains ------------------------------------------------------------------- */

bbc_status bbc_chain_load(const char* path, bbc_chain** out) {
  if (auto st = require(path && out, "path/out is NULL")) return st;
  return guarded([&] {
    *out = new bbc_chain{bbc::load_chain(path)};
    return BBC_OK;
  });
}

bbc_status bbc_chain_save(const bbc_chain* chain, const char* path) {
  if (auto st = require(chain && path, "chain/path is NULL")) return st;
  return guarded([&] {
    bbc::save_chain(chain->chain, path);
    return BBC_OK;
  });
}

bbc_status bbc_chain_to_json(const bbc_chain* chain, char** out_json) {
  if (auto st = require(chain && out_json, "chain/out is NULL")) return st;
  return guarded([&] {
    *out_json = dup_string(bbc::chain_to_json(chain->chain));
    return BBC_OK;
  });
}

bbc_status bbc_chain_from_json(const char* json_text, bbc_chain** out) {
  if (auto st = require(json_text && out, "json/out is NULL")) return st;
  return guarded([&] {
    *out = new bbc_chain{bbc::chain_from_json(json_text)};
    return BBC_OK;
  });
}

bbc_status bbc_chain_head_hash_hex(const bbc_chain* chain, char** out_hex) {
  if (auto st = require(chain && out_hex, "chain/out is NULL")) return st;
  return guarded([&] {
    *out_hex = dup_string(
        bbc::hash_hex(bbc::block_hash(chain->chain.tip().header)));
    return BBC_OK;
  });
}

bbc_status bbc_chain_verify(const bbc_chain* chain,
                            const bbc_registry* registry, uint64_t threshold,
                            const char* expected_head_hex,
                            uint64_t* fail_height, const char** fail_kind) {
  if (auto st = require(chain && registry, "chain/registry is NULL")) {
    return st;
  }
  return guarded([&] {
    std::optional<bbc::Hash32> anchor;
    if (expected_head_hex != nullptr) {
      anchor = bbc::hash_from_hex(expected_head_hex);
    }
    auto failure = bbc::validate_chain(chain->chain, registry->registry,
                                       threshold, anchor);
    if (!failure.has_value()) return BBC_OK;
    if (fail_height != nullptr) *fail_height = failure->height;
    if (fail_kind != nullptr) {
      *fail_kind = bbc::validation_failure_name(failure->kind);
    }
    g_last_error = std::string("chain validation failed: ") +
                   bbc::validation_failure_name(failure->kind) +
                   " at height " + std::to_string(failure->height);
    return BBC_ERR_VALIDATION;
  });
}

bbc_status bbc_chain_trace_json(const bbc_chain* chain,
                                const bbc_registry* registry,
                                uint64_t threshold, const char* item_id,
                                char** out_json) {
  if (auto st = require(chain && registry && item_id && out_json,
                        "NULL argument")) {
    return st;
  }
  return guarded([&] {
    auto index = bbc::ItemIndex::build(chain->chain, registry->registry,
                                       threshold);
    auto records = bbc::trace_item(index, chain->chain, item_id);
    *out_json = dup_string(bbc::custody_to_json(records));
    return BBC_OK;
  });
}

bbc_status bbc_chain_audit_json(const bbc_chain* chain,
                                const bbc_registry* registry,
                                uint64_t threshold, const char* item_id,
                                char** out_json) {
  if (auto st = require(chain && registry && item_id && out_json,
                        "NULL argument")) {
    return st;
  }
  return guarded([&] {
    auto index = bbc::ItemIndex::build(chain->chain, registry->registry,
                                       threshold);
    auto violations = bbc::audit_labels(index, chain->chain, item_id);
    *out_json = dup_string(bbc::violations_to_json(violations));
    return BBC_OK;
  });
}

bbc_status bbc_chain_responsible_actor(
    const bbc_chain* chain, const bbc_registry* registry, uint64_t threshold,
    const char* item_id, const char* stage, uint32_t* out_actor_id,
    char** out_candidates_json) {
  if (auto st = require(chain && registry && item_id && stage,
                        "NULL argument")) {
    return st;
  }
  return guarded([&] {
    auto index = bbc::ItemIndex::build(chain->chain, registry->registry,
                                       threshold);
    auto result = bbc::responsible_actor(index, chain->chain, item_id,
                                         bbc::stage_from_name(stage));
    using Status = bbc::ResponsibleActor::Status;
    if (result.status == Status::kNotFound) {
      g_last_error = "no transaction for that item and stage";
      return BBC_ERR_NOT_FOUND;
    }
    if (result.status == Status::kAmbiguous) {
      if (out_candidates_json != nullptr) {
        std::string arr = "[";
        for (size_t i = 0; i < result.candidates.size(); ++i) {
          if (i > 0) arr += ",";
          arr += "{\"height\":" + std::to_string(result.candidates[i].first) +
                 ",\"tx_index\":" +
                 std::to_string(result.candidates[i].second) + "}";
        }
        arr += "]";
        *out_candidates_json = dup_string(arr);
      }
      g_last_error = "multiple transactions share that stage";
      return BBC_ERR_AMBIGUOUS;
    }
    if (out_actor_id != nullptr) *out_actor_id = result.actor_id;
    return BBC_OK;
  });
}

void bbc_chain_free(bbc_chain* chain) { delete chain; }

bbc_status bbc_tamper_chain_file(const char* path, uint64_t block_index,
                                 uint64_t offset, uint8_t* out_before,
                                 uint8_t* out_after) {
  if (auto st = require(path != nullptr, "path is NULL")) return st;
  return guarded([&] {
    std::ifstream in(path, std::ios::binary);
    if (!in) bbc::raise(bbc::Errc::kIo, std::string("cannot open: ") + path);
    bbc::Bytes data((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
    in.close();
    auto spans = bbc::chain_block_spans(data);
    if (block_index >= spans.size()) {
      bbc::raise(bbc::Errc::kRange, "block index beyond chain length");
    }
    auto [start, len] = spans[block_index];
    if (offset >= len) {
      bbc::raise(bbc::Errc::kRange, "offset beyond block span");
    }
    uint8_t before = data[start + offset];
    data[start + offset] = before ^ 0x01;
    if (out_before != nullptr) *out_before = before;
    if (out_after != nullptr) *out_after = data[start + offset];
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
      bbc::raise(bbc::Errc::kIo, std::string("cannot write: ") + path);
    }
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size()));
    if (!out) bbc::raise(bbc::Errc::kIo, "write failed");
    return BBC_OK;
  });
}

}  // extern "C"

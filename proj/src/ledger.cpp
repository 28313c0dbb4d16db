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

#include "ledger.hpp"

#include <fstream>
#include <set>
#include <utility>

#include <nlohmann/json.hpp>

#include "sha256.hpp"

namespace bbc {

using nlohmann::json;

const char* stage_name(Stage stage) {
  switch (stage) {
    case Stage::kFarm: return "FARM";
    case Stage::kProcessing: return "PROCESSING";
    case Stage::kShipping: return "SHIPPING";
    case Stage::kRetail: return "RETAIL";
  }
  return "FARM";
}

Stage stage_from_name(const std::string& name) {
  if (name == "FARM") return Stage::kFarm;
  if (name == "PROCESSING") return Stage::kProcessing;
  if (name == "SHIPPING") return Stage::kShipping;
  if (name == "RETAIL") return Stage::kRetail;
  raise(Errc::kParse, "unknown stage: " + name);
}

void check_event(const SupplyChainEvent& event) {
  if (event.stage != Stage::kRetail && !event.declared_label.empty()) {
    raise(Errc::kInvalidArgument,
          "declared_label must be empty before the RETAIL stage");
  }
  std::set<std::string> seen;
  for (const auto& ing : event.ingredients_added) {
    if (!seen.insert(ing).second) {
      raise(Errc::kInvalidArgument,
            "duplicate ingredient in one event: " + ing);
    }
  }
}

// --- Canonical encoding ----------------------------------------------------

namespace {

void encode_event(ByteWriter& w, const SupplyChainEvent& e) {
  w.str(e.item_id);
  w.u8(static_cast<uint8_t>(e.stage));
  w.str(e.batch_number);
  w.str(e.origin);
  w.i32(e.storage_temp);
  w.u64(e.expiry);
  w.u64(e.event_time);
  w.str_list(e.ingredients_added);
  w.str_list(e.declared_label);
}

void encode_attestation(ByteWriter& w, const BiometricAttestation& a) {
  w.u32(a.actor_id);
  w.u32(a.encrypted_probe.key_id);
  for (int16_t v : a.encrypted_probe.values) w.i16(v);
  w.u64(a.match_score);
  w.boolean(a.accepted);
  w.u32(a.verifier_node);
  w.u64(a.nonce);
}

void encode_header(ByteWriter& w, const BlockHeader& h) {
  w.u32(h.version);
  w.u64(h.height);
  w.raw(h.prev_hash);
  w.raw(h.merkle_root);
  w.u64(h.timestamp);
  w.u32(h.proposer_id);
}

SupplyChainEvent decode_event(ByteReader& r) {
  SupplyChainEvent e;
  e.item_id = r.str();
  uint8_t stage = r.u8();
  if (stage > 3) raise(Errc::kParse, "stage out of range");
  e.stage = static_cast<Stage>(stage);
  e.batch_number = r.str();
  e.origin = r.str();
  e.storage_temp = r.i32();
  e.expiry = r.u64();
  e.event_time = r.u64();
  e.ingredients_added = r.str_list();
  e.declared_label = r.str_list();
  check_event(e);
  return e;
}

BiometricAttestation decode_attestation(ByteReader& r) {
  BiometricAttestation a;
  a.actor_id = r.u32();
  a.encrypted_probe.key_id = r.u32();
  for (auto& v : a.encrypted_probe.values) v = r.i16();
  a.match_score = r.u64();
  a.accepted = r.boolean();
  a.verifier_node = r.u32();
  a.nonce = r.u64();
  return a;
}

BlockHeader decode_header(ByteReader& r) {
  BlockHeader h;
  h.version = r.u32();
  h.height = r.u64();
  auto prev = r.raw(32);
  std::copy(prev.begin(), prev.end(), h.prev_hash.begin());
  auto root = r.raw(32);
  std::copy(root.begin(), root.end(), h.merkle_root.begin());
  h.timestamp = r.u64();
  h.proposer_id = r.u32();
  return h;
}

Transaction decode_transaction(ByteReader& r) {
  Transaction tx;
  tx.event = decode_event(r);
  tx.attestation = decode_attestation(r);
  auto id = r.raw(32);
  std::copy(id.begin(), id.end(), tx.tx_id.begin());
  return tx;
}

}  // namespace

Bytes canonical_encode(const SupplyChainEvent& event) {
  ByteWriter w;
  encode_event(w, event);
  return w.take();
}

Bytes canonical_encode(const BiometricAttestation& att) {
  ByteWriter w;
  encode_attestation(w, att);
  return w.take();
}

Bytes canonical_encode(const Transaction& tx) {
  ByteWriter w;
  encode_event(w, tx.event);
  encode_attestation(w, tx.attestation);
  return w.take();
}

Bytes canonical_encode(const BlockHeader& header) {
  ByteWriter w;
  encode_header(w, header);
  return w.take();
}

Hash32 compute_tx_id(const Transaction& tx) {
  return sha256(canonical_encode(tx));
}

Transaction seal_transaction(SupplyChainEvent event, BiometricAttestation att) {
  Transaction tx;
  tx.event = std::move(event);
  tx.attestation = std::move(att);
  tx.tx_id = compute_tx_id(tx);
  return tx;
}

Hash32 merkle_root(const std::vector<Transaction>& txs) {
  if (txs.empty()) return Hash32{};
  std::vector<Hash32> level;
  level.reserve(txs.size());
  for (const auto& tx : txs) {
    level.push_back(sha256_tagged(0x00, canonical_encode(tx)));
  }
  while (level.size() > 1) {
    if (level.size() % 2 != 0) level.push_back(level.back());
    std::vector<Hash32> next;
    next.reserve(level.size() / 2);
    for (size_t i = 0; i < level.size(); i += 2) {
      Bytes pair;
      pair.reserve(64);
      pair.insert(pair.end(), level[i].begin(), level[i].end());
      pair.insert(pair.end(), level[i + 1].begin(), level[i + 1].end());
      next.push_back(sha256_tagged(0x01, pair));
    }
    level = std::move(next);
  }
  return level[0];
}

Hash32 block_hash(const BlockHeader& header) {
  return sha256(canonical_encode(header));
}

const BlockHeader& genesis_header() {
  static const BlockHeader kGenesis{};  // version 1, all other fields zero
  return kGenesis;
}

Block make_genesis() { return Block{genesis_header(), {}}; }

Block make_block(const Block& prev, std::vector<Transaction> txs,
                 uint64_t timestamp, uint32_t proposer_id) {
  if (txs.empty()) raise(Errc::kEmptyBlock, "a block needs transactions");
  for (size_t i = 0; i < txs.size(); ++i) {
    if (!txs[i].attestation.accepted) {
      raise(Errc::kUnattestedTx,
            "transaction " + std::to_string(i) + " has a rejected attestation");
    }
  }
  Block b;
  b.header.version = 1;
  b.header.height = prev.header.height + 1;
  b.header.prev_hash = block_hash(prev.header);
  b.header.merkle_root = merkle_root(txs);
  b.header.timestamp = timestamp;
  b.header.proposer_id = proposer_id;
  b.transactions = std::move(txs);
  return b;
}

const char* validation_failure_name(ValidationFailure f) {
  switch (f) {
    case ValidationFailure::kBadGenesis: return "BAD_GENESIS";
    case ValidationFailure::kBadEmpty: return "BAD_EMPTY";
    case ValidationFailure::kBadHeight: return "BAD_HEIGHT";
    case ValidationFailure::kBadLink: return "BAD_LINK";
    case ValidationFailure::kBadMerkle: return "BAD_MERKLE";
    case ValidationFailure::kBadTxid: return "BAD_TXID";
    case ValidationFailure::kBadAttestation: return "BAD_ATTESTATION";
    case ValidationFailure::kBadHead: return "BAD_HEAD";
  }
  return "BAD_GENESIS";
}

std::optional<BlockFailure> validate_block(const Block& block,
                                           const Block& prev,
                                           const ActorRegistry& registry,
                                           uint64_t threshold) {
  if (block.transactions.empty()) {
    return BlockFailure{ValidationFailure::kBadEmpty};
  }
  if (block.header.height != prev.header.height + 1) {
    return BlockFailure{ValidationFailure::kBadHeight};
  }
  if (block.header.prev_hash != block_hash(prev.header)) {
    return BlockFailure{ValidationFailure::kBadLink};
  }
  if (block.header.merkle_root != merkle_root(block.transactions)) {
    return BlockFailure{ValidationFailure::kBadMerkle};
  }
  for (size_t i = 0; i < block.transactions.size(); ++i) {
    if (compute_tx_id(block.transactions[i]) != block.transactions[i].tx_id) {
      return BlockFailure{ValidationFailure::kBadTxid,
                          static_cast<uint32_t>(i)};
    }
  }
  for (size_t i = 0; i < block.transactions.size(); ++i) {
    const BiometricAttestation& att = block.transactions[i].attestation;
    const ActorRecord* rec = registry.find(att.actor_id);
    bool ok = false;
    if (rec != nullptr &&
        rec->enrolled.key_id == att.encrypted_probe.key_id) {
      MatchDecision d = verify(att.encrypted_probe, *rec, threshold);
      ok = d.score == att.match_score && d.accepted == att.accepted &&
           att.accepted;
    }
    if (!ok) {
      return BlockFailure{ValidationFailure::kBadAttestation,
                          static_cast<uint32_t>(i)};
    }
  }
  return std::nullopt;
}

Chain::Chain() { blocks_.push_back(make_genesis()); }

size_t Chain::transaction_count() const {
  size_t n = 0;
  for (const auto& b : blocks_) n += b.transactions.size();
  return n;
}

Chain Chain::from_blocks(std::vector<Block> blocks) {
  if (blocks.empty()) {
    raise(Errc::kParse, "a chain needs at least the genesis block");
  }
  Chain c;
  c.blocks_ = std::move(blocks);
  return c;
}

std::optional<ChainFailure> validate_chain(
    const Chain& chain, const ActorRegistry& registry, uint64_t threshold,
    const std::optional<Hash32>& expected_head) {
  const auto& blocks = chain.blocks();
  const Block& genesis = blocks[0];
  if (genesis.header != genesis_header() || !genesis.transactions.empty()) {
    return ChainFailure{0, ValidationFailure::kBadGenesis};
  }
  for (size_t i = 1; i < blocks.size(); ++i) {
    if (auto f = validate_block(blocks[i], blocks[i - 1], registry,
                                threshold)) {
      return ChainFailure{blocks[i - 1].header.height + 1, f->kind,
                          f->tx_index};
    }
  }
  if (expected_head && block_hash(blocks.back().header) != *expected_head) {
    return ChainFailure{blocks.back().header.height,
                        ValidationFailure::kBadHead};
  }
  return std::nullopt;
}

// --- Chain file --------------------------------------------------------------

namespace {
constexpr char kMagic[4] = {'B', 'B', 'C', '1'};
}

Bytes encode_chain(const Chain& chain) {
  ByteWriter w;
  w.raw(std::span<const uint8_t>(
      reinterpret_cast<const uint8_t*>(kMagic), sizeof(kMagic)));
  w.u32(static_cast<uint32_t>(chain.blocks().size()));
  for (const Block& b : chain.blocks()) {
    w.raw(canonical_encode(b.header));
    w.u32(static_cast<uint32_t>(b.transactions.size()));
    for (const Transaction& tx : b.transactions) {
      w.raw(canonical_encode(tx));
      w.raw(tx.tx_id);
    }
  }
  return w.take();
}

Chain decode_chain(std::span<const uint8_t> data) {
  ByteReader r(data);
  auto magic = r.raw(4);
  if (!std::equal(magic.begin(), magic.end(),
                  reinterpret_cast<const uint8_t*>(kMagic))) {
    raise(Errc::kBadMagic, "not a BBC1 chain file");
  }
  uint32_t count = r.u32();
  std::vector<Block> blocks;
  blocks.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    Block b;
    b.header = decode_header(r);
    uint32_t txs = r.u32();
    b.transactions.reserve(txs);
    for (uint32_t t = 0; t < txs; ++t) {
      b.transactions.push_back(decode_transaction(r));
    }
    blocks.push_back(std::move(b));
  }
  if (!r.done()) raise(Errc::kParse, "trailing bytes after chain data");
  return Chain::from_blocks(std::move(blocks));
}

std::vector<std::pair<size_t, size_t>> chain_block_spans(
    std::span<const uint8_t> data) {
  ByteReader r(data);
  auto magic = r.raw(4);
  if (!std::equal(magic.begin(), magic.end(),
                  reinterpret_cast<const uint8_t*>(kMagic))) {
    raise(Errc::kBadMagic, "not a BBC1 chain file");
  }
  uint32_t count = r.u32();
  std::vector<std::pair<size_t, size_t>> spans;
  spans.reserve(count);
  for (uint32_t i = 0; i < count; ++i) {
    size_t start = r.offset();
    (void)decode_header(r);
    uint32_t txs = r.u32();
    for (uint32_t t = 0; t < txs; ++t) (void)decode_transaction(r);
    spans.emplace_back(start, r.offset() - start);
  }
  return spans;
}

void save_chain(const Chain& chain, const std::string& path) {
  Bytes data = encode_chain(chain);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::kIo, "cannot open for writing: " + path);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) raise(Errc::kIo, "write failed: " + path);
}

Chain load_chain(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::kIo, "cannot open: " + path);
  Bytes data((std::istreambuf_iterator<char>(in)),
             std::istreambuf_iterator<char>());
  return decode_chain(data);
}

// --- JSON mirror -------------------------------------------------------------

namespace {

json event_to_json_obj(const SupplyChainEvent& e) {
  json j;
  j["item_id"] = e.item_id;
  j["stage"] = stage_name(e.stage);
  j["batch_number"] = e.batch_number;
  j["origin"] = e.origin;
  j["storage_temp"] = e.storage_temp;
  j["expiry"] = e.expiry;
  j["event_time"] = e.event_time;
  j["ingredients_added"] = e.ingredients_added;
  j["declared_label"] = e.declared_label;
  return j;
}

SupplyChainEvent event_from_json_obj(const json& j) {
  SupplyChainEvent e;
  e.item_id = j.at("item_id").get<std::string>();
  e.stage = stage_from_name(j.at("stage").get<std::string>());
  e.batch_number = j.at("batch_number").get<std::string>();
  e.origin = j.at("origin").get<std::string>();
  e.storage_temp = j.at("storage_temp").get<int32_t>();
  e.expiry = j.at("expiry").get<uint64_t>();
  e.event_time = j.at("event_time").get<uint64_t>();
  e.ingredients_added =
      j.at("ingredients_added").get<std::vector<std::string>>();
  e.declared_label = j.at("declared_label").get<std::vector<std::string>>();
  check_event(e);
  return e;
}

json attestation_to_json_obj(const BiometricAttestation& a) {
  json values = json::array();
  for (int16_t v : a.encrypted_probe.values) values.push_back(v);
  json j;
  j["actor_id"] = a.actor_id;
  j["encrypted_probe"] = {{"key_id", a.encrypted_probe.key_id},
                          {"values", values}};
  j["match_score"] = a.match_score;
  j["accepted"] = a.accepted;
  j["verifier_node"] = a.verifier_node;
  j["nonce"] = a.nonce;
  return j;
}

BiometricAttestation attestation_from_json_obj(const json& j) {
  BiometricAttestation a;
  a.actor_id = j.at("actor_id").get<uint32_t>();
  const json& probe = j.at("encrypted_probe");
  a.encrypted_probe.key_id = probe.at("key_id").get<uint32_t>();
  const json& values = probe.at("values");
  if (!values.is_array() || values.size() != kTemplateDim) {
    raise(Errc::kParse, "encrypted_probe.values must have 64 entries");
  }
  for (size_t i = 0; i < kTemplateDim; ++i) {
    int64_t v = values[i].get<int64_t>();
    if (v < kValueMin || v > kValueMax) {
      raise(Errc::kParse, "encrypted_probe value out of range");
    }
    a.encrypted_probe.values[i] = static_cast<int16_t>(v);
  }
  a.match_score = j.at("match_score").get<uint64_t>();
  a.accepted = j.at("accepted").get<bool>();
  a.verifier_node = j.at("verifier_node").get<uint32_t>();
  a.nonce = j.at("nonce").get<uint64_t>();
  return a;
}

}  // namespace

std::string chain_to_json(const Chain& chain) {
  json blocks = json::array();
  for (const Block& b : chain.blocks()) {
    json txs = json::array();
    for (const Transaction& tx : b.transactions) {
      json t;
      t["event"] = event_to_json_obj(tx.event);
      t["attestation"] = attestation_to_json_obj(tx.attestation);
      t["tx_id"] = hash_hex(tx.tx_id);
      txs.push_back(t);
    }
    json h;
    h["version"] = b.header.version;
    h["height"] = b.header.height;
    h["prev_hash"] = hash_hex(b.header.prev_hash);
    h["merkle_root"] = hash_hex(b.header.merkle_root);
    h["timestamp"] = b.header.timestamp;
    h["proposer_id"] = b.header.proposer_id;
    blocks.push_back(json{{"header", h}, {"transactions", txs}});
  }
  json j;
  j["blocks"] = blocks;
  return j.dump(2);
}

namespace {

Chain chain_from_json_checked(const json& j) {
  std::vector<Block> blocks;
  for (const json& jb : j["blocks"]) {
    Block b;
    const json& h = jb.at("header");
    b.header.version = h.at("version").get<uint32_t>();
    b.header.height = h.at("height").get<uint64_t>();
    b.header.prev_hash = hash_from_hex(h.at("prev_hash").get<std::string>());
    b.header.merkle_root =
        hash_from_hex(h.at("merkle_root").get<std::string>());
    b.header.timestamp = h.at("timestamp").get<uint64_t>();
    b.header.proposer_id = h.at("proposer_id").get<uint32_t>();
    for (const json& jt : jb.at("transactions")) {
      Transaction tx;
      tx.event = event_from_json_obj(jt.at("event"));
      tx.attestation = attestation_from_json_obj(jt.at("attestation"));
      tx.tx_id = hash_from_hex(jt.at("tx_id").get<std::string>());
      b.transactions.push_back(std::move(tx));
    }
    blocks.push_back(std::move(b));
  }
  return Chain::from_blocks(std::move(blocks));
}

}  // namespace

Chain chain_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) raise(Errc::kParse, "invalid chain JSON");
  if (!j.contains("blocks") || !j["blocks"].is_array()) {
    raise(Errc::kParse, "chain JSON missing blocks array");
  }
  try {
    return chain_from_json_checked(j);
  } catch (const json::exception& e) {
    raise(Errc::kParse, std::string("chain JSON: ") + e.what());
  }
}

}  // namespace bbc

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

#ifndef BBC_SRC_LEDGER_HPP
#define BBC_SRC_LEDGER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biometric.hpp"
#include "bytes.hpp"

namespace bbc {

enum class Stage : uint8_t {
  kFarm = 0,
  kProcessing = 1,
  kShipping = 2,
  kRetail = 3,
};

const char* stage_name(Stage stage);
Stage stage_from_name(const std::string& name);

/// One logistics step. Temperatures are centi-degrees Celsius; expiry and
/// event_time are simulation ticks.
struct SupplyChainEvent {
  std::string item_id;
  Stage stage = Stage::kFarm;
  std::string batch_number;
  std::string origin;
  int32_t storage_temp = 0;
  uint64_t expiry = 0;
  uint64_t event_time = 0;
  std::vector<std::string> ingredients_added;
  std::vector<std::string> declared_label;  // non-empty only at RETAIL

  bool operator==(const SupplyChainEvent&) const = default;
};

/// Throws kInvalidArgument unless: declared_label empty below RETAIL and
/// ingredients_added entries unique.
void check_event(const SupplyChainEvent& event);

/// The per-transaction biometric sign-off: the scrambled probe plus the
/// verifier's verdict, all re-derivable by any validator holding the
/// registry.
struct BiometricAttestation {
  uint32_t actor_id = 0;
  EncryptedTemplate encrypted_probe;
  uint64_t match_score = 0;
  bool accepted = false;
  uint32_t verifier_node = 0;
  uint64_t nonce = 0;

  bool operator==(const BiometricAttestation&) const = default;
};

struct Transaction {
  SupplyChainEvent event;
  BiometricAttestation attestation;
  Hash32 tx_id{};  // SHA-256 of canonical bytes (tx_id itself excluded)

  bool operator==(const Transaction&) const = default;
};

struct BlockHeader {
  uint32_t version = 1;
  uint64_t height = 0;
  Hash32 prev_hash{};
  Hash32 merkle_root{};
  uint64_t timestamp = 0;
  uint32_t proposer_id = 0;

  bool operator==(const BlockHeader&) const = default;
};

struct Block {
  BlockHeader header;
  std::vector<Transaction> transactions;

  bool operator==(const Block&) const = default;
};

// --- Canonical encoding ----------------------------------------------------
// Fields in declared order; integers big-endian fixed width; strings as u32
// length + UTF-8 bytes; lists as u32 count + elements; enums as u8;
// EncryptedTemplate as u32 key_id + 64 big-endian i16; bool as one byte.

Bytes canonical_encode(const SupplyChainEvent& event);
Bytes canonical_encode(const BiometricAttestation& att);
Bytes canonical_encode(const Transaction& tx);  // excludes tx_id
Bytes canonical_encode(const BlockHeader& header);  // always 88 bytes

/// SHA-256 of the transaction's canonical bytes.
Hash32 compute_tx_id(const Transaction& tx);

/// Convenience: fills tx_id from the canonical bytes.
Transaction seal_transaction(SupplyChainEvent event, BiometricAttestation att);

/// Merkle root with domain separation: leaf = SHA-256(0x00 || canonical tx),
/// internal = SHA-256(0x01 || left || right); an odd level duplicates its
/// last node; the empty list hashes to 32 zero bytes.
Hash32 merkle_root(const std::vector<Transaction>& txs);

Hash32 block_hash(const BlockHeader& header);

Block make_genesis();
const BlockHeader& genesis_header();

/// Builds the next block. Throws kUnattestedTx if any attestation has
/// accepted == false and kEmptyBlock for an empty transaction list.
Block make_block(const Block& prev, std::vector<Transaction> txs,
                 uint64_t timestamp, uint32_t proposer_id);

// --- Validation --------------------------------------------------------------

enum class ValidationFailure : uint8_t {
  kBadGenesis,   // genesis block deviates from the fixed form
  kBadEmpty,     // non-genesis block with no transactions
  kBadHeight,
  kBadLink,
  kBadMerkle,
  kBadTxid,
  kBadAttestation,
  kBadHead,      // head hash does not match the supplied anchor
};

const char* validation_failure_name(ValidationFailure f);

struct BlockFailure {
  ValidationFailure kind;
  uint32_t tx_index = 0;  // offending transaction where applicable
};

/// Checks, in order: non-empty; height continuity; prev_hash linkage;
/// merkle_root recomputation; every tx_id recomputation; every attestation
/// re-verification (score and accepted must reproduce exactly, and accepted
/// must be true). Returns the first failure or nullopt for OK.
std::optional<BlockFailure> validate_block(const Block& block,
                                           const Block& prev,
                                           const ActorRegistry& registry,
                                           uint64_t threshold);

class Chain {
 public:
  /// A fresh chain holding only the genesis block.
  Chain();

  const std::vector<Block>& blocks() const { return blocks_; }
  const Block& tip() const { return blocks_.back(); }
  uint64_t height() const { return blocks_.back().header.height; }
  size_t transaction_count() const;

  void append(Block block) { blocks_.push_back(std::move(block)); }

  static Chain from_blocks(std::vector<Block> blocks);

  bool operator==(const Chain&) const = default;

 private:
  std::vector<Block> blocks_;
};

struct ChainFailure {
  uint64_t height;
  ValidationFailure kind;
  uint32_t tx_index = 0;
};

/// Whole-chain validation: genesis fixed form first, then validate_block
/// per subsequent block. When expected_head is given, the tip hash is
/// checked last; that anchor is what makes mutations of free fields in the
/// final header (timestamp, proposer) detectable, since no later block
/// links over them.
std::optional<ChainFailure> validate_chain(
    const Chain& chain, const ActorRegistry& registry, uint64_t threshold,
    const std::optional<Hash32>& expected_head = std::nullopt);

// --- Chain file format -------------------------------------------------------
// Binary (hashing/interchange truth): magic "BBC1", u32 block count, then
// per block: 88 canonical header bytes, u32 tx count, and per transaction
// its canonical bytes followed by the 32-byte tx_id.

Bytes encode_chain(const Chain& chain);
Chain decode_chain(std::span<const uint8_t> data);

/// Byte ranges (offset, length) of each block inside encode_chain output;
/// used by the tamper demo to address "--block N --offset K".
std::vector<std::pair<size_t, size_t>> chain_block_spans(
    std::span<const uint8_t> data);

void save_chain(const Chain& chain, const std::string& path);
Chain load_chain(const std::string& path);

/// Lossless JSON mirror of the binary format (hashes hex-encoded).
std::string chain_to_json(const Chain& chain);
Chain chain_from_json(const std::string& text);

}  // namespace bbc

#endif  // BBC_SRC_LEDGER_HPP

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

#ifndef BBC_SRC_CONSENSUS_HPP
#define BBC_SRC_CONSENSUS_HPP

#include <map>
#include <memory>
#include <set>
#include <variant>
#include <vector>

#include "ledger.hpp"

namespace bbc {

enum class Behavior : uint8_t {
  kHonest = 0,
  kCrashed = 1,
  kEquivocator = 2,
  kTamperer = 3,
  kVoteFlipper = 4,
};

const char* behavior_name(Behavior b);
Behavior behavior_from_name(const std::string& name);

/// Quorum threshold: ⌊2n/3⌋ + 1 approve votes commit a block.
inline uint32_t quorum_size(uint32_t node_count) {
  return 2 * node_count / 3 + 1;
}

/// Round-robin proposer rotation over (height, view).
inline uint32_t proposer_for(uint64_t height, uint32_t view,
                             uint32_t node_count) {
  return static_cast<uint32_t>((height + view) % node_count);
}

// --- Message vocabulary ------------------------------------------------------

struct Proposal {
  Block block;
  uint32_t proposer_id = 0;
  uint32_t view = 0;
};

struct Vote {
  uint32_t voter_id = 0;
  uint64_t height = 0;
  Hash32 block_hash{};
  bool approve = false;
};

struct Commit {
  uint64_t height = 0;
  Hash32 block_hash{};
};

/// Transaction gossip: a node that accepts a submission shares it so any
/// later proposer can include it (and a faulty proposer cannot starve it).
struct Submit {
  Transaction tx;
};

struct Message {
  uint32_t from = 0;
  uint32_t to = 0;
  std::variant<Proposal, Vote, Commit, Submit> body;
};

const char* message_kind_name(const Message& m);

enum class ProposeStatus {
  kProposed,
  kNotMyTurn,
  kNoTxs,
  kAlreadyProposed,
  kSilent,  // crashed nodes propose nothing
};

struct ProposeOutcome {
  ProposeStatus status = ProposeStatus::kSilent;
  std::vector<Message> messages;
};

// --- Node state machine --------------------------------------------------------

/// One consensus participant. Single-threaded; driven entirely by the
/// simulator's event loop through on_message/on_timeout/submit. Commits
/// happen only on the node's own quorum observation; a commit broadcasts
/// COMMIT plus a re-broadcast of the winning PROPOSAL so lagging nodes can
/// fetch the block and converge.
class Node {
 public:
  Node(uint32_t node_id, uint32_t node_count, Behavior behavior,
       std::shared_ptr<const ActorRegistry> registry, uint64_t threshold);

  /// Local submission entry point: queues the transaction and gossips it.
  std::vector<Message> submit(const Transaction& tx, uint64_t now);

  std::vector<Message> on_message(const Message& m, uint64_t now);

  /// View change: proposer rotates, pending transactions are retained.
  std::vector<Message> on_timeout(uint64_t now);

  /// Explicit proposal attempt (the simulator calls this via the submit /
  /// commit / timeout paths; tests may call it directly).
  ProposeOutcome propose(uint64_t now);

  /// True while the node expects progress (pending work or a proposal in
  /// flight for the next height); the simulator keeps a timeout armed
  /// exactly while this holds.
  bool wants_timer() const;

  uint32_t node_id() const { return node_id_; }
  Behavior behavior() const { return behavior_; }
  const Chain& head() const { return head_; }
  uint32_t view() const { return view_; }
  const std::vector<Transaction>& pending() const { return pending_; }
  const std::map<uint64_t, Hash32>& committed_at() const {
    return committed_at_;
  }
  const std::map<std::pair<uint64_t, Hash32>, std::set<uint32_t>>&
  vote_tally() const {
    return vote_tally_;
  }

 private:
  std::vector<Message> handle_proposal(const Proposal& p, uint64_t now);
  std::vector<Message> handle_vote(const Vote& v, uint64_t now);
  std::vector<Message> handle_commit(const Commit& c, uint64_t now);
  std::vector<Message> handle_submit(const Submit& s, uint64_t now);

  /// Commits (height, hash) if this node holds the block and its own tally
  /// reached quorum; emits COMMIT + proposal re-broadcast + any follow-up
  /// proposal for the next height.
  std::vector<Message> maybe_commit(uint64_t height, const Hash32& hash,
                                    uint64_t now);

  void broadcast(std::vector<Message>& out,
                 const std::variant<Proposal, Vote, Commit, Submit>& body,
                 bool include_self);
  bool known_tx(const Hash32& tx_id) const;

  uint32_t node_id_;
  uint32_t node_count_;
  Behavior behavior_;
  std::shared_ptr<const ActorRegistry> registry_;
  uint64_t threshold_;

  Chain head_;
  std::vector<Transaction> pending_;
  uint32_t view_ = 0;
  bool in_flight_ = false;

  std::map<std::pair<uint64_t, Hash32>, std::set<uint32_t>> vote_tally_;
  std::map<std::pair<uint64_t, Hash32>, Proposal> seen_proposals_;
  std::map<uint64_t, Hash32> committed_at_;
  std::set<std::pair<uint64_t, uint32_t>> proposed_at_;  // (height, view)
  std::set<Hash32> committed_tx_ids_;
};

}  // namespace bbc

#endif  // BBC_SRC_CONSENSUS_HPP

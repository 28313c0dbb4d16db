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

#include "consensus.hpp"

#include <algorithm>

namespace bbc {

const char* behavior_name(Behavior b) {
  switch (b) {
    case Behavior::kHonest: return "HONEST";
    case Behavior::kCrashed: return "CRASHED";
    case Behavior::kEquivocator: return "EQUIVOCATOR";
    case Behavior::kTamperer: return "TAMPERER";
    case Behavior::kVoteFlipper: return "VOTE_FLIPPER";
  }
  return "HONEST";
}

Behavior behavior_from_name(const std::string& name) {
  if (name == "HONEST") return Behavior::kHonest;
  if (name == "CRASHED") return Behavior::kCrashed;
  if (name == "EQUIVOCATOR") return Behavior::kEquivocator;
  if (name == "TAMPERER") return Behavior::kTamperer;
  if (name == "VOTE_FLIPPER") return Behavior::kVoteFlipper;
  raise(Errc::kParse, "unknown behavior: " + name);
}

const char* message_kind_name(const Message& m) {
  switch (m.body.index()) {
    case 0: return "PROPOSAL";
    case 1: return "VOTE";
    case 2: return "COMMIT";
    case 3: return "SUBMIT";
  }
  return "?";
}

Node::Node(uint32_t node_id, uint32_t node_count, Behavior behavior,
           std::shared_ptr<const ActorRegistry> registry, uint64_t threshold)
    : node_id_(node_id),
      node_count_(node_count),
      behavior_(behavior),
      registry_(std::move(registry)),
      threshold_(threshold) {}

bool Node::wants_timer() const {
  if (behavior_ == Behavior::kCrashed) return false;
  return !pending_.empty() || in_flight_;
}

bool Node::known_tx(const Hash32& tx_id) const {
  if (committed_tx_ids_.contains(tx_id)) return true;
  return std::any_of(pending_.begin(), pending_.end(),
                     [&](const Transaction& t) { return t.tx_id == tx_id; });
}

void Node::broadcast(std::vector<Message>& out,
                     const std::variant<Proposal, Vote, Commit, Submit>& body,
                     bool include_self) {
  for (uint32_t to = 0; to < node_count_; ++to) {
    if (!include_self && to == node_id_) continue;
    out.push_back(Message{node_id_, to, body});
  }
}

std::vector<Message> Node::submit(const Transaction& tx, uint64_t now) {
  if (behavior_ == Behavior::kCrashed) return {};
  std::vector<Message> out;
  if (!known_tx(tx.tx_id)) {
    pending_.push_back(tx);
    broadcast(out, Submit{tx}, /*include_self=*/false);
  }
  ProposeOutcome p = propose(now);
  out.insert(out.end(), p.messages.begin(), p.messages.end());
  return out;
}

std::vector<Message> Node::on_message(const Message& m, uint64_t now) {
  if (behavior_ == Behavior::kCrashed) return {};
  if (const auto* p = std::get_if<Proposal>(&m.body)) {
    return handle_proposal(*p, now);
  }
  if (const auto* v = std::get_if<Vote>(&m.body)) return handle_vote(*v, now);
  if (const auto* c = std::get_if<Commit>(&m.body)) {
    return handle_commit(*c, now);
  }
  return handle_submit(std::get<Submit>(m.body), now);
}

std::vector<Message> Node::handle_proposal(const Proposal& p, uint64_t now) {
  const uint64_t height = p.block.header.height;
  if (height != head_.height() + 1) return {};  // stale or future: drop
  if (p.proposer_id != proposer_for(height, p.view, node_count_) ||
      p.block.header.proposer_id != p.proposer_id) {
    return {};  // not that view's proposer: drop
  }
  const Hash32 hash = block_hash(p.block.header);
  const bool valid =
      !validate_block(p.block, head_.tip(), *registry_, threshold_).has_value();
  if (valid) {
    seen_proposals_.emplace(std::make_pair(height, hash), p);
    in_flight_ = true;
  }
  bool approve = valid;
  if (behavior_ == Behavior::kVoteFlipper) approve = !approve;
  std::vector<Message> out;
  broadcast(out, Vote{node_id_, height, hash, approve}, /*include_self=*/true);
  auto extra = maybe_commit(height, hash, now);
  out.insert(out.end(), extra.begin(), extra.end());
  return out;
}

std::vector<Message> Node::handle_vote(const Vote& v, uint64_t now) {
  if (v.height != head_.height() + 1) return {};  // settled or future: drop
  if (!v.approve) return {};  // only approvals count toward the quorum
  vote_tally_[{v.height, v.block_hash}].insert(v.voter_id);
  return maybe_commit(v.height, v.block_hash, now);
}

std::vector<Message> Node::handle_commit(const Commit& c, uint64_t now) {
  if (c.height != head_.height() + 1) return {};
  // Advisory: re-check our own tally; never commit on someone else's word.
  return maybe_commit(c.height, c.block_hash, now);
}

std::vector<Message> Node::handle_submit(const Submit& s, uint64_t now) {
  std::vector<Message> out;
  if (!known_tx(s.tx.tx_id)) pending_.push_back(s.tx);
  ProposeOutcome p = propose(now);
  out.insert(out.end(), p.messages.begin(), p.messages.end());
  return out;
}

std::vector<Message> Node::maybe_commit(uint64_t height, const Hash32& hash,
                                        uint64_t now) {
  if (committed_at_.contains(height)) return {};
  auto tally = vote_tally_.find({height, hash});
  if (tally == vote_tally_.end() ||
      tally->second.size() < quorum_size(node_count_)) {
    return {};
  }
  auto seen = seen_proposals_.find({height, hash});
  if (seen == seen_proposals_.end()) return {};  // quorum but no block yet

  const Proposal winning = seen->second;
  head_.append(winning.block);
  committed_at_[height] = hash;
  for (const Transaction& tx : winning.block.transactions) {
    committed_tx_ids_.insert(tx.tx_id);
    std::erase_if(pending_,
                  [&](const Transaction& t) { return t.tx_id == tx.tx_id; });
  }
  // Settled rounds are dropped from the tallies and proposal store.
  const auto upper = std::make_pair(height + 1, Hash32{});
  vote_tally_.erase(vote_tally_.begin(), vote_tally_.lower_bound(upper));
  seen_proposals_.erase(seen_proposals_.begin(),
                        seen_proposals_.lower_bound(upper));
  view_ = 0;
  in_flight_ = false;

  std::vector<Message> out;
  broadcast(out, Commit{height, hash}, /*include_self=*/false);
  // Re-broadcast the winning proposal so nodes that never received the
  // block can validate and commit it from their own tally.
  broadcast(out, winning, /*include_self=*/false);
  ProposeOutcome next = propose(now);
  out.insert(out.end(), next.messages.begin(), next.messages.end());
  return out;
}

std::vector<Message> Node::on_timeout(uint64_t now) {
  if (behavior_ == Behavior::kCrashed) return {};
  view_ += 1;
  in_flight_ = false;
  ProposeOutcome p = propose(now);
  return p.messages;
}

ProposeOutcome Node::propose(uint64_t now) {
  if (behavior_ == Behavior::kCrashed) return {ProposeStatus::kSilent, {}};
  const uint64_t height = head_.height() + 1;
  if (proposer_for(height, view_, node_count_) != node_id_) {
    return {ProposeStatus::kNotMyTurn, {}};
  }
  if (pending_.empty()) return {ProposeStatus::kNoTxs, {}};
  if (!proposed_at_.insert({height, view_}).second) {
    return {ProposeStatus::kAlreadyProposed, {}};
  }

  ProposeOutcome out;
  out.status = ProposeStatus::kProposed;
  switch (behavior_) {
    case Behavior::kEquivocator: {
      // Two valid blocks differing in timestamp; each peer sees only one,
      // and the equivocator endorses both.
      Block a = make_block(head_.tip(), pending_, now, node_id_);
      Block b = make_block(head_.tip(), pending_, now + 1, node_id_);
      Proposal pa{a, node_id_, view_};
      Proposal pb{b, node_id_, view_};
      std::vector<uint32_t> peers;
      for (uint32_t id = 0; id < node_count_; ++id) {
        if (id != node_id_) peers.push_back(id);
      }
      for (size_t i = 0; i < peers.size(); ++i) {
        out.messages.push_back(
            Message{node_id_, peers[i], i < (peers.size() + 1) / 2 ? pa : pb});
      }
      broadcast(out.messages,
                Vote{node_id_, height, block_hash(a.header), true}, true);
      broadcast(out.messages,
                Vote{node_id_, height, block_hash(b.header), true}, true);
      break;
    }
    case Behavior::kTamperer: {
      Block blk = make_block(head_.tip(), pending_, now, node_id_);
      // One transaction byte corrupted after building: the header no longer
      // matches the body.
      blk.transactions[0].attestation.nonce ^= 1;
      broadcast(out.messages, Proposal{blk, node_id_, view_}, true);
      break;
    }
    default: {
      Block blk = make_block(head_.tip(), pending_, now, node_id_);
      broadcast(out.messages, Proposal{blk, node_id_, view_}, true);
      break;
    }
  }
  return out;
}

}  // namespace bbc

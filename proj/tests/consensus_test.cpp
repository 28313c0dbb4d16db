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

#include <set>

#include "consensus.hpp"
#include "test_support.hpp"

using namespace bbc;

namespace {

struct Cluster {
  test::World world;
  std::vector<Node> nodes;

  explicit Cluster(std::vector<Behavior> behaviors)
      : world(test::make_world()) {
    for (uint32_t id = 0; id < behaviors.size(); ++id) {
      nodes.emplace_back(id, static_cast<uint32_t>(behaviors.size()),
                         behaviors[id], world.registry, kDefaultThreshold);
    }
  }
};

const Proposal& proposal_of(const Message& m) {
  return std::get<Proposal>(m.body);
}

/// Applies `votes` approve-votes for (height, hash) from distinct voters.
std::vector<Message> feed_votes(Node& node, uint64_t height,
                                const Hash32& hash,
                                const std::vector<uint32_t>& voters,
                                uint64_t now) {
  std::vector<Message> out;
  for (uint32_t v : voters) {
    auto msgs =
        node.on_message({v, node.node_id(), Vote{v, height, hash, true}}, now);
    out.insert(out.end(), msgs.begin(), msgs.end());
  }
  return out;
}

}  // namespace

TEST_CASE("quorum_size formula") {
  CHECK(quorum_size(1) == 1);
  CHECK(quorum_size(4) == 3);
  CHECK(quorum_size(7) == 5);
}

TEST_CASE("proposer rotation") {
  CHECK(proposer_for(1, 0, 4) == 1);
  CHECK(proposer_for(4, 0, 4) == 0);
  CHECK(proposer_for(1, 2, 4) == 3);
}

TEST_CASE("propose") {
  Cluster c({Behavior::kHonest, Behavior::kHonest, Behavior::kHonest,
             Behavior::kHonest});
  Transaction tx0 = test::attested_tx(c.world, 0, "item", Stage::kFarm, 0);
  Transaction tx1 =
      test::attested_tx(c.world, 1, "item", Stage::kProcessing, 1);

  SUBCASE("honest proposer broadcasts one block with its pending txs") {
    // Node 1 is proposer_for(1, 0, 4); the first submission triggers its
    // proposal, broadcast to every node including itself.
    auto first = c.nodes[1].on_message({0, 1, Submit{tx0}}, 1);
    int proposals = 0;
    for (const Message& m : first) {
      if (std::holds_alternative<Proposal>(m.body)) {
        proposals += 1;
        CHECK(proposal_of(m).block.header.height == 1);
        CHECK(proposal_of(m).block.transactions.size() == 1);
        CHECK(proposal_of(m).proposer_id == 1);
      }
    }
    CHECK(proposals == 4);

    // A second submission grows pending but never re-proposes at the same
    // (height, view).
    auto second = c.nodes[1].on_message({0, 1, Submit{tx1}}, 2);
    for (const Message& m : second) {
      CHECK(!std::holds_alternative<Proposal>(m.body));
    }
    CHECK(c.nodes[1].propose(3).status == ProposeStatus::kAlreadyProposed);
    CHECK(c.nodes[1].pending().size() == 2);
  }

  SUBCASE("non-proposer gets NOT_MY_TURN") {
    (void)c.nodes[2].on_message({0, 2, Submit{tx0}}, 1);
    ProposeOutcome out = c.nodes[2].propose(1);
    CHECK(out.status == ProposeStatus::kNotMyTurn);
  }

  SUBCASE("proposer without transactions gets NO_TXS") {
    ProposeOutcome out = c.nodes[1].propose(1);
    CHECK(out.status == ProposeStatus::kNoTxs);
  }

  SUBCASE("crashed node proposes nothing") {
    Cluster crashed({Behavior::kHonest, Behavior::kCrashed, Behavior::kHonest,
                     Behavior::kHonest});
    auto msgs = crashed.nodes[1].on_message({0, 1, Submit{tx0}}, 1);
    CHECK(msgs.empty());
    CHECK(crashed.nodes[1].propose(1).status == ProposeStatus::kSilent);
  }
}

TEST_CASE("equivocator sends distinct blocks to different peers") {
  Cluster c({Behavior::kHonest, Behavior::kEquivocator, Behavior::kHonest,
             Behavior::kHonest});
  Transaction tx = test::attested_tx(c.world, 0, "item", Stage::kFarm, 0);
  auto msgs = c.nodes[1].on_message({0, 1, Submit{tx}}, 5);

  std::set<std::string> hashes;
  std::set<uint32_t> proposal_targets;
  for (const Message& m : msgs) {
    if (const auto* p = std::get_if<Proposal>(&m.body)) {
      hashes.insert(hash_hex(block_hash(p->block.header)));
      proposal_targets.insert(m.to);
      CHECK(!validate_block(p->block, c.nodes[1].head().tip(),
                            *c.world.registry, kDefaultThreshold)
                 .has_value());
    }
  }
  CHECK(hashes.size() == 2);  // two valid blocks at one height
  CHECK(proposal_targets == std::set<uint32_t>{0, 2, 3});
}

TEST_CASE("on_proposal votes the validation verdict") {
  Cluster c({Behavior::kHonest, Behavior::kHonest, Behavior::kHonest,
             Behavior::kHonest});
  Transaction tx = test::attested_tx(c.world, 0, "item", Stage::kFarm, 0);
  Block good = make_block(c.nodes[0].head().tip(), {tx}, 5, 1);
  Hash32 good_hash = block_hash(good.header);

  SUBCASE("valid proposal earns an approve vote broadcast") {
    auto msgs =
        c.nodes[0].on_message({1, 0, Proposal{good, 1, 0}}, 6);
    int votes = 0;
    for (const Message& m : msgs) {
      if (const auto* v = std::get_if<Vote>(&m.body)) {
        votes += 1;
        CHECK(v->approve);
        CHECK(v->height == 1);
        CHECK(v->block_hash == good_hash);
        CHECK(v->voter_id == 0);
      }
    }
    CHECK(votes == 4);
  }

  SUBCASE("tampered proposal earns a reject vote") {
    Block bad = good;
    bad.transactions[0].attestation.nonce ^= 1;
    auto msgs = c.nodes[0].on_message({1, 0, Proposal{bad, 1, 0}}, 6);
    int votes = 0;
    for (const Message& m : msgs) {
      if (const auto* v = std::get_if<Vote>(&m.body)) {
        votes += 1;
        CHECK(!v->approve);
      }
    }
    CHECK(votes == 4);
  }

  SUBCASE("vote flipper negates the honest verdict") {
    Cluster f({Behavior::kVoteFlipper, Behavior::kHonest, Behavior::kHonest,
               Behavior::kHonest});
    Block b = make_block(f.nodes[0].head().tip(), {tx}, 5, 1);
    auto msgs = f.nodes[0].on_message({1, 0, Proposal{b, 1, 0}}, 6);
    for (const Message& m : msgs) {
      if (const auto* v = std::get_if<Vote>(&m.body)) CHECK(!v->approve);
    }
  }

  SUBCASE("stale and future proposals are dropped silently") {
    Block stale = good;
    stale.header.height = 0;
    CHECK(c.nodes[0].on_message({1, 0, Proposal{stale, 1, 0}}, 6).empty());
    Block future = good;
    future.header.height = 7;
    CHECK(c.nodes[0].on_message({1, 0, Proposal{future, 1, 0}}, 6).empty());
  }

  SUBCASE("proposals from the wrong proposer are dropped") {
    CHECK(c.nodes[0].on_message({2, 0, Proposal{good, 2, 0}}, 6).empty());
  }
}

TEST_CASE("on_vote commits at quorum") {
  Cluster c({Behavior::kHonest, Behavior::kHonest, Behavior::kHonest,
             Behavior::kHonest});
  Transaction tx = test::attested_tx(c.world, 0, "item", Stage::kFarm, 0);
  Block blk = make_block(c.nodes[0].head().tip(), {tx}, 5, 1);
  Hash32 hash = block_hash(blk.header);
  Node& node = c.nodes[0];
  (void)node.on_message({1, 0, Proposal{blk, 1, 0}}, 6);  // holds the block

  SUBCASE("three distinct approvals commit the block") {
    auto out = feed_votes(node, 1, hash, {1, 2, 3}, 7);
    CHECK(node.head().height() == 1);
    CHECK(node.committed_at().at(1) == hash);
    int commits = 0;
    int reproposals = 0;
    for (const Message& m : out) {
      if (std::holds_alternative<Commit>(m.body)) commits += 1;
      if (std::holds_alternative<Proposal>(m.body)) reproposals += 1;
    }
    CHECK(commits == 3);      // broadcast to peers
    CHECK(reproposals == 3);  // winning proposal re-broadcast for laggards
  }

  SUBCASE("duplicate votes from one voter are idempotent") {
    (void)feed_votes(node, 1, hash, {1, 1}, 7);
    auto self_votes = feed_votes(node, 1, hash, {0}, 7);
    (void)self_votes;
    CHECK(node.head().height() == 0);  // tally is 2, quorum is 3
    CHECK(node.committed_at().empty());
  }

  SUBCASE("a node never commits two hashes at one height") {
    Block other = make_block(c.nodes[0].head().tip(), {tx}, 6, 1);
    Hash32 other_hash = block_hash(other.header);
    (void)node.on_message({1, 0, Proposal{other, 1, 0}}, 6);
    (void)feed_votes(node, 1, hash, {1, 2, 3}, 7);
    CHECK(node.committed_at().at(1) == hash);
    // A later quorum for the competing hash must not double-commit.
    (void)feed_votes(node, 1, other_hash, {1, 2, 3}, 8);
    CHECK(node.head().height() == 1);
    CHECK(node.committed_at().at(1) == hash);
    CHECK(node.committed_at().size() == 1);
  }
}

TEST_CASE("processing a message twice equals processing it once") {
  Cluster c({Behavior::kHonest, Behavior::kHonest, Behavior::kHonest,
             Behavior::kHonest});
  Transaction tx = test::attested_tx(c.world, 0, "item", Stage::kFarm, 0);
  Block blk = make_block(c.nodes[0].head().tip(), {tx}, 5, 1);
  Hash32 hash = block_hash(blk.header);

  auto snapshot = [](const Node& n) {
    return std::make_tuple(encode_chain(n.head()), n.pending().size(),
                           n.view(), n.committed_at(), n.vote_tally());
  };

  std::vector<Message> stream = {
      {0, 0, Submit{tx}},
      {1, 0, Proposal{blk, 1, 0}},
      {1, 0, Vote{1, 1, hash, true}},
      {2, 0, Vote{2, 1, hash, true}},
      {3, 0, Vote{3, 1, hash, true}},
      {1, 0, Commit{1, hash}},
  };
  for (const Message& m : stream) {
    (void)c.nodes[0].on_message(m, 9);
    auto once = snapshot(c.nodes[0]);
    (void)c.nodes[0].on_message(m, 9);
    auto twice = snapshot(c.nodes[0]);
    CHECK(once == twice);
  }
  CHECK(c.nodes[0].head().height() == 1);
}

TEST_CASE("on_timeout rotates the proposer and keeps pending txs") {
  Cluster c({Behavior::kHonest, Behavior::kHonest, Behavior::kHonest,
             Behavior::kHonest});
  Transaction tx = test::attested_tx(c.world, 0, "item", Stage::kFarm, 0);
  // Node 2 holds a pending tx but is not the view-0 proposer of height 1.
  (void)c.nodes[2].on_message({0, 2, Submit{tx}}, 1);
  CHECK(c.nodes[2].view() == 0);
  CHECK(c.nodes[2].propose(1).status == ProposeStatus::kNotMyTurn);

  auto msgs = c.nodes[2].on_timeout(51);
  CHECK(c.nodes[2].view() == 1);
  CHECK(c.nodes[2].pending().size() == 1);
  // proposer_for(1, 1, 4) == 2, so the timeout triggers its proposal.
  int proposals = 0;
  for (const Message& m : msgs) {
    if (const auto* p = std::get_if<Proposal>(&m.body)) {
      proposals += 1;
      CHECK(p->view == 1);
      CHECK(p->proposer_id == 2);
    }
  }
  CHECK(proposals == 4);
}

TEST_CASE("commit message alone never commits without own quorum") {
  Cluster c({Behavior::kHonest, Behavior::kHonest, Behavior::kHonest,
             Behavior::kHonest});
  Transaction tx = test::attested_tx(c.world, 0, "item", Stage::kFarm, 0);
  Block blk = make_block(c.nodes[0].head().tip(), {tx}, 5, 1);
  Hash32 hash = block_hash(blk.header);
  Node& node = c.nodes[0];
  (void)node.on_message({1, 0, Proposal{blk, 1, 0}}, 6);
  (void)node.on_message({1, 0, Commit{1, hash}}, 7);
  CHECK(node.head().height() == 0);  // advisory only; tally lacks quorum
}

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

#ifndef BBC_SRC_NETSIM_HPP
#define BBC_SRC_NETSIM_HPP

#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "consensus.hpp"
#include "rng.hpp"

namespace bbc {

/// Disjoint node groups active during [from_tick, until_tick); messages
/// between different groups are dropped while active.
struct Partition {
  std::vector<std::set<uint32_t>> groups;
  uint64_t from_tick = 0;
  uint64_t until_tick = 0;
};

struct NetworkConfig {
  uint64_t seed = 0;
  uint64_t base_delay = 1;
  uint64_t jitter = 0;        // extra delay uniform in [0, jitter]
  double drop_rate = 0.0;     // per-message loss probability
  std::vector<Partition> partitions;
};

/// One line of the delivery/drop log, exportable as JSON lines.
struct TraceEntry {
  uint64_t tick = 0;  // send time
  uint32_t from = 0;
  uint32_t to = 0;
  std::string kind;
  std::string outcome;  // delivered | dropped_rate | dropped_partition
  uint64_t deliver_at = 0;
};

struct SubmissionMeta {
  uint64_t submission_index = 0;
  std::string item_id;
  uint32_t actor_id = 0;
  uint64_t match_score = 0;
  uint64_t threshold = 0;
};

/// Deterministic discrete-event network driving the consensus nodes.
/// Events with equal delivery ticks run in insertion order; the whole run
/// is a pure function of (scenario, seed).
class Simulation {
 public:
  Simulation(NetworkConfig config, std::vector<Node> nodes,
             uint64_t timeout_ticks);

  /// Schedules a pre-verified submission. Rejected submissions surface in
  /// rejected() at their tick and never reach a node.
  void add_submission(uint64_t tick, uint32_t node, Transaction tx,
                      bool accepted, SubmissionMeta meta);

  /// Routes one message: may drop it (seeded rate or active partition),
  /// otherwise enqueues at now + base_delay + jitter draw.
  void send(const Message& msg, uint64_t now);

  enum class StepKind { kIdle, kDelivered, kTimer, kSubmission, kSkipped };
  StepKind step();

  struct RunResult {
    uint64_t final_tick = 0;
    bool completed = false;  // false: budget hit with work still pending
  };
  RunResult run_until_quiet(uint64_t max_ticks);

  uint64_t now() const { return now_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  std::vector<Node>& nodes() { return nodes_; }
  const std::vector<TraceEntry>& trace() const { return trace_; }
  const std::vector<SubmissionMeta>& rejected() const { return rejected_; }

  /// Trace as JSON lines ({tick, from, to, kind, outcome} per line).
  std::string trace_jsonl() const;

 private:
  struct TimerFire {
    uint32_t node = 0;
    uint64_t epoch = 0;
  };
  struct SubmissionEvent {
    uint32_t node = 0;
    Transaction tx;
    bool accepted = false;
    SubmissionMeta meta;
  };
  struct SimEvent {
    uint64_t deliver_at = 0;
    uint64_t seq = 0;
    std::variant<Message, TimerFire, SubmissionEvent> payload;
  };
  struct EventAfter {
    bool operator()(const SimEvent& a, const SimEvent& b) const {
      return a.deliver_at != b.deliver_at ? a.deliver_at > b.deliver_at
                                          : a.seq > b.seq;
    }
  };

  void push(uint64_t at, std::variant<Message, TimerFire, SubmissionEvent> p);
  void dispatch_outbound(const std::vector<Message>& msgs);
  void sync_timer(uint32_t node);
  void purge_stale();
  bool crosses_partition(uint32_t from, uint32_t to, uint64_t tick) const;

  NetworkConfig config_;
  std::vector<Node> nodes_;
  uint64_t timeout_ticks_;
  Rng drop_rng_;
  Rng jitter_rng_;

  std::priority_queue<SimEvent, std::vector<SimEvent>, EventAfter> queue_;
  uint64_t seq_ = 0;
  uint64_t now_ = 0;
  std::vector<bool> timer_armed_;
  std::vector<uint64_t> timer_epoch_;
  std::vector<TraceEntry> trace_;
  std::vector<SubmissionMeta> rejected_;
};

}  // namespace bbc

#endif  // BBC_SRC_NETSIM_HPP

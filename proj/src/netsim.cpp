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

#include "netsim.hpp"

#include <nlohmann/json.hpp>

namespace bbc {

Simulation::Simulation(NetworkConfig config, std::vector<Node> nodes,
                       uint64_t timeout_ticks)
    : config_(std::move(config)),
      nodes_(std::move(nodes)),
      timeout_ticks_(timeout_ticks),
      drop_rng_(substream(config_.seed, "drop")),
      jitter_rng_(substream(config_.seed, "jitter")),
      timer_armed_(nodes_.size(), false),
      timer_epoch_(nodes_.size(), 0) {}

void Simulation::push(uint64_t at,
                      std::variant<Message, TimerFire, SubmissionEvent> p) {
  queue_.push(SimEvent{at, seq_++, std::move(p)});
}

void Simulation::add_submission(uint64_t tick, uint32_t node, Transaction tx,
                                bool accepted, SubmissionMeta meta) {
  if (node >= nodes_.size()) {
    raise(Errc::kInvalidArgument, "submission to unknown node");
  }
  push(tick, SubmissionEvent{node, std::move(tx), accepted, std::move(meta)});
}

bool Simulation::crosses_partition(uint32_t from, uint32_t to,
                                   uint64_t tick) const {
  for (const Partition& p : config_.partitions) {
    if (tick < p.from_tick || tick >= p.until_tick) continue;
    int from_group = -1;
    int to_group = -1;
    for (size_t g = 0; g < p.groups.size(); ++g) {
      if (p.groups[g].contains(from)) from_group = static_cast<int>(g);
      if (p.groups[g].contains(to)) to_group = static_cast<int>(g);
    }
    if (from_group >= 0 && to_group >= 0 && from_group != to_group) {
      return true;
    }
  }
  return false;
}

void Simulation::send(const Message& msg, uint64_t now) {
  TraceEntry entry;
  entry.tick = now;
  entry.from = msg.from;
  entry.to = msg.to;
  entry.kind = message_kind_name(msg);
  if (crosses_partition(msg.from, msg.to, now)) {
    entry.outcome = "dropped_partition";
    trace_.push_back(std::move(entry));
    return;
  }
  if (config_.drop_rate > 0.0 && drop_rng_.unit() < config_.drop_rate) {
    entry.outcome = "dropped_rate";
    trace_.push_back(std::move(entry));
    return;
  }
  uint64_t delay = config_.base_delay;
  if (config_.jitter > 0) delay += jitter_rng_.below(config_.jitter + 1);
  entry.outcome = "delivered";
  entry.deliver_at = now + delay;
  trace_.push_back(std::move(entry));
  push(now + delay, msg);
}

void Simulation::dispatch_outbound(const std::vector<Message>& msgs) {
  for (const Message& m : msgs) send(m, now_);
}

void Simulation::sync_timer(uint32_t node) {
  bool wants = nodes_[node].wants_timer();
  if (wants && !timer_armed_[node]) {
    timer_armed_[node] = true;
    timer_epoch_[node] += 1;
    push(now_ + timeout_ticks_, TimerFire{node, timer_epoch_[node]});
  } else if (!wants && timer_armed_[node]) {
    timer_armed_[node] = false;
    timer_epoch_[node] += 1;  // invalidates the queued fire
  }
}

void Simulation::purge_stale() {
  // Disarmed timers stay in the queue until popped; discard them so an
  // otherwise-quiet system reads as idle.
  while (!queue_.empty()) {
    const auto* t = std::get_if<TimerFire>(&queue_.top().payload);
    if (t != nullptr &&
        (!timer_armed_[t->node] || timer_epoch_[t->node] != t->epoch)) {
      queue_.pop();
    } else {
      break;
    }
  }
}

Simulation::StepKind Simulation::step() {
  purge_stale();
  if (queue_.empty()) return StepKind::kIdle;
  SimEvent ev = queue_.top();
  queue_.pop();
  now_ = ev.deliver_at;  // clock is monotone: queue orders by deliver_at

  if (const auto* timer = std::get_if<TimerFire>(&ev.payload)) {
    if (!timer_armed_[timer->node] ||
        timer_epoch_[timer->node] != timer->epoch) {
      return StepKind::kSkipped;
    }
    timer_armed_[timer->node] = false;
    dispatch_outbound(nodes_[timer->node].on_timeout(now_));
    sync_timer(timer->node);
    return StepKind::kTimer;
  }

  if (const auto* sub = std::get_if<SubmissionEvent>(&ev.payload)) {
    if (!sub->accepted) {
      rejected_.push_back(sub->meta);
      return StepKind::kSubmission;
    }
    dispatch_outbound(nodes_[sub->node].submit(sub->tx, now_));
    sync_timer(sub->node);
    return StepKind::kSubmission;
  }

  const Message& msg = std::get<Message>(ev.payload);
  dispatch_outbound(nodes_[msg.to].on_message(msg, now_));
  sync_timer(msg.to);
  return StepKind::kDelivered;
}

Simulation::RunResult Simulation::run_until_quiet(uint64_t max_ticks) {
  if (max_ticks == 0) raise(Errc::kInvalidArgument, "max_ticks must be > 0");
  for (;;) {
    purge_stale();
    if (queue_.empty()) return RunResult{now_, true};
    if (queue_.top().deliver_at > max_ticks) return RunResult{now_, false};
    (void)step();
  }
}

std::string Simulation::trace_jsonl() const {
  std::string out;
  for (const TraceEntry& e : trace_) {
    nlohmann::json j;
    j["tick"] = e.tick;
    j["from"] = e.from;
    j["to"] = e.to;
    j["kind"] = e.kind;
    j["outcome"] = e.outcome;
    if (e.outcome == "delivered") j["deliver_at"] = e.deliver_at;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace bbc

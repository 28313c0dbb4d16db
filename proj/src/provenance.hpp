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

#ifndef BBC_SRC_PROVENANCE_HPP
#define BBC_SRC_PROVENANCE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ledger.hpp"

namespace bbc {

/// (height, tx_index) uniquely locates a transaction in a chain.
using TxLocation = std::pair<uint64_t, uint32_t>;

struct CustodyRecord {
  uint64_t height = 0;
  uint32_t tx_index = 0;
  Stage stage = Stage::kFarm;
  uint64_t event_time = 0;
  uint32_t actor_id = 0;
  std::string origin;
  std::string batch_number;

  bool operator==(const CustodyRecord&) const = default;
};

/// Counts transaction dereferences so query cost can be compared against a
/// full scan without relying on wall time.
struct VisitCounter {
  uint64_t transactions_visited = 0;
};

/// item_id -> transaction locations in commit order.
class ItemIndex {
 public:
  /// Builds from a validated chain; throws kInvalidChain when
  /// validate_chain rejects it.
  static ItemIndex build(const Chain& chain, const ActorRegistry& registry,
                         uint64_t threshold);

  const std::vector<TxLocation>* locations(const std::string& item_id) const;
  size_t item_count() const { return locations_.size(); }
  const std::map<std::string, std::vector<TxLocation>>& entries() const {
    return locations_;
  }

 private:
  std::map<std::string, std::vector<TxLocation>> locations_;
};

/// Custody trace in commit order; unknown items yield an empty list.
std::vector<CustodyRecord> trace_item(const ItemIndex& index,
                                      const Chain& chain,
                                      const std::string& item_id,
                                      VisitCounter* visits = nullptr);

struct ResponsibleActor {
  enum class Status { kFound, kNotFound, kAmbiguous };
  Status status = Status::kNotFound;
  uint32_t actor_id = 0;                // valid when kFound
  std::vector<TxLocation> candidates;   // all matches when kAmbiguous
};

/// The attesting actor of the unique transaction for (item, stage).
ResponsibleActor responsible_actor(const ItemIndex& index, const Chain& chain,
                                   const std::string& item_id, Stage stage);

enum class ViolationKind : uint8_t {
  kUndeclaredIngredient,
  kPhantomIngredient,
};

const char* violation_kind_name(ViolationKind k);

struct LabelViolation {
  ViolationKind kind = ViolationKind::kUndeclaredIngredient;
  std::string ingredient;
  std::optional<TxLocation> introduced_at;  // set only for UNDECLARED

  bool operator==(const LabelViolation&) const = default;
};

/// Compares the union of everything ever added against the retail label.
/// Empty result iff the two agree as sets; ordered by ingredient. Throws
/// kNotRetailed when the item has no RETAIL event.
std::vector<LabelViolation> audit_labels(const ItemIndex& index,
                                         const Chain& chain,
                                         const std::string& item_id);

std::string custody_to_json(const std::vector<CustodyRecord>& records);
std::string violations_to_json(const std::vector<LabelViolation>& violations);

}  // namespace bbc

#endif  // BBC_SRC_PROVENANCE_HPP

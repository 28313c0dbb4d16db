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

#include "provenance.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

namespace bbc {

using nlohmann::json;

ItemIndex ItemIndex::build(const Chain& chain, const ActorRegistry& registry,
                           uint64_t threshold) {
  if (auto failure = validate_chain(chain, registry, threshold)) {
    raise(Errc::kInvalidChain,
          std::string("chain does not validate: ") +
              validation_failure_name(failure->kind) + " at height " +
              std::to_string(failure->height));
  }
  ItemIndex idx;
  for (const Block& block : chain.blocks()) {
    for (uint32_t t = 0; t < block.transactions.size(); ++t) {
      idx.locations_[block.transactions[t].event.item_id].emplace_back(
          block.header.height, t);
    }
  }
  return idx;
}

const std::vector<TxLocation>* ItemIndex::locations(
    const std::string& item_id) const {
  auto it = locations_.find(item_id);
  return it == locations_.end() ? nullptr : &it->second;
}

namespace {

const Transaction& tx_at(const Chain& chain, const TxLocation& loc,
                         VisitCounter* visits) {
  if (visits != nullptr) visits->transactions_visited += 1;
  return chain.blocks()[loc.first].transactions[loc.second];
}

}  // namespace

std::vector<CustodyRecord> trace_item(const ItemIndex& index,
                                      const Chain& chain,
                                      const std::string& item_id,
                                      VisitCounter* visits) {
  std::vector<CustodyRecord> out;
  const auto* locs = index.locations(item_id);
  if (locs == nullptr) return out;
  out.reserve(locs->size());
  for (const TxLocation& loc : *locs) {
    const Transaction& tx = tx_at(chain, loc, visits);
    CustodyRecord rec;
    rec.height = loc.first;
    rec.tx_index = loc.second;
    rec.stage = tx.event.stage;
    rec.event_time = tx.event.event_time;
    rec.actor_id = tx.attestation.actor_id;
    rec.origin = tx.event.origin;
    rec.batch_number = tx.event.batch_number;
    out.push_back(std::move(rec));
  }
  return out;
}

ResponsibleActor responsible_actor(const ItemIndex& index, const Chain& chain,
                                   const std::string& item_id, Stage stage) {
  ResponsibleActor result;
  const auto* locs = index.locations(item_id);
  if (locs == nullptr) return result;
  for (const TxLocation& loc : *locs) {
    const Transaction& tx = tx_at(chain, loc, nullptr);
    if (tx.event.stage == stage) {
      result.candidates.push_back(loc);
      result.actor_id = tx.attestation.actor_id;
    }
  }
  if (result.candidates.empty()) {
    result.status = ResponsibleActor::Status::kNotFound;
  } else if (result.candidates.size() == 1) {
    result.status = ResponsibleActor::Status::kFound;
  } else {
    result.status = ResponsibleActor::Status::kAmbiguous;
    result.actor_id = 0;
  }
  return result;
}

const char* violation_kind_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::kUndeclaredIngredient: return "UNDECLARED_INGREDIENT";
    case ViolationKind::kPhantomIngredient: return "PHANTOM_INGREDIENT";
  }
  return "UNDECLARED_INGREDIENT";
}

std::vector<LabelViolation> audit_labels(const ItemIndex& index,
                                         const Chain& chain,
                                         const std::string& item_id) {
  const auto* locs = index.locations(item_id);
  // Earliest introduction per ingredient, in commit order.
  std::map<std::string, TxLocation> added;
  std::optional<std::vector<std::string>> label;
  if (locs != nullptr) {
    for (const TxLocation& loc : *locs) {
      const Transaction& tx = tx_at(chain, loc, nullptr);
      for (const std::string& ing : tx.event.ingredients_added) {
        added.emplace(ing, loc);  // keeps the first introduction
      }
      if (tx.event.stage == Stage::kRetail) {
        label = tx.event.declared_label;  // last retail label wins
      }
    }
  }
  if (!label.has_value()) {
    raise(Errc::kNotRetailed, "item has no RETAIL event: " + item_id);
  }
  std::set<std::string> declared(label->begin(), label->end());

  std::vector<LabelViolation> out;
  for (const auto& [ing, loc] : added) {
    if (!declared.contains(ing)) {
      out.push_back(LabelViolation{ViolationKind::kUndeclaredIngredient, ing,
                                   loc});
    }
  }
  for (const std::string& ing : declared) {
    if (!added.contains(ing)) {
      out.push_back(LabelViolation{ViolationKind::kPhantomIngredient, ing,
                                   std::nullopt});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const LabelViolation& a, const LabelViolation& b) {
              return a.ingredient < b.ingredient;
            });
  return out;
}

std::string custody_to_json(const std::vector<CustodyRecord>& records) {
  json arr = json::array();
  for (const CustodyRecord& r : records) {
    json j;
    j["height"] = r.height;
    j["tx_index"] = r.tx_index;
    j["stage"] = stage_name(r.stage);
    j["event_time"] = r.event_time;
    j["actor_id"] = r.actor_id;
    j["origin"] = r.origin;
    j["batch_number"] = r.batch_number;
    arr.push_back(j);
  }
  return arr.dump();
}

std::string violations_to_json(const std::vector<LabelViolation>& violations) {
  json arr = json::array();
  for (const LabelViolation& v : violations) {
    json j;
    j["kind"] = violation_kind_name(v.kind);
    j["ingredient"] = v.ingredient;
    if (v.introduced_at.has_value()) {
      j["introduced_at"] = {{"height", v.introduced_at->first},
                            {"tx_index", v.introduced_at->second}};
    } else {
      j["introduced_at"] = nullptr;
    }
    arr.push_back(j);
  }
  return arr.dump();
}

}  // namespace bbc

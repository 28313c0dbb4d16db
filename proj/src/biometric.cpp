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

#include "biometric.hpp"

#include <algorithm>
#include <numeric>

#include <nlohmann/json.hpp>

#include "rng.hpp"

namespace bbc {

using nlohmann::json;

BiometricTemplate BiometricTemplate::from_ints(
    const std::vector<int64_t>& values) {
  if (values.size() != kTemplateDim) {
    raise(Errc::kInvalidArgument, "template must have exactly 64 values");
  }
  TemplateValues out{};
  for (size_t i = 0; i < kTemplateDim; ++i) {
    if (values[i] < kValueMin || values[i] > kValueMax) {
      raise(Errc::kTemplateRange,
            "template value out of signed 16-bit range at index " +
                std::to_string(i));
    }
    out[i] = static_cast<int16_t>(values[i]);
  }
  return BiometricTemplate(out);
}

bool ScramblingKey::well_formed() const {
  std::array<bool, kTemplateDim> seen{};
  for (uint8_t p : permutation) {
    if (p >= kTemplateDim || seen[p]) return false;
    seen[p] = true;
  }
  return std::all_of(signs.begin(), signs.end(),
                     [](int8_t s) { return s == 1 || s == -1; });
}

ScramblingKey derive_key(uint64_t seed, uint32_t key_id) {
  ScramblingKey k;
  k.key_id = key_id;
  std::iota(k.permutation.begin(), k.permutation.end(), uint8_t{0});
  Rng rng(mix_seed(seed, key_id));
  // Fisher–Yates, high to low.
  for (size_t i = kTemplateDim - 1; i > 0; --i) {
    size_t j = rng.below(i + 1);
    std::swap(k.permutation[i], k.permutation[j]);
  }
  for (auto& s : k.signs) s = rng.coin() ? int8_t{1} : int8_t{-1};
  return k;
}

const char* role_name(Role role) {
  switch (role) {
    case Role::kFarmer: return "FARMER";
    case Role::kProcessor: return "PROCESSOR";
    case Role::kShipper: return "SHIPPER";
    case Role::kRetailer: return "RETAILER";
  }
  return "FARMER";
}

Role role_from_name(const std::string& name) {
  if (name == "FARMER") return Role::kFarmer;
  if (name == "PROCESSOR") return Role::kProcessor;
  if (name == "SHIPPER") return Role::kShipper;
  if (name == "RETAILER") return Role::kRetailer;
  raise(Errc::kParse, "unknown role: " + name);
}

EncryptedTemplate scramble(const BiometricTemplate& t,
                           const ScramblingKey& k) {
  EncryptedTemplate out;
  out.key_id = k.key_id;
  for (size_t i = 0; i < kTemplateDim; ++i) {
    int16_t v = t[k.permutation[i]];
    if (k.signs[i] < 0) {
      if (v == kValueMin) {
        raise(Errc::kTemplateRange,
              "component -32768 cannot be sign-flipped");
      }
      v = static_cast<int16_t>(-v);
    }
    out.values[i] = v;
  }
  return out;
}

namespace {

uint64_t squared_distance(const TemplateValues& a, const TemplateValues& b) {
  uint64_t sum = 0;
  for (size_t i = 0; i < kTemplateDim; ++i) {
    int64_t d = static_cast<int64_t>(a[i]) - static_cast<int64_t>(b[i]);
    sum += static_cast<uint64_t>(d * d);
  }
  return sum;
}

}  // namespace

uint64_t distance(const BiometricTemplate& a, const BiometricTemplate& b) {
  return squared_distance(a.values(), b.values());
}

uint64_t distance(const EncryptedTemplate& a, const EncryptedTemplate& b) {
  if (a.key_id != b.key_id) {
    raise(Errc::kKeyMismatch,
          "cannot compare templates scrambled under different keys");
  }
  return squared_distance(a.values, b.values);
}

MatchDecision verify(const EncryptedTemplate& probe, const ActorRecord& record,
                     uint64_t threshold) {
  MatchDecision d;
  d.score = distance(probe, record.enrolled);
  d.threshold = threshold;
  d.accepted = d.score <= threshold;
  return d;
}

const ActorRecord& ActorRegistry::enroll(uint32_t actor_id, Role role,
                                         const BiometricTemplate& t,
                                         const ScramblingKey& k) {
  if (actors_.contains(actor_id)) {
    raise(Errc::kDuplicateActor,
          "actor " + std::to_string(actor_id) + " already enrolled");
  }
  for (int16_t v : t.values()) {
    if (v == kValueMin) {
      raise(Errc::kTemplateRange,
            "templates with a -32768 component are not enrollable");
    }
  }
  ActorRecord rec;
  rec.actor_id = actor_id;
  rec.role = role;
  rec.enrolled = scramble(t, k);
  return actors_.emplace(actor_id, std::move(rec)).first->second;
}

const ActorRecord* ActorRegistry::find(uint32_t actor_id) const {
  auto it = actors_.find(actor_id);
  return it == actors_.end() ? nullptr : &it->second;
}

// --- JSON ------------------------------------------------------------------

namespace {

json parse_json(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    raise(Errc::kParse, std::string("invalid JSON in ") + what);
  }
  return j;
}

std::vector<int64_t> int_list(const json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_array()) {
    raise(Errc::kParse, std::string("missing array field: ") + field);
  }
  std::vector<int64_t> out;
  for (const auto& v : j[field]) {
    if (!v.is_number_integer()) {
      raise(Errc::kParse, std::string("non-integer entry in ") + field);
    }
    out.push_back(v.get<int64_t>());
  }
  return out;
}

json template_values_json(const TemplateValues& values) {
  json arr = json::array();
  for (int16_t v : values) arr.push_back(v);
  return arr;
}

TemplateValues template_values_from(const json& j, const char* field) {
  std::vector<int64_t> raw = int_list(j, field);
  return BiometricTemplate::from_ints(raw).values();
}

}  // namespace

std::string template_to_json(const BiometricTemplate& t) {
  json j;
  j["values"] = template_values_json(t.values());
  return j.dump();
}

BiometricTemplate template_from_json(const std::string& text) {
  json j = parse_json(text, "template file");
  return BiometricTemplate(template_values_from(j, "values"));
}

std::string key_to_json(const ScramblingKey& k, uint64_t seed_note) {
  json j;
  j["key_id"] = k.key_id;
  j["seed_note"] = seed_note;
  j["permutation"] = json::array();
  for (uint8_t p : k.permutation) j["permutation"].push_back(p);
  j["signs"] = json::array();
  for (int8_t s : k.signs) j["signs"].push_back(static_cast<int>(s));
  return j.dump();
}

ScramblingKey key_from_json(const std::string& text) {
  json j = parse_json(text, "key file");
  if (!j.contains("key_id") || !j["key_id"].is_number_unsigned()) {
    raise(Errc::kParse, "key file missing key_id");
  }
  ScramblingKey k;
  k.key_id = j["key_id"].get<uint32_t>();
  std::vector<int64_t> perm = int_list(j, "permutation");
  std::vector<int64_t> signs = int_list(j, "signs");
  if (perm.size() != kTemplateDim || signs.size() != kTemplateDim) {
    raise(Errc::kParse, "key file arrays must have 64 entries");
  }
  for (size_t i = 0; i < kTemplateDim; ++i) {
    if (perm[i] < 0 || perm[i] >= static_cast<int64_t>(kTemplateDim)) {
      raise(Errc::kParse, "permutation entry out of range");
    }
    k.permutation[i] = static_cast<uint8_t>(perm[i]);
    if (signs[i] != 1 && signs[i] != -1) {
      raise(Errc::kParse, "sign entries must be +1 or -1");
    }
    k.signs[i] = static_cast<int8_t>(signs[i]);
  }
  if (!k.well_formed()) {
    raise(Errc::kParse, "permutation is not a bijection on 0..63");
  }
  return k;
}

std::string registry_to_json(const ActorRegistry& r) {
  json actors = json::array();
  for (const auto& [id, rec] : r.actors()) {
    json a;
    a["actor_id"] = rec.actor_id;
    a["role"] = role_name(rec.role);
    a["enrolled"] = {{"key_id", rec.enrolled.key_id},
                     {"values", template_values_json(rec.enrolled.values)}};
    actors.push_back(a);
  }
  json j;
  j["actors"] = actors;
  return j.dump();
}

ActorRegistry registry_from_json(const std::string& text) {
  json j = parse_json(text, "registry file");
  if (!j.contains("actors") || !j["actors"].is_array()) {
    raise(Errc::kParse, "registry file missing actors array");
  }
  ActorRegistry out;
  for (const auto& a : j["actors"]) {
    if (!a.contains("actor_id") || !a.contains("role") ||
        !a.contains("enrolled")) {
      raise(Errc::kParse, "registry entry missing fields");
    }
    // Records round-trip as already-scrambled data; enrollment rules were
    // applied when the record was created, so load bypasses enroll().
    ActorRecord rec;
    rec.actor_id = a["actor_id"].get<uint32_t>();
    rec.role = role_from_name(a["role"].get<std::string>());
    const auto& e = a["enrolled"];
    if (!e.contains("key_id")) raise(Errc::kParse, "enrolled missing key_id");
    rec.enrolled.key_id = e["key_id"].get<uint32_t>();
    rec.enrolled.values = template_values_from(e, "values");
    if (!out.insert_loaded(rec)) {
      raise(Errc::kParse, "duplicate actor_id in registry file");
    }
  }
  return out;
}

}  // namespace bbc

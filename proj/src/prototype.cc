// Copyright 2026 The Scribe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scribe/prototype.h"

#include <algorithm>

#include "scribe/error.h"

namespace scribe {

Prototype Prototype::FromSequence(CharLabel label, const FeatureSeq& seq,
                                  std::uint64_t version) {
  Prototype proto{label, seq.points,
                  std::vector<double>(seq.points.size(), 1.0), version};
  proto.Validate();
  return proto;
}

void Prototype::Validate() const {
  if (states.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "prototype '" + label.ToString() + "' has fewer than 2 states");
  }
  if (visit_counts.size() != states.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "prototype '" + label.ToString() +
                    "' visit counts do not match its states");
  }
}

Alphabet PrototypeSet::alphabet() const {
  std::vector<CharLabel> labels;
  for (const Prototype& p : prototypes) labels.push_back(p.label);
  return Alphabet(std::move(labels));
}

std::vector<std::size_t> PrototypeSet::IndicesFor(CharLabel label) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < prototypes.size(); ++i) {
    if (prototypes[i].label == label) out.push_back(i);
  }
  return out;
}

std::size_t PrototypeSet::TotalStates() const {
  std::size_t total = 0;
  for (const Prototype& p : prototypes) total += p.states.size();
  return total;
}

std::size_t PrototypeSet::PendingCount(CharLabel label) const {
  auto it = pending_examples.find(label);
  return it == pending_examples.end() ? 0 : it->second.size();
}

void PrototypeSet::Validate(const Alphabet& alphabet) const {
  for (const Prototype& p : prototypes) p.Validate();
  for (CharLabel label : alphabet.labels()) {
    if (IndicesFor(label).empty()) {
      throw Error(ErrorCode::kEmptyClass, label.ToString());
    }
  }
}

void PrototypeSet::SortByLabel() {
  std::stable_sort(prototypes.begin(), prototypes.end(),
                   [](const Prototype& a, const Prototype& b) {
                     return a.label < b.label;
                   });
}

nlohmann::json FeatureSeqToJson(const FeatureSeq& seq) {
  nlohmann::json points = nlohmann::json::array();
  for (const FeaturePoint& p : seq.points) {
    points.push_back({p.x, p.y, p.dx, p.dy});
  }
  return {{"points", std::move(points)}, {"duration", seq.duration}};
}

namespace {

FeaturePoint PointFromJson(const nlohmann::json& v) {
  if (!v.is_array() || v.size() != 4) {
    throw Error(ErrorCode::kCorruptStore, "state must be [x,y,dx,dy]");
  }
  for (const auto& e : v) {
    if (!e.is_number()) {
      throw Error(ErrorCode::kCorruptStore, "non-numeric state component");
    }
  }
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>(),
          v[3].get<double>()};
}

}  // namespace

FeatureSeq FeatureSeqFromJson(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("points") ||
      !doc["points"].is_array() || !doc.contains("duration") ||
      !doc["duration"].is_number()) {
    throw Error(ErrorCode::kCorruptStore, "malformed feature sequence");
  }
  FeatureSeq seq;
  for (const auto& p : doc["points"]) seq.points.push_back(PointFromJson(p));
  seq.duration = doc["duration"].get<double>();
  return seq;
}

nlohmann::json PrototypeStoreToJson(const PrototypeSet& set) {
  nlohmann::json protos = nlohmann::json::array();
  for (const Prototype& p : set.prototypes) {
    nlohmann::json states = nlohmann::json::array();
    for (const FeaturePoint& s : p.states) states.push_back({s.x, s.y, s.dx, s.dy});
    protos.push_back({{"label", p.label.ToString()},
                      {"states", std::move(states)},
                      {"visits", p.visit_counts},
                      {"version", p.version}});
  }
  return {{"format", kPrototypeStoreFormat},
          {"user", set.user},
          {"generation", set.generation},
          {"prototypes", std::move(protos)}};
}

PrototypeSet PrototypeStoreFromJson(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("format") ||
      !doc["format"].is_number_integer()) {
    throw Error(ErrorCode::kCorruptStore, "missing format number");
  }
  if (doc["format"].get<int>() != kPrototypeStoreFormat) {
    throw Error(ErrorCode::kVersionMismatch,
                "expected format " + std::to_string(kPrototypeStoreFormat) +
                    ", found " + doc["format"].dump());
  }
  if (!doc.contains("user") || !doc["user"].is_string() ||
      !doc.contains("generation") || !doc["generation"].is_number_unsigned() ||
      !doc.contains("prototypes") || !doc["prototypes"].is_array()) {
    throw Error(ErrorCode::kCorruptStore, "missing store fields");
  }
  PrototypeSet set;
  set.user = doc["user"].get<std::string>();
  set.generation = doc["generation"].get<std::uint64_t>();
  for (const auto& p : doc["prototypes"]) {
    if (!p.is_object() || !p.contains("label") || !p["label"].is_string() ||
        !p.contains("states") || !p["states"].is_array() ||
        !p.contains("visits") || !p["visits"].is_array()) {
      throw Error(ErrorCode::kCorruptStore, "malformed prototype");
    }
    auto label = CharLabel::Parse(p["label"].get<std::string>());
    if (!label) throw Error(ErrorCode::kCorruptStore, "bad prototype label");
    Prototype proto{*label, {}, {}, 0};
    for (const auto& s : p["states"]) proto.states.push_back(PointFromJson(s));
    for (const auto& v : p["visits"]) {
      if (!v.is_number()) throw Error(ErrorCode::kCorruptStore, "bad visit");
      proto.visit_counts.push_back(v.get<double>());
    }
    if (p.contains("version")) {
      if (!p["version"].is_number_unsigned()) {
        throw Error(ErrorCode::kCorruptStore, "bad prototype version");
      }
      proto.version = p["version"].get<std::uint64_t>();
    }
    if (proto.states.size() < 2 ||
        proto.visit_counts.size() != proto.states.size()) {
      throw Error(ErrorCode::kCorruptStore, "prototype violates invariants");
    }
    set.prototypes.push_back(std::move(proto));
  }
  if (set.prototypes.empty()) {
    throw Error(ErrorCode::kCorruptStore, "store has no prototypes");
  }
  set.SortByLabel();
  return set;
}

}  // namespace scribe

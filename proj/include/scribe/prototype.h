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

#ifndef SCRIBE_PROTOTYPE_H_
#define SCRIBE_PROTOTYPE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "scribe/alphabet.h"
#include "scribe/trajectory.h"

namespace scribe {

inline constexpr int kPrototypeStoreFormat = 1;

// A left-to-right template for one character. Each state is a mean feature
// vector; visit_counts holds the expected number of aligned points per state.
struct Prototype {
  CharLabel label;
  std::vector<FeaturePoint> states;
  std::vector<double> visit_counts;
  std::uint64_t version = 0;

  // Prototype with uniform unit visit counts.
  static Prototype FromSequence(CharLabel label, const FeatureSeq& seq,
                                std::uint64_t version);

  FeatureSeq AsSequence() const { return FeatureSeq{states, 0.0}; }

  // Throws Error(kInvalidArgument) unless there are >= 2 states and one visit
  // count per state.
  void Validate() const;

  friend bool operator==(const Prototype&, const Prototype&) = default;
};

// The learned recognizer state for one user. Generation 0 is the shared
// typical set assigned at first contact.
struct PrototypeSet {
  std::string user;
  // Ordered by label; several prototypes may share a label.
  std::vector<Prototype> prototypes;
  std::uint64_t generation = 0;
  // User examples buffered per label since that label was last re-clustered.
  std::map<CharLabel, std::vector<FeatureSeq>> pending_examples;

  // The labels covered by the set, in alphabet order.
  Alphabet alphabet() const;
  std::vector<std::size_t> IndicesFor(CharLabel label) const;
  std::size_t TotalStates() const;
  std::size_t PendingCount(CharLabel label) const;

  // Every prototype valid and every label of alphabet covered.
  // Throws Error(kEmptyClass) naming the first uncovered label.
  void Validate(const Alphabet& alphabet) const;

  // Stable label order after a label's prototypes were replaced.
  void SortByLabel();

  friend bool operator==(const PrototypeSet&, const PrototypeSet&) = default;
};

// Versioned store document:
// {"format": 1, "user": ..., "generation": n,
//  "prototypes": [{"label", "states": [[x,y,dx,dy],...], "visits": [...],
//                  "version": v}]}
// pending_examples are not part of the document.
nlohmann::json PrototypeStoreToJson(const PrototypeSet& set);
// Throws Error(kVersionMismatch) for another format number and
// Error(kCorruptStore) for anything structurally wrong.
PrototypeSet PrototypeStoreFromJson(const nlohmann::json& doc);

nlohmann::json FeatureSeqToJson(const FeatureSeq& seq);
FeatureSeq FeatureSeqFromJson(const nlohmann::json& doc);

}  // namespace scribe

#endif  // SCRIBE_PROTOTYPE_H_

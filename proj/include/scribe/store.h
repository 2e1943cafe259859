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

#ifndef SCRIBE_STORE_H_
#define SCRIBE_STORE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "scribe/channel_metrics.h"
#include "scribe/prototype.h"

namespace scribe {

inline constexpr int kUserStateFormat = 1;

// One game session: the prompt permutation and the committed characters in
// arrival order.
struct SessionState {
  int id = 0;
  std::vector<CharLabel> prompts;
  std::vector<CharacterRecord> records;

  bool complete() const { return records.size() == prompts.size(); }
  bool Committed(CharLabel label) const;

  friend bool operator==(const SessionState&, const SessionState&) = default;
};

// Everything the service keeps for one user. Pending example buffers live in
// prototypes.pending_examples.
struct UserState {
  std::string user;
  PrototypeSet prototypes;
  int session_counter = 0;
  std::map<int, SessionState> sessions;

  friend bool operator==(const UserState&, const UserState&) = default;
};

// The state document; the prototypes themselves are stored separately.
nlohmann::json UserStateToJson(const UserState& state);
// Throws Error(kVersionMismatch) or Error(kCorruptStore).
UserState UserStateFromJson(const nlohmann::json& doc);

// Plain-file store:
//   <root>/users/<id>/prototypes.json   prototype store document
//   <root>/users/<id>/state.json        sessions and pending buffers
//   <root>/users/<id>/trajectories.jsonl  raw traces, one per character
class UserStore {
 public:
  explicit UserStore(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path UserDir(const std::string& user) const;

  // Writes both documents through a temporary file and a rename.
  void Save(const UserState& state) const;
  // std::nullopt when the user has never been saved. Throws
  // Error(kCorruptStore) for unreadable or truncated files and
  // Error(kVersionMismatch) for another format number.
  std::optional<UserState> Load(const std::string& user) const;

  void AppendTrajectory(const std::string& user,
                        const nlohmann::json& record) const;

 private:
  std::filesystem::path root_;
};

// Canonical bytes of a JSON document (sorted keys, no whitespace).
std::string CanonicalJson(const nlohmann::json& doc);

// Throws Error(kBadRequest) for an empty id or characters outside
// [A-Za-z0-9_.-], or the ids "." and "..".
void ValidateUserId(const std::string& user);

}  // namespace scribe

#endif  // SCRIBE_STORE_H_

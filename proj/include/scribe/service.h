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

#ifndef SCRIBE_SERVICE_H_
#define SCRIBE_SERVICE_H_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "scribe/channel_metrics.h"
#include "scribe/experiment.h"
#include "scribe/store.h"

namespace scribe {

struct ServiceConfig {
  std::filesystem::path data_dir = "scribe-data";
  EngineConfig engine;
  std::uint64_t seed = 1;
};

struct SessionStart {
  std::string user;
  int session_id = 0;
  std::vector<CharLabel> prompts;
};

struct CharacterResult {
  Posterior posterior;
  CharLabel prediction = CharLabel::FromChar('a');
  double duration = 0.0;
  std::uint64_t generation = 0;
  int session_id = 0;
};

// The live engine. Each user owns a mutex; requests for one user run one at
// a time in arrival order while different users proceed in parallel. Every
// mutation is written through to the store before the call returns.
class ScribeService {
 public:
  // The pool may be empty, in which case initial adaptation re-clusters the
  // typical prototypes together with the user's first session.
  ScribeService(Baseline baseline, ServiceConfig cfg);

  const ServiceConfig& config() const { return cfg_; }
  const PrototypeSet& typical() const { return baseline_.typical; }

  // Creates the user from the typical set if needed and opens a new session
  // with a fresh permutation of the alphabet.
  SessionStart StartSession(const std::string& user);

  // Decodes one trace for the prompt of an open session. Unknown users are
  // created from the typical set; an unknown session is Error(kNotFound).
  // Malformed or degenerate traces, labels outside the session and repeated
  // prompts are Error(kBadRequest).
  CharacterResult HandleCharacter(const std::string& user, int session_id,
                                  CharLabel prompt, const RawTrace& trace);
  // Same, against the user's latest session, opening one when there is none
  // or the latest is complete.
  CharacterResult HandleCharacter(const std::string& user, CharLabel prompt,
                                  const RawTrace& trace);

  // Error(kNotFound) for unknown ids, Error(kIncompleteSession) until every
  // prompt has been written.
  ChannelReport SessionScore(const std::string& user, int session_id);

  std::vector<CharacterRecord> SessionRecords(const std::string& user,
                                              int session_id);
  // Snapshot of the user's prototypes. Error(kNotFound) for unknown users.
  PrototypeSet Prototypes(const std::string& user);
  UserState Snapshot(const std::string& user);

 private:
  struct Slot {
    std::mutex mutex;
    std::optional<UserState> state;
  };

  // Returns the slot locked; loads from the store on first access.
  std::pair<Slot*, std::unique_lock<std::mutex>> Acquire(
      const std::string& user);
  UserState& Ensure(Slot& slot, const std::string& user);
  UserState& Existing(Slot& slot, const std::string& user);
  SessionStart Open(UserState& state);
  CharacterResult Handle(UserState& state, int session_id, CharLabel prompt,
                         const RawTrace& trace);

  Baseline baseline_;
  ServiceConfig cfg_;
  UserStore store_;
  std::mutex slots_mutex_;
  std::map<std::string, std::unique_ptr<Slot>> slots_;
};

// Stable 64-bit hash of a user id, for deriving per-user prompt orders.
std::uint64_t UserHash(const std::string& user);

}  // namespace scribe

#endif  // SCRIBE_SERVICE_H_

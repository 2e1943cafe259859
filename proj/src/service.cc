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

#include "scribe/service.h"

#include <algorithm>
#include <utility>

#include "scribe/dataset.h"
#include "scribe/decoder.h"
#include "scribe/error.h"
#include "scribe/learning.h"

namespace scribe {

std::uint64_t UserHash(const std::string& user) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : user) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ScribeService::ScribeService(Baseline baseline, ServiceConfig cfg)
    : baseline_(std::move(baseline)), cfg_(std::move(cfg)), store_(cfg_.data_dir) {
  baseline_.typical.Validate(Alphabet::Lowercase());
  if (baseline_.typical.generation != 0) {
    throw Error(ErrorCode::kInvalidArgument, "typical set must be generation 0");
  }
  cfg_.engine.decoder.Validate(Alphabet::Lowercase().size());
}

std::pair<ScribeService::Slot*, std::unique_lock<std::mutex>>
ScribeService::Acquire(const std::string& user) {
  ValidateUserId(user);
  Slot* slot = nullptr;
  {
    std::lock_guard<std::mutex> guard(slots_mutex_);
    auto& entry = slots_[user];
    if (!entry) entry = std::make_unique<Slot>();
    slot = entry.get();
  }
  std::unique_lock<std::mutex> lock(slot->mutex);
  if (!slot->state) slot->state = store_.Load(user);
  return {slot, std::move(lock)};
}

UserState& ScribeService::Ensure(Slot& slot, const std::string& user) {
  if (!slot.state) {
    UserState state;
    state.user = user;
    state.prototypes = baseline_.typical;
    state.prototypes.user = user;
    state.prototypes.pending_examples.clear();
    slot.state = std::move(state);
    store_.Save(*slot.state);
  }
  return *slot.state;
}

UserState& ScribeService::Existing(Slot& slot, const std::string& user) {
  if (!slot.state) throw Error(ErrorCode::kNotFound, "unknown user " + user);
  return *slot.state;
}

SessionStart ScribeService::Open(UserState& state) {
  SessionState session;
  session.id = ++state.session_counter;
  session.prompts = SessionPrompts(cfg_.seed ^ UserHash(state.user), 0, session.id);
  SessionStart start{state.user, session.id, session.prompts};
  state.sessions.emplace(session.id, std::move(session));
  store_.Save(state);
  return start;
}

SessionStart ScribeService::StartSession(const std::string& user) {
  auto [slot, lock] = Acquire(user);
  return Open(Ensure(*slot, user));
}

CharacterResult ScribeService::Handle(UserState& state, int session_id,
                                      CharLabel prompt, const RawTrace& trace) {
  auto it = state.sessions.find(session_id);
  if (it == state.sessions.end()) {
    throw Error(ErrorCode::kNotFound, "unknown session " + std::to_string(session_id));
  }
  SessionState& session = it->second;
  if (std::find(session.prompts.begin(), session.prompts.end(), prompt) ==
      session.prompts.end()) {
    throw Error(ErrorCode::kBadRequest, "prompt not in session");
  }
  if (session.Committed(prompt)) {
    throw Error(ErrorCode::kBadRequest, "prompt already written: " + prompt.ToString());
  }
  FeatureSeq features;
  try {
    features = PrepareQuery(trace, cfg_.engine.decoder);
  } catch (const Error& e) {
    throw Error(ErrorCode::kBadRequest, e.what());
  }

  CharacterResult result;
  result.generation = state.prototypes.generation;
  result.session_id = session_id;
  result.posterior = DecodePosterior(features, state.prototypes, cfg_.engine.decoder);
  result.prediction = Predict(result.posterior);
  result.duration = features.duration;

  session.records.push_back({prompt, result.posterior, result.duration,
                             ConditionName(Condition::kAdapt), session_id,
                             state.user});

  const LabeledExample example{prompt, std::move(features)};
  PrototypeSet& set = state.prototypes;
  if (set.generation == 0) {
    set.pending_examples[prompt].push_back(example.features);
    if (session.complete()) {
      std::vector<LabeledExample> first;
      for (const auto& [label, seqs] : set.pending_examples) {
        for (const FeatureSeq& seq : seqs) first.push_back({label, seq});
      }
      PrototypeSet adapted = InitialAdapt(baseline_.typical, baseline_.pool,
                                          first, cfg_.engine.learning);
      adapted.user = state.user;
      set = std::move(adapted);
    }
  } else {
    set = IncrementalAdapt(std::move(set), std::span(&example, 1),
                           cfg_.engine.learning);
  }

  ExperimentRecord logged{state.user,        session_id,
                          static_cast<int>(session.records.size()) - 1,
                          prompt,            result.prediction,
                          Condition::kAdapt, result.generation,
                          result.duration,   result.posterior,
                          trace};
  store_.AppendTrajectory(state.user, ExperimentRecordToJson(logged));
  store_.Save(state);
  return result;
}

CharacterResult ScribeService::HandleCharacter(const std::string& user,
                                               int session_id, CharLabel prompt,
                                               const RawTrace& trace) {
  auto [slot, lock] = Acquire(user);
  return Handle(Ensure(*slot, user), session_id, prompt, trace);
}

CharacterResult ScribeService::HandleCharacter(const std::string& user,
                                               CharLabel prompt,
                                               const RawTrace& trace) {
  auto [slot, lock] = Acquire(user);
  UserState& state = Ensure(*slot, user);
  int session_id = state.session_counter;
  if (state.sessions.empty() || state.sessions.rbegin()->second.complete()) {
    session_id = Open(state).session_id;
  }
  return Handle(state, session_id, prompt, trace);
}

std::vector<CharacterRecord> ScribeService::SessionRecords(const std::string& user,
                                                           int session_id) {
  auto [slot, lock] = Acquire(user);
  const UserState& state = Existing(*slot, user);
  auto it = state.sessions.find(session_id);
  if (it == state.sessions.end()) {
    throw Error(ErrorCode::kNotFound, "unknown session " + std::to_string(session_id));
  }
  return it->second.records;
}

ChannelReport ScribeService::SessionScore(const std::string& user, int session_id) {
  std::size_t prompts = 0;
  std::vector<CharacterRecord> records;
  {
    auto [slot, lock] = Acquire(user);
    const UserState& state = Existing(*slot, user);
    auto it = state.sessions.find(session_id);
    if (it == state.sessions.end()) {
      throw Error(ErrorCode::kNotFound, "unknown session " + std::to_string(session_id));
    }
    prompts = it->second.prompts.size();
    records = it->second.records;
  }
  if (records.size() != prompts) {
    throw Error(ErrorCode::kIncompleteSession,
                std::to_string(records.size()) + " of " + std::to_string(prompts) +
                    " characters written");
  }
  return SessionReport(records, Alphabet::Lowercase());
}

PrototypeSet ScribeService::Prototypes(const std::string& user) {
  auto [slot, lock] = Acquire(user);
  return Existing(*slot, user).prototypes;
}

UserState ScribeService::Snapshot(const std::string& user) {
  auto [slot, lock] = Acquire(user);
  return Existing(*slot, user);
}

}  // namespace scribe

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

#ifndef SCRIBE_EXPERIMENT_H_
#define SCRIBE_EXPERIMENT_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "scribe/alphabet.h"
#include "scribe/channel_metrics.h"
#include "scribe/decoder.h"
#include "scribe/learning.h"
#include "scribe/prototype.h"
#include "scribe/writer.h"

namespace scribe {

enum class Condition { kAdapt, kFixed };

std::string ConditionName(Condition condition);
// Throws Error(kInvalidArgument) for anything but "adapt" or "fixed".
Condition ParseCondition(const std::string& name);

// The recognizer settings shared by both conditions.
struct EngineConfig {
  LearningConfig learning;
  DecoderConfig decoder;
};

struct ExperimentConfig {
  std::size_t users = 15;
  std::size_t sessions = 20;
  std::uint64_t seed = 1;
  WriterProfile writer;
  // Writers who contribute the pooled corpus behind the typical set.
  std::size_t pool_writers = 12;
  std::size_t pool_repetitions = 2;
  EngineConfig engine;
};

// The pooled multi-writer corpus and the typical prototypes trained on it.
struct Baseline {
  std::vector<LabeledExample> pool;
  PrototypeSet typical;
};

Baseline BuildBaseline(const ExperimentConfig& cfg);
std::vector<SyntheticWriter> SynthesizeUsers(const ExperimentConfig& cfg);

// One prompted character.
struct ExperimentRecord {
  std::string user;
  int session = 0;
  // Position within the session's prompt permutation.
  int index = 0;
  CharLabel intent;
  CharLabel prediction;
  Condition condition = Condition::kAdapt;
  std::uint64_t generation = 0;
  double duration = 0.0;
  Posterior posterior;
  RawTrace trace;

  friend bool operator==(const ExperimentRecord&,
                         const ExperimentRecord&) = default;
};

struct ExperimentLog {
  Condition condition = Condition::kAdapt;
  std::vector<ExperimentRecord> records;

  friend bool operator==(const ExperimentLog&, const ExperimentLog&) = default;
};

// Deterministic permutation of the alphabet for (seed, user, session).
std::vector<CharLabel> SessionPrompts(std::uint64_t seed,
                                      std::size_t user_index, int session);

// Every writer writes sessions x 26 prompted letters. Under kAdapt the set is
// re-clustered with InitialAdapt after session 1 and with IncrementalAdapt
// per character afterwards; under kFixed it stays the typical set. The
// writer receives the prediction as feedback after each character.
ExperimentLog RunCondition(std::vector<SyntheticWriter> writers,
                           std::size_t sessions, Condition condition,
                           const Baseline& baseline, const EngineConfig& engine,
                           std::uint64_t seed);

// Re-decodes every stored trace against the frozen typical set. Durations,
// intents and order are copied unchanged; generation becomes 0.
// Throws Error(kMissingTrajectories) if a record has no trace.
ExperimentLog ReplayFixed(const ExperimentLog& log, const PrototypeSet& typical,
                          const DecoderConfig& decoder);

CharacterRecord ToCharacterRecord(const ExperimentRecord& record);
std::vector<CharacterRecord> ToCharacterRecords(const ExperimentLog& log);

struct SessionKey {
  std::string user;
  int session = 0;
  friend auto operator<=>(const SessionKey&, const SessionKey&) = default;
};

std::map<SessionKey, ChannelReport> SessionReports(const ExperimentLog& log,
                                                   const Alphabet& alphabet);
std::map<std::string, ChannelReport> UserReports(const ExperimentLog& log,
                                                 const Alphabet& alphabet);

// Per intent: (log2 |alphabet| - mean -log2 q(intent)) / mean duration over
// that intent's records, stored in rate_ll. mutual_information and rate_mi
// are undefined for a single label and set to NaN.
// Throws Error(kMissingClass) when an alphabet label has no record.
std::map<CharLabel, ChannelReport> PerCharacterRates(
    std::span<const CharacterRecord> records, const Alphabet& alphabet);
std::map<CharLabel, ChannelReport> PerCharacterRates(const ExperimentLog& log,
                                                     const Alphabet& alphabet);

// Per user, the mean over sessions [first, last] (1-based, inclusive) of a
// session report field.
std::map<std::string, double> UserSessionMeans(
    const std::map<SessionKey, ChannelReport>& sessions, int first, int last,
    double ChannelReport::*field);

// JSON-lines log. Each line is a dataset record extended with the decoding
// outcome; keys are sorted so equal logs serialize to equal bytes.
nlohmann::json ExperimentRecordToJson(const ExperimentRecord& record);
ExperimentRecord ExperimentRecordFromJson(const nlohmann::json& doc);
void WriteLog(std::ostream& out, const ExperimentLog& log);
std::vector<ExperimentLog> ReadLogs(std::istream& in);
std::string SerializeLog(const ExperimentLog& log);

}  // namespace scribe

#endif  // SCRIBE_EXPERIMENT_H_

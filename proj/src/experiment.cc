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

#include "scribe/experiment.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include "scribe/dataset.h"
#include "scribe/error.h"

namespace scribe {

std::string ConditionName(Condition condition) {
  return condition == Condition::kAdapt ? "adapt" : "fixed";
}

Condition ParseCondition(const std::string& name) {
  if (name == "adapt") return Condition::kAdapt;
  if (name == "fixed") return Condition::kFixed;
  throw Error(ErrorCode::kInvalidArgument, "unknown condition '" + name + "'");
}

Baseline BuildBaseline(const ExperimentConfig& cfg) {
  Baseline baseline;
  const Alphabet alphabet = Alphabet::Lowercase();
  for (std::size_t w = 0; w < cfg.pool_writers; ++w) {
    SyntheticWriter writer("pool-" + std::to_string(w + 1),
                           DeriveSeed(cfg.seed, w, 0x706f6f6c), cfg.writer);
    for (std::size_t r = 0; r < cfg.pool_repetitions; ++r) {
      for (CharLabel label : alphabet.labels()) {
        baseline.pool.push_back({label, Encode(writer.Write(label, 1))});
      }
    }
  }
  baseline.typical =
      TrainTypicalPrototypes(baseline.pool, alphabet, cfg.engine.learning);
  baseline.typical.user = "typical";
  return baseline;
}

std::vector<SyntheticWriter> SynthesizeUsers(const ExperimentConfig& cfg) {
  std::vector<SyntheticWriter> writers;
  for (std::size_t u = 0; u < cfg.users; ++u) {
    char id[32];
    std::snprintf(id, sizeof(id), "user-%02zu", u + 1);
    writers.push_back(
        SynthesizeUser(id, DeriveSeed(cfg.seed, u, 0x75736572), cfg.writer));
  }
  return writers;
}

std::vector<CharLabel> SessionPrompts(std::uint64_t seed,
                                      std::size_t user_index, int session) {
  std::vector<CharLabel> prompts = Alphabet::Lowercase().labels();
  std::mt19937_64 rng(DeriveSeed(seed, user_index,
                                 0x7365737300000000ULL +
                                     static_cast<std::uint64_t>(session)));
  // Fisher-Yates with our own uniform draw for portable output.
  for (std::size_t i = prompts.size() - 1; i > 0; --i) {
    const auto j = static_cast<std::size_t>(Uniform01(rng) *
                                            static_cast<double>(i + 1));
    std::swap(prompts[i], prompts[std::min(j, i)]);
  }
  return prompts;
}

ExperimentLog RunCondition(std::vector<SyntheticWriter> writers,
                           std::size_t sessions, Condition condition,
                           const Baseline& baseline, const EngineConfig& engine,
                           std::uint64_t seed) {
  ExperimentLog log;
  log.condition = condition;
  for (std::size_t u = 0; u < writers.size(); ++u) {
    SyntheticWriter& writer = writers[u];
    PrototypeSet set = baseline.typical;
    set.user = writer.id();
    for (std::size_t s = 1; s <= sessions; ++s) {
      const int session = static_cast<int>(s);
      std::vector<LabeledExample> session_examples;
      const auto prompts = SessionPrompts(seed, u, session);
      for (std::size_t i = 0; i < prompts.size(); ++i) {
        const CharLabel intent = prompts[i];
        RawTrace trace = writer.Write(intent, session);
        FeatureSeq features = PrepareQuery(trace, engine.decoder);
        Posterior posterior = DecodePosterior(features, set, engine.decoder);
        const CharLabel prediction = Predict(posterior);
        writer.Feedback(intent, prediction);
        log.records.push_back({writer.id(), session, static_cast<int>(i),
                               intent, prediction, condition, set.generation,
                               features.duration, std::move(posterior),
                               std::move(trace)});
        if (condition == Condition::kAdapt && session > 1) {
          const LabeledExample example{intent, std::move(features)};
          set = IncrementalAdapt(std::move(set), std::span(&example, 1),
                                 engine.learning);
        } else {
          session_examples.push_back({intent, std::move(features)});
        }
      }
      if (condition == Condition::kAdapt && session == 1) {
        const std::string user = set.user;
        set = InitialAdapt(baseline.typical, baseline.pool, session_examples,
                           engine.learning);
        set.user = user;
      }
    }
  }
  return log;
}

ExperimentLog ReplayFixed(const ExperimentLog& log, const PrototypeSet& typical,
                          const DecoderConfig& decoder) {
  ExperimentLog out;
  out.condition = Condition::kFixed;
  out.records.reserve(log.records.size());
  for (const ExperimentRecord& r : log.records) {
    if (r.trace.samples.empty()) {
      throw Error(ErrorCode::kMissingTrajectories,
                  r.user + " session " + std::to_string(r.session));
    }
    ExperimentRecord replayed = r;
    replayed.posterior = DecodePosterior(PrepareQuery(r.trace, decoder), typical, decoder);
    replayed.posterior.t = r.posterior.t;
    replayed.prediction = Predict(replayed.posterior);
    replayed.condition = Condition::kFixed;
    replayed.generation = 0;
    out.records.push_back(std::move(replayed));
  }
  return out;
}

CharacterRecord ToCharacterRecord(const ExperimentRecord& r) {
  return {r.intent, r.posterior, r.duration, ConditionName(r.condition),
          r.session, r.user};
}

std::vector<CharacterRecord> ToCharacterRecords(const ExperimentLog& log) {
  std::vector<CharacterRecord> out;
  out.reserve(log.records.size());
  for (const ExperimentRecord& r : log.records) out.push_back(ToCharacterRecord(r));
  return out;
}

std::map<SessionKey, ChannelReport> SessionReports(const ExperimentLog& log,
                                                   const Alphabet& alphabet) {
  std::map<SessionKey, std::vector<CharacterRecord>> groups;
  for (const ExperimentRecord& r : log.records) {
    groups[{r.user, r.session}].push_back(ToCharacterRecord(r));
  }
  std::map<SessionKey, ChannelReport> out;
  for (const auto& [key, records] : groups) {
    out.emplace(key, SessionReport(records, alphabet));
  }
  return out;
}

std::map<std::string, ChannelReport> UserReports(const ExperimentLog& log,
                                                 const Alphabet& alphabet) {
  std::map<std::string, std::vector<CharacterRecord>> groups;
  for (const ExperimentRecord& r : log.records) {
    groups[r.user].push_back(ToCharacterRecord(r));
  }
  std::map<std::string, ChannelReport> out;
  for (const auto& [user, records] : groups) {
    out.emplace(user, ComputeChannelReport(records, alphabet));
  }
  return out;
}

std::map<CharLabel, ChannelReport> PerCharacterRates(
    std::span<const CharacterRecord> records, const Alphabet& alphabet) {
  const double ceiling = std::log2(static_cast<double>(alphabet.size()));
  std::map<CharLabel, std::vector<const CharacterRecord*>> groups;
  for (const CharacterRecord& r : records) groups[r.intent].push_back(&r);
  std::map<CharLabel, ChannelReport> out;
  for (CharLabel label : alphabet.labels()) {
    auto it = groups.find(label);
    if (it == groups.end()) {
      throw Error(ErrorCode::kMissingClass, label.ToString());
    }
    ChannelReport report;
    report.n = it->second.size();
    double loss = 0.0;
    double duration = 0.0;
    for (const CharacterRecord* r : it->second) {
      loss += -std::log2(r->posterior.Probability(label));
      duration += r->duration;
    }
    const double n = static_cast<double>(report.n);
    report.mean_log_loss = loss / n;
    report.mean_duration = duration / n;
    report.entropy_marginal = ceiling;
    report.mutual_information = std::nan("");
    report.rate_mi = std::nan("");
    report.rate_ll = (ceiling - report.mean_log_loss) / report.mean_duration;
    report.rate_ideal = ceiling / report.mean_duration;
    out.emplace(label, report);
  }
  return out;
}

std::map<CharLabel, ChannelReport> PerCharacterRates(const ExperimentLog& log,
                                                     const Alphabet& alphabet) {
  const auto records = ToCharacterRecords(log);
  return PerCharacterRates(records, alphabet);
}

std::map<std::string, double> UserSessionMeans(
    const std::map<SessionKey, ChannelReport>& sessions, int first, int last,
    double ChannelReport::*field) {
  std::map<std::string, std::pair<double, int>> sums;
  for (const auto& [key, report] : sessions) {
    if (key.session < first || key.session > last) continue;
    auto& [total, count] = sums[key.user];
    total += report.*field;
    ++count;
  }
  std::map<std::string, double> out;
  for (const auto& [user, sum] : sums) out[user] = sum.first / sum.second;
  return out;
}

nlohmann::json ExperimentRecordToJson(const ExperimentRecord& r) {
  return {{"user", r.user},
          {"session", r.session},
          {"index", r.index},
          {"label", r.intent.ToString()},
          {"prediction", r.prediction.ToString()},
          {"condition", ConditionName(r.condition)},
          {"generation", r.generation},
          {"duration_s", r.duration},
          {"posterior", r.posterior.probabilities},
          {"posterior_t", r.posterior.t},
          {"samples", RawTraceToJson(r.trace)}};
}

ExperimentRecord ExperimentRecordFromJson(const nlohmann::json& doc) {
  const DatasetRecord base = DatasetRecordFromJson(doc);
  try {
    auto prediction = CharLabel::Parse(doc.at("prediction").get<std::string>());
    if (!prediction) throw Error(ErrorCode::kBadRequest, "bad prediction");
    ExperimentRecord r{base.user,
                       base.session,
                       doc.at("index").get<int>(),
                       base.label,
                       *prediction,
                       ParseCondition(doc.at("condition").get<std::string>()),
                       doc.at("generation").get<std::uint64_t>(),
                       doc.at("duration_s").get<double>(),
                       Posterior{Alphabet::Lowercase().labels(),
                                 doc.at("posterior").get<std::vector<double>>(),
                                 doc.value("posterior_t", 0.0)},
                       base.trace};
    if (r.posterior.probabilities.size() != r.posterior.labels.size()) {
      throw Error(ErrorCode::kBadRequest, "posterior must have 26 entries");
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kBadRequest,
                std::string("malformed log record: ") + e.what());
  }
}

void WriteLog(std::ostream& out, const ExperimentLog& log) {
  for (const ExperimentRecord& r : log.records) {
    out << ExperimentRecordToJson(r).dump() << '\n';
  }
}

std::vector<ExperimentLog> ReadLogs(std::istream& in) {
  ExperimentLog adapt{Condition::kAdapt, {}};
  ExperimentLog fixed{Condition::kFixed, {}};
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      ExperimentRecord r = ExperimentRecordFromJson(nlohmann::json::parse(line));
      (r.condition == Condition::kAdapt ? adapt : fixed)
          .records.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kBadRequest,
                  "line " + std::to_string(number) + ": " + e.what());
    }
  }
  std::vector<ExperimentLog> out;
  if (!adapt.records.empty()) out.push_back(std::move(adapt));
  if (!fixed.records.empty()) out.push_back(std::move(fixed));
  return out;
}

std::string SerializeLog(const ExperimentLog& log) {
  std::ostringstream out;
  WriteLog(out, log);
  return out.str();
}

}  // namespace scribe

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

#include "scribe/store.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "scribe/error.h"

namespace scribe {
namespace {

nlohmann::json PosteriorToJson(const Posterior& p) {
  std::string labels;
  for (CharLabel l : p.labels) labels.push_back(l.ToChar());
  return {{"labels", labels}, {"p", p.probabilities}, {"t", p.t}};
}

std::vector<CharLabel> LabelsFromString(const std::string& text) {
  std::vector<CharLabel> out;
  for (char c : text) {
    auto label = CharLabel::Parse(std::string_view(&c, 1));
    if (!label) throw Error(ErrorCode::kCorruptStore, "bad label in store");
    out.push_back(*label);
  }
  return out;
}

std::string LabelsToString(const std::vector<CharLabel>& labels) {
  std::string out;
  for (CharLabel l : labels) out.push_back(l.ToChar());
  return out;
}

Posterior PosteriorFromJson(const nlohmann::json& doc) {
  Posterior p{LabelsFromString(doc.at("labels").get<std::string>()),
              doc.at("p").get<std::vector<double>>(), doc.at("t").get<double>()};
  if (p.labels.size() != p.probabilities.size()) {
    throw Error(ErrorCode::kCorruptStore, "posterior size mismatch");
  }
  return p;
}

nlohmann::json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kCorruptStore, "cannot read " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kCorruptStore, path.string() + ": " + e.what());
  }
}

void WriteFileAtomically(const std::filesystem::path& path,
                         const std::string& bytes) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kCorruptStore, "cannot write " + tmp.string());
    out << bytes;
    if (!out.flush()) {
      throw Error(ErrorCode::kCorruptStore, "short write " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

bool SessionState::Committed(CharLabel label) const {
  return std::any_of(records.begin(), records.end(),
                     [&](const CharacterRecord& r) { return r.intent == label; });
}

std::string CanonicalJson(const nlohmann::json& doc) { return doc.dump(); }

void ValidateUserId(const std::string& user) {
  const bool ok =
      !user.empty() && user.size() <= 128 && user != "." && user != ".." &&
      std::all_of(user.begin(), user.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
               (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
      });
  if (!ok) throw Error(ErrorCode::kBadRequest, "invalid user id");
}

nlohmann::json UserStateToJson(const UserState& state) {
  nlohmann::json pending = nlohmann::json::object();
  for (const auto& [label, seqs] : state.prototypes.pending_examples) {
    nlohmann::json list = nlohmann::json::array();
    for (const FeatureSeq& seq : seqs) list.push_back(FeatureSeqToJson(seq));
    pending[label.ToString()] = std::move(list);
  }
  nlohmann::json sessions = nlohmann::json::array();
  for (const auto& [id, session] : state.sessions) {
    nlohmann::json records = nlohmann::json::array();
    for (const CharacterRecord& r : session.records) {
      records.push_back({{"intent", r.intent.ToString()},
                         {"posterior", PosteriorToJson(r.posterior)},
                         {"duration", r.duration},
                         {"condition", r.condition}});
    }
    sessions.push_back({{"id", id},
                        {"prompts", LabelsToString(session.prompts)},
                        {"records", std::move(records)}});
  }
  return {{"format", kUserStateFormat},
          {"user", state.user},
          {"session_counter", state.session_counter},
          {"pending", std::move(pending)},
          {"sessions", std::move(sessions)}};
}

UserState UserStateFromJson(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("format") ||
      !doc["format"].is_number_integer()) {
    throw Error(ErrorCode::kCorruptStore, "missing format number");
  }
  if (doc["format"].get<int>() != kUserStateFormat) {
    throw Error(ErrorCode::kVersionMismatch, "unsupported user state format");
  }
  try {
    UserState state;
    state.user = doc.at("user").get<std::string>();
    state.session_counter = doc.at("session_counter").get<int>();
    for (const auto& [key, list] : doc.at("pending").items()) {
      auto label = CharLabel::Parse(key);
      if (!label) throw Error(ErrorCode::kCorruptStore, "bad pending label");
      auto& seqs = state.prototypes.pending_examples[*label];
      for (const auto& seq : list) seqs.push_back(FeatureSeqFromJson(seq));
    }
    for (const auto& s : doc.at("sessions")) {
      SessionState session;
      session.id = s.at("id").get<int>();
      session.prompts = LabelsFromString(s.at("prompts").get<std::string>());
      for (const auto& r : s.at("records")) {
        auto intent = CharLabel::Parse(r.at("intent").get<std::string>());
        if (!intent) throw Error(ErrorCode::kCorruptStore, "bad intent");
        session.records.push_back({*intent, PosteriorFromJson(r.at("posterior")),
                                   r.at("duration").get<double>(),
                                   r.at("condition").get<std::string>(),
                                   session.id, state.user});
      }
      state.sessions.emplace(session.id, std::move(session));
    }
    return state;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kCorruptStore, e.what());
  }
}

UserStore::UserStore(std::filesystem::path root) : root_(std::move(root)) {}

std::filesystem::path UserStore::UserDir(const std::string& user) const {
  ValidateUserId(user);
  return root_ / "users" / user;
}

void UserStore::Save(const UserState& state) const {
  const auto dir = UserDir(state.user);
  std::filesystem::create_directories(dir);
  WriteFileAtomically(dir / "prototypes.json",
                      CanonicalJson(PrototypeStoreToJson(state.prototypes)));
  WriteFileAtomically(dir / "state.json", CanonicalJson(UserStateToJson(state)));
}

std::optional<UserState> UserStore::Load(const std::string& user) const {
  const auto dir = UserDir(user);
  if (!std::filesystem::exists(dir / "state.json") &&
      !std::filesystem::exists(dir / "prototypes.json")) {
    return std::nullopt;
  }
  UserState state = UserStateFromJson(ReadJsonFile(dir / "state.json"));
  auto pending = std::move(state.prototypes.pending_examples);
  state.prototypes = PrototypeStoreFromJson(ReadJsonFile(dir / "prototypes.json"));
  state.prototypes.pending_examples = std::move(pending);
  if (state.user != user || state.prototypes.user != user) {
    throw Error(ErrorCode::kCorruptStore, "store belongs to another user");
  }
  return state;
}

void UserStore::AppendTrajectory(const std::string& user,
                                 const nlohmann::json& record) const {
  const auto dir = UserDir(user);
  std::filesystem::create_directories(dir);
  std::ofstream out(dir / "trajectories.jsonl", std::ios::app | std::ios::binary);
  out << CanonicalJson(record) << '\n';
}

}  // namespace scribe

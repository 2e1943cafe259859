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

#include "scribe/dataset.h"

#include <istream>
#include <ostream>

#include "scribe/error.h"

namespace scribe {

nlohmann::json RawTraceToJson(const RawTrace& trace) {
  nlohmann::json samples = nlohmann::json::array();
  for (const RawSample& s : trace.samples) samples.push_back({s.x, s.y, s.t_ms});
  return samples;
}

RawTrace RawTraceFromJson(const nlohmann::json& samples) {
  if (!samples.is_array()) {
    throw Error(ErrorCode::kBadRequest, "samples must be an array");
  }
  RawTrace trace;
  trace.samples.reserve(samples.size());
  for (const auto& s : samples) {
    if (!s.is_array() || s.size() != 3 || !s[0].is_number() ||
        !s[1].is_number() || !s[2].is_number()) {
      throw Error(ErrorCode::kBadRequest, "each sample must be [x, y, t_ms]");
    }
    trace.samples.push_back(
        {s[0].get<double>(), s[1].get<double>(), s[2].get<double>()});
  }
  return trace;
}

nlohmann::json DatasetRecordToJson(const DatasetRecord& record) {
  return {{"user", record.user},
          {"session", record.session},
          {"label", record.label.ToString()},
          {"samples", RawTraceToJson(record.trace)}};
}

DatasetRecord DatasetRecordFromJson(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("user") || !doc["user"].is_string() ||
      !doc.contains("session") || !doc["session"].is_number_integer() ||
      !doc.contains("label") || !doc["label"].is_string() ||
      !doc.contains("samples")) {
    throw Error(ErrorCode::kBadRequest,
                "record needs user, session, label and samples");
  }
  auto label = CharLabel::Parse(doc["label"].get<std::string>());
  if (!label) throw Error(ErrorCode::kBadRequest, "label must be a..z");
  return DatasetRecord{doc["user"].get<std::string>(),
                       doc["session"].get<int>(), *label,
                       RawTraceFromJson(doc["samples"])};
}

std::vector<DatasetRecord> ReadDataset(std::istream& in) {
  std::vector<DatasetRecord> out;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(DatasetRecordFromJson(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kBadRequest,
                  "line " + std::to_string(number) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::kBadRequest,
                  "line " + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

void WriteDataset(std::ostream& out, const std::vector<DatasetRecord>& records) {
  for (const DatasetRecord& r : records) out << DatasetRecordToJson(r).dump() << '\n';
}

}  // namespace scribe

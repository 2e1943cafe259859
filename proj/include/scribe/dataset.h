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

#ifndef SCRIBE_DATASET_H_
#define SCRIBE_DATASET_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "scribe/alphabet.h"
#include "scribe/trajectory.h"

namespace scribe {

// One line of a trajectory dataset:
// {"user": "...", "session": 3, "label": "a", "samples": [[x,y,t_ms],...]}
// with coordinates in raw device units.
struct DatasetRecord {
  std::string user;
  int session = 0;
  CharLabel label;
  RawTrace trace;

  friend bool operator==(const DatasetRecord&, const DatasetRecord&) = default;
};

nlohmann::json RawTraceToJson(const RawTrace& trace);
// Throws Error(kBadRequest) unless the value is an array of numeric
// [x, y, t_ms] triples.
RawTrace RawTraceFromJson(const nlohmann::json& samples);

nlohmann::json DatasetRecordToJson(const DatasetRecord& record);
// Throws Error(kBadRequest) on a malformed record. Extra keys are ignored.
DatasetRecord DatasetRecordFromJson(const nlohmann::json& doc);

// Blank lines are skipped. Throws Error(kBadRequest) naming the line number
// of the first malformed line.
std::vector<DatasetRecord> ReadDataset(std::istream& in);
void WriteDataset(std::ostream& out, const std::vector<DatasetRecord>& records);

}  // namespace scribe

#endif  // SCRIBE_DATASET_H_

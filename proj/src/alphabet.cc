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

#include "scribe/alphabet.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scribe/error.h"

namespace scribe {

CharLabel CharLabel::FromChar(char c) {
  if (c < 'a' || c > 'z') {
    throw Error(ErrorCode::kUnknownLabel, std::string("'") + c + "'");
  }
  return CharLabel(c);
}

std::optional<CharLabel> CharLabel::Parse(std::string_view text) {
  if (text.size() != 1 || text[0] < 'a' || text[0] > 'z') return std::nullopt;
  return CharLabel(text[0]);
}

Alphabet Alphabet::Lowercase() {
  std::vector<CharLabel> labels;
  for (char c = 'a'; c <= 'z'; ++c) labels.push_back(CharLabel::FromChar(c));
  return Alphabet(std::move(labels));
}

Alphabet::Alphabet(std::vector<CharLabel> labels) : labels_(std::move(labels)) {
  std::sort(labels_.begin(), labels_.end());
  labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
  if (labels_.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "alphabet must not be empty");
  }
  prior_.assign(labels_.size(), 1.0 / static_cast<double>(labels_.size()));
}

Alphabet::Alphabet(std::vector<CharLabel> labels, std::vector<double> prior) {
  if (labels.size() != prior.size() || labels.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "labels and prior differ in size");
  }
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
  double total = 0.0;
  for (std::size_t i : order) {
    if (!labels_.empty() && labels_.back() == labels[i]) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate label in alphabet");
    }
    if (!(prior[i] >= 0.0)) {
      throw Error(ErrorCode::kNotADistribution, "negative prior");
    }
    labels_.push_back(labels[i]);
    prior_.push_back(prior[i]);
    total += prior[i];
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw Error(ErrorCode::kNotADistribution, "prior does not sum to 1");
  }
}

std::optional<std::size_t> Alphabet::IndexOf(CharLabel label) const {
  auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
  if (it == labels_.end() || *it != label) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t Alphabet::IndexOrThrow(CharLabel label) const {
  auto index = IndexOf(label);
  if (!index) throw Error(ErrorCode::kUnknownLabel, label.ToString());
  return *index;
}

}  // namespace scribe

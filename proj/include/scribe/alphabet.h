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

#ifndef SCRIBE_ALPHABET_H_
#define SCRIBE_ALPHABET_H_

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace scribe {

// One lowercase English letter.
class CharLabel {
 public:
  // Throws Error(kUnknownLabel) for anything outside 'a'..'z'.
  static CharLabel FromChar(char c);
  static std::optional<CharLabel> Parse(std::string_view text);

  char ToChar() const { return c_; }
  std::string ToString() const { return std::string(1, c_); }
  // Position in the full 26-letter alphabet.
  int LetterIndex() const { return c_ - 'a'; }

  friend auto operator<=>(const CharLabel&, const CharLabel&) = default;

 private:
  explicit CharLabel(char c) : c_(c) {}
  char c_;
};

// The ordered input set together with its prior P(M).
class Alphabet {
 public:
  // All 26 lowercase letters with a uniform prior.
  static Alphabet Lowercase();

  // Labels are sorted and de-duplicated; the prior is uniform.
  explicit Alphabet(std::vector<CharLabel> labels);
  // prior[i] belongs to labels()[i] after sorting by label. Must be
  // non-negative and sum to 1 within 1e-9.
  Alphabet(std::vector<CharLabel> labels, std::vector<double> prior);

  std::size_t size() const { return labels_.size(); }
  // The rvalue overloads return copies so that iterating over a temporary
  // alphabet does not dangle.
  const std::vector<CharLabel>& labels() const& { return labels_; }
  std::vector<CharLabel> labels() && { return std::move(labels_); }
  const std::vector<double>& prior() const& { return prior_; }
  std::vector<double> prior() && { return std::move(prior_); }
  const CharLabel& label(std::size_t i) const { return labels_[i]; }

  std::optional<std::size_t> IndexOf(CharLabel label) const;
  // Throws Error(kUnknownLabel) when absent.
  std::size_t IndexOrThrow(CharLabel label) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<CharLabel> labels_;
  std::vector<double> prior_;
};

}  // namespace scribe

#endif  // SCRIBE_ALPHABET_H_

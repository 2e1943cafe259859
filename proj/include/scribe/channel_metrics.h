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

#ifndef SCRIBE_CHANNEL_METRICS_H_
#define SCRIBE_CHANNEL_METRICS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "nlohmann/json.hpp"
#include "scribe/alphabet.h"
#include "scribe/decoder.h"

namespace scribe {

// One writing attempt: the intended letter, the final posterior and the
// writing duration in seconds.
struct CharacterRecord {
  CharLabel intent;
  Posterior posterior;
  double duration = 0.0;
  std::string condition;
  int session = 0;
  std::string user;

  friend bool operator==(const CharacterRecord&,
                         const CharacterRecord&) = default;
};

// Row m is the mean final posterior over records whose intent is label m.
struct MeanPosteriorMatrix {
  std::vector<CharLabel> labels;
  std::vector<double> prior;
  std::vector<std::vector<double>> rows;

  // Prior-weighted mixture of the rows.
  std::vector<double> Marginal() const;
};

// Entropies and log loss in bits, durations in seconds, rates in bits/second.
struct ChannelReport {
  double entropy_marginal = 0.0;
  double mutual_information = 0.0;
  double mean_log_loss = 0.0;
  double mean_duration = 0.0;
  double rate_mi = 0.0;
  double rate_ll = 0.0;
  double rate_ideal = 0.0;
  std::size_t n = 0;

  friend bool operator==(const ChannelReport&, const ChannelReport&) = default;
};

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p_two_sided = 1.0;
  double mean_difference = 0.0;
};

// -sum p log2 p with 0 log 0 = 0. Throws Error(kNotADistribution) unless the
// entries are non-negative and sum to 1 within 1e-6.
double Entropy(std::span<const double> distribution);

// Throws Error(kMissingClass) naming the first alphabet label without a
// record, and Error(kInvalidArgument) for a posterior over another alphabet.
MeanPosteriorMatrix MeanPosteriors(std::span<const CharacterRecord> records,
                                   const Alphabet& alphabet);

// H(marginal) - sum_m prior(m) H(row m).
double MutualInformation(const MeanPosteriorMatrix& matrix);

// Every report field. The log-loss term averages -log2 q(intent) within each
// label, then mixes labels by the prior; rate_ll is not clamped at zero.
// rate_ideal uses log2 |alphabet|. Throws Error(kEmptyInput) for no records
// and Error(kMissingClass) as MeanPosteriors.
ChannelReport ComputeChannelReport(std::span<const CharacterRecord> records,
                                   const Alphabet& alphabet);

double RateMi(std::span<const CharacterRecord> records,
              const Alphabet& alphabet);
double RateLl(std::span<const CharacterRecord> records,
              const Alphabet& alphabet);
// log2 |alphabet| / mean duration; needs no posteriors.
double RateIdeal(std::span<const CharacterRecord> records,
                 const Alphabet& alphabet);

// The score shown after a session. Requires every alphabet label.
ChannelReport SessionReport(std::span<const CharacterRecord> records,
                            const Alphabet& alphabet);

// Paired Student t-test on a - b with a two-sided p-value.
// Throws Error(kLengthMismatch) for unequal or too-short inputs and
// Error(kZeroVariance) when every difference is identical.
TTestResult PairedTTest(std::span<const double> a, std::span<const double> b);

// Flat JSON of the report fields, values rounded to 15 significant digits.
nlohmann::json ChannelReportToJson(const ChannelReport& report);
ChannelReport ChannelReportFromJson(const nlohmann::json& doc);

// Rounds to the given number of significant decimal digits.
double RoundSignificant(double value, int digits);

}  // namespace scribe

#endif  // SCRIBE_CHANNEL_METRICS_H_

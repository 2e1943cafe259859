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

#include "scribe/channel_metrics.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include <boost/math/distributions/students_t.hpp>

#include "scribe/error.h"

namespace scribe {
namespace {

void CheckSupport(const CharacterRecord& r, const Alphabet& alphabet) {
  if (r.posterior.labels != alphabet.labels() ||
      r.posterior.probabilities.size() != alphabet.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "posterior support differs from the alphabet");
  }
}

double MeanDuration(std::span<const CharacterRecord> records) {
  if (records.empty()) throw Error(ErrorCode::kEmptyInput, "no records");
  // Running mean: equal durations give back exactly that duration.
  double mean = 0.0;
  double k = 0.0;
  for (const CharacterRecord& r : records) {
    if (!(r.duration > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "durations must be > 0");
    }
    k += 1.0;
    mean += (r.duration - mean) / k;
  }
  return mean;
}

}  // namespace

std::vector<double> MeanPosteriorMatrix::Marginal() const {
  std::vector<double> out(labels.size(), 0.0);
  for (std::size_t m = 0; m < rows.size(); ++m) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += prior[m] * rows[m][j];
  }
  return out;
}

double Entropy(std::span<const double> distribution) {
  double total = 0.0;
  for (double p : distribution) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      throw Error(ErrorCode::kNotADistribution, "negative or non-finite entry");
    }
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-6) {
    throw Error(ErrorCode::kNotADistribution, "entries do not sum to 1");
  }
  double h = 0.0;
  for (double p : distribution) {
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

MeanPosteriorMatrix MeanPosteriors(std::span<const CharacterRecord> records,
                                   const Alphabet& alphabet) {
  const std::size_t n = alphabet.size();
  MeanPosteriorMatrix out{alphabet.labels(), alphabet.prior(),
                          std::vector<std::vector<double>>(
                              n, std::vector<double>(n, 0.0))};
  std::vector<std::size_t> counts(n, 0);
  for (const CharacterRecord& r : records) {
    CheckSupport(r, alphabet);
    const std::size_t m = alphabet.IndexOrThrow(r.intent);
    for (std::size_t j = 0; j < n; ++j) {
      out.rows[m][j] += r.posterior.probabilities[j];
    }
    ++counts[m];
  }
  for (std::size_t m = 0; m < n; ++m) {
    if (counts[m] == 0) {
      throw Error(ErrorCode::kMissingClass, alphabet.label(m).ToString());
    }
    for (double& v : out.rows[m]) v /= static_cast<double>(counts[m]);
  }
  return out;
}

double MutualInformation(const MeanPosteriorMatrix& matrix) {
  double conditional = 0.0;
  for (std::size_t m = 0; m < matrix.rows.size(); ++m) {
    if (matrix.prior[m] > 0.0) {
      conditional += matrix.prior[m] * Entropy(matrix.rows[m]);
    }
  }
  return Entropy(matrix.Marginal()) - conditional;
}

ChannelReport ComputeChannelReport(std::span<const CharacterRecord> records,
                                   const Alphabet& alphabet) {
  ChannelReport report;
  report.n = records.size();
  report.mean_duration = MeanDuration(records);
  const MeanPosteriorMatrix matrix = MeanPosteriors(records, alphabet);
  report.entropy_marginal = Entropy(matrix.Marginal());
  report.mutual_information = MutualInformation(matrix);

  const std::size_t n = alphabet.size();
  std::vector<double> loss(n, 0.0);
  std::vector<std::size_t> counts(n, 0);
  for (const CharacterRecord& r : records) {
    const std::size_t m = alphabet.IndexOrThrow(r.intent);
    loss[m] += -std::log2(r.posterior.probabilities[m]);
    ++counts[m];
  }
  for (std::size_t m = 0; m < n; ++m) {
    if (alphabet.prior()[m] > 0.0) {
      report.mean_log_loss +=
          alphabet.prior()[m] * loss[m] / static_cast<double>(counts[m]);
    }
  }
  const double ceiling = std::log2(static_cast<double>(n));
  report.rate_mi = report.mutual_information / report.mean_duration;
  report.rate_ll =
      (report.entropy_marginal - report.mean_log_loss) / report.mean_duration;
  report.rate_ideal = ceiling / report.mean_duration;
  return report;
}

double RateMi(std::span<const CharacterRecord> records,
              const Alphabet& alphabet) {
  return ComputeChannelReport(records, alphabet).rate_mi;
}

double RateLl(std::span<const CharacterRecord> records,
              const Alphabet& alphabet) {
  return ComputeChannelReport(records, alphabet).rate_ll;
}

double RateIdeal(std::span<const CharacterRecord> records,
                 const Alphabet& alphabet) {
  return std::log2(static_cast<double>(alphabet.size())) /
         MeanDuration(records);
}

ChannelReport SessionReport(std::span<const CharacterRecord> records,
                            const Alphabet& alphabet) {
  return ComputeChannelReport(records, alphabet);
}

TTestResult PairedTTest(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kLengthMismatch, "paired samples differ in length");
  }
  if (a.size() < 2) {
    throw Error(ErrorCode::kLengthMismatch, "need at least 2 pairs");
  }
  const double n = static_cast<double>(a.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) mean += a[i] - b[i];
  mean /= n;
  double ss = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i] - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / (n - 1.0));
  if (!(sd > 0.0)) {
    throw Error(ErrorCode::kZeroVariance, "all paired differences are equal");
  }
  TTestResult result;
  result.mean_difference = mean;
  result.df = n - 1.0;
  result.t = mean / (sd / std::sqrt(n));
  boost::math::students_t dist(result.df);
  result.p_two_sided = 2.0 * boost::math::cdf(boost::math::complement(
                                 dist, std::abs(result.t)));
  return result;
}

double RoundSignificant(double value, int digits) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*g", digits, value);
  return std::strtod(buffer, nullptr);
}

nlohmann::json ChannelReportToJson(const ChannelReport& r) {
  auto round = [](double v) { return RoundSignificant(v, 15); };
  return {{"entropy_marginal", round(r.entropy_marginal)},
          {"mutual_information", round(r.mutual_information)},
          {"mean_log_loss", round(r.mean_log_loss)},
          {"mean_duration", round(r.mean_duration)},
          {"rate_mi", round(r.rate_mi)},
          {"rate_ll", round(r.rate_ll)},
          {"rate_ideal", round(r.rate_ideal)},
          {"n", r.n}};
}

ChannelReport ChannelReportFromJson(const nlohmann::json& doc) {
  // Undefined fields are written as null.
  auto number = [&](const char* key) {
    const auto& v = doc.at(key);
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
  };
  try {
    ChannelReport r;
    r.entropy_marginal = number("entropy_marginal");
    r.mutual_information = number("mutual_information");
    r.mean_log_loss = number("mean_log_loss");
    r.mean_duration = number("mean_duration");
    r.rate_mi = number("rate_mi");
    r.rate_ll = number("rate_ll");
    r.rate_ideal = number("rate_ideal");
    r.n = doc.at("n").get<std::size_t>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string("malformed channel report: ") + e.what());
  }
}

}  // namespace scribe

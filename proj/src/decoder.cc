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

#include "scribe/decoder.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "scribe/error.h"

namespace scribe {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Collapses per-prototype distances to per-label minima.
std::vector<double> MinPerLabel(const PrototypeSet& set,
                                const Alphabet& alphabet,
                                std::span<const double> per_prototype) {
  std::vector<double> out(alphabet.size(), kInf);
  for (std::size_t i = 0; i < set.prototypes.size(); ++i) {
    const std::size_t m = alphabet.IndexOrThrow(set.prototypes[i].label);
    out[m] = std::min(out[m], per_prototype[i]);
  }
  return out;
}

}  // namespace

void DecoderConfig::Validate(std::size_t alphabet_size) const {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorCode::kInvalidArgument, "decoder scale must be > 0");
  }
  if (!(floor >= 0.0) ||
      floor > 1.0 / static_cast<double>(std::max<std::size_t>(alphabet_size, 1))) {
    throw Error(ErrorCode::kInvalidArgument,
                "decoder floor must lie in [0, 1/|alphabet|]");
  }
  if (query_length == 1) {
    throw Error(ErrorCode::kInvalidArgument, "query length must be 0 or >= 2");
  }
  dtw.Validate();
}

FeatureSeq PrepareQuery(const RawTrace& trace, const DecoderConfig& cfg) {
  FeatureSeq seq = Encode(trace);
  return cfg.query_length == 0 ? seq : Resample(seq, cfg.query_length);
}

double Posterior::Probability(CharLabel label) const {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == label) return probabilities[i];
  }
  throw Error(ErrorCode::kUnknownLabel, label.ToString());
}

Posterior PosteriorFromDistances(const Alphabet& alphabet,
                                 std::span<const double> label_distances,
                                 const DecoderConfig& cfg, double t) {
  cfg.Validate(alphabet.size());
  if (label_distances.size() != alphabet.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "one distance per alphabet label required");
  }
  const std::size_t n = alphabet.size();
  Posterior out{alphabet.labels(), std::vector<double>(n, 0.0), t};

  // Shifting by the minimum leaves the normalized result unchanged and keeps
  // exp() away from underflow.
  const double shift =
      *std::min_element(label_distances.begin(), label_distances.end());
  if (shift == kInf) {
    std::fill(out.probabilities.begin(), out.probabilities.end(),
              1.0 / static_cast<double>(n));
    return out;
  }
  double total = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double d = label_distances[m];
    out.probabilities[m] = d == kInf ? 0.0 : std::exp(-(d - shift) / cfg.scale);
    total += out.probabilities[m];
  }
  for (double& p : out.probabilities) p /= total;

  if (cfg.floor > 0.0) {
    total = 0.0;
    for (double& p : out.probabilities) {
      p = std::max(p, cfg.floor);
      total += p;
    }
    for (double& p : out.probabilities) p /= total;
  }
  return out;
}

std::vector<double> LabelDistances(const FeatureSeq& seq,
                                   const PrototypeSet& set,
                                   const DtwConfig& cfg) {
  if (seq.empty()) throw Error(ErrorCode::kEmptyInput, "empty sequence");
  std::vector<double> per_prototype;
  per_prototype.reserve(set.prototypes.size());
  for (const Prototype& p : set.prototypes) {
    try {
      per_prototype.push_back(DtwDistance(seq.points, p.states, cfg));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kBandInfeasible) throw;
      per_prototype.push_back(kInf);
    }
  }
  return MinPerLabel(set, set.alphabet(), per_prototype);
}

Posterior DecodePosterior(const FeatureSeq& seq, const PrototypeSet& set,
                          const DecoderConfig& cfg) {
  const std::vector<double> distances = LabelDistances(seq, set, cfg.dtw);
  return PosteriorFromDistances(set.alphabet(), distances, cfg, seq.duration);
}

PrefixState PrefixInit(const PrototypeSet& set, const DtwConfig& cfg) {
  auto templates = std::make_shared<PrefixState::Templates>();
  templates->reserve(set.prototypes.size());
  for (const Prototype& p : set.prototypes) templates->push_back(p.states);
  return PrefixState(std::move(templates), cfg);
}

std::pair<PrefixState, Posterior> DecodeIncremental(PrefixState state,
                                                    const FeaturePoint& point,
                                                    const PrototypeSet& set,
                                                    const DecoderConfig& cfg,
                                                    double t) {
  if (state.template_count() != set.prototypes.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "prefix state was not initialized for this prototype set");
  }
  state.Update(point);
  const Alphabet alphabet = set.alphabet();
  const std::vector<double> distances =
      MinPerLabel(set, alphabet, state.Distances());
  Posterior posterior = PosteriorFromDistances(alphabet, distances, cfg, t);
  return {std::move(state), std::move(posterior)};
}

CharLabel Predict(const Posterior& posterior) {
  if (posterior.labels.empty()) {
    throw Error(ErrorCode::kEmptyInput, "empty posterior");
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < posterior.probabilities.size(); ++i) {
    if (posterior.probabilities[i] > posterior.probabilities[best]) best = i;
  }
  return posterior.labels[best];
}

}  // namespace scribe

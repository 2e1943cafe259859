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

#ifndef SCRIBE_DECODER_H_
#define SCRIBE_DECODER_H_

#include <span>
#include <utility>
#include <vector>

#include "scribe/alphabet.h"
#include "scribe/dtw.h"
#include "scribe/prototype.h"
#include "scribe/trajectory.h"

namespace scribe {

struct DecoderConfig {
  // Temperature dividing distances before the e^{-x} transfer.
  double scale = 0.1;
  // Minimum per-label probability before the final renormalization.
  double floor = 1e-6;
  // Arc-length resampling applied to whole traces before batch decoding;
  // 0 keeps every sample.
  std::size_t query_length = 32;
  DtwConfig dtw;

  // Throws Error(kInvalidArgument) unless scale > 0 and
  // 0 <= floor <= 1/alphabet_size.
  void Validate(std::size_t alphabet_size) const;
};

// Distribution over the alphabet after t seconds of writing.
struct Posterior {
  std::vector<CharLabel> labels;
  std::vector<double> probabilities;
  double t = 0.0;

  // Throws Error(kUnknownLabel) for a label outside the support.
  double Probability(CharLabel label) const;

  friend bool operator==(const Posterior&, const Posterior&) = default;
};

// Normalized exp(-d/scale), floored and renormalized. Infinite distances get
// zero mass; if every distance is infinite the result is uniform.
Posterior PosteriorFromDistances(const Alphabet& alphabet,
                                 std::span<const double> label_distances,
                                 const DecoderConfig& cfg, double t);

// Per label of set.alphabet(), the smallest distance to any of its
// prototypes. Banded-infeasible pairs count as +infinity.
std::vector<double> LabelDistances(const FeatureSeq& seq,
                                   const PrototypeSet& set,
                                   const DtwConfig& cfg);

// Throws Error(kEmptyInput) for an empty sequence.
Posterior DecodePosterior(const FeatureSeq& seq, const PrototypeSet& set,
                          const DecoderConfig& cfg);

// Featurized trace ready for DecodePosterior: Encode, then Resample to
// cfg.query_length when that is nonzero.
FeatureSeq PrepareQuery(const RawTrace& trace, const DecoderConfig& cfg);

// Prefix state with one template per prototype, in set order.
PrefixState PrefixInit(const PrototypeSet& set, const DtwConfig& cfg);

// Consumes one point and returns the posterior of the consumed prefix, equal
// to DecodePosterior on that prefix. t is the prefix duration in seconds.
std::pair<PrefixState, Posterior> DecodeIncremental(PrefixState state,
                                                    const FeaturePoint& point,
                                                    const PrototypeSet& set,
                                                    const DecoderConfig& cfg,
                                                    double t = 0.0);

// The most probable label; ties go to the earlier label.
CharLabel Predict(const Posterior& posterior);

}  // namespace scribe

#endif  // SCRIBE_DECODER_H_

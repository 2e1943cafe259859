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

#ifndef SCRIBE_LEARNING_H_
#define SCRIBE_LEARNING_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scribe/alphabet.h"
#include "scribe/dtw.h"
#include "scribe/prototype.h"
#include "scribe/trajectory.h"

namespace scribe {

// A featurized handwriting instance with its true label.
struct LabeledExample {
  CharLabel label;
  FeatureSeq features;
};

struct StateReductionOptions {
  // States whose mean visits per corpus instance fall below this are removed.
  double visit_threshold = 0.0;
  // Consecutive states with a local cost below this are merged.
  double merge_epsilon = 0.01;
  std::size_t min_states = 2;
  // Fraction of the corpus whose nearest label must not change.
  double min_agreement = 0.95;
  DtwConfig dtw;
};

struct LearningConfig {
  std::size_t resample_length = kDefaultResampleLength;
  // Clusters per label for the typical set and after user adaptation.
  std::size_t k_typical = 3;
  std::size_t k_adapted = 2;
  double user_weight = 10.0;
  double prototype_weight = 4.0;
  // Buffered examples per label that trigger re-clustering.
  std::size_t cadence = 4;
  std::uint64_t seed = 0;
  // When set, every newly clustered prototype is shortened against the
  // examples it was clustered from.
  std::optional<StateReductionOptions> reduction;
};

// The typical set: per label, uniform-weight k-means over the pooled corpus.
// Throws Error(kEmptyClass) naming the first label of alphabet with no data.
PrototypeSet TrainTypicalPrototypes(std::span<const LabeledExample> corpus,
                                    const Alphabet& alphabet,
                                    const LearningConfig& cfg);

// First adaptation after the initial interaction: for each label the user
// wrote, re-cluster the pool (weight 1) together with the user's examples
// (weight user_weight). Labels with no user data keep their typical
// prototypes. When the pool has no data for a label, that label's typical
// prototypes stand in for it. The result has generation 1.
// Throws Error(kInvalidArgument) unless typical has generation 0.
PrototypeSet InitialAdapt(const PrototypeSet& typical,
                          std::span<const LabeledExample> pool,
                          std::span<const LabeledExample> user_examples,
                          const LearningConfig& cfg);

// Buffers examples per label; a label reaching cfg.cadence buffered examples
// is re-clustered over its previous prototypes (weight prototype_weight) and
// the buffer (weight 1), after which its buffer is cleared and the
// generation increments. Throws Error(kUnknownLabel) for a label outside the
// set (before anything is modified) and Error(kInvalidArgument) when the set
// is still generation 0.
PrototypeSet IncrementalAdapt(PrototypeSet set,
                              std::span<const LabeledExample> new_examples,
                              const LearningConfig& cfg);

struct StateReduction {
  Prototype prototype;
  std::size_t states_before = 0;
  // Fraction of the corpus whose nearest prototype keeps its label.
  double agreement = 1.0;
  bool rolled_back = false;
};

// Expected number of corpus points mapped to each state under the optimal
// DTW alignment, averaged over the corpus. A point aligned to r states adds
// 1/r to each of them.
std::vector<double> ExpectedVisits(const Prototype& prototype,
                                   std::span<const FeatureSeq> corpus,
                                   const DtwConfig& dtw);

// Removes rarely visited states and merges near-duplicate neighbours. The
// label of the nearest prototype among competitors plus this one is compared
// before and after for every corpus instance; below min_agreement the original
// prototype is returned (with refreshed visit counts) and rolled_back is set.
// Throws Error(kEmptyCorpus) for an empty corpus.
StateReduction ReduceStates(const Prototype& prototype,
                            std::span<const FeatureSeq> corpus,
                            const StateReductionOptions& options,
                            std::span<const Prototype> competitors = {});

// Deterministic per-label stream derived from a base seed.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t a,
                         std::uint64_t b = 0);

}  // namespace scribe

#endif  // SCRIBE_LEARNING_H_

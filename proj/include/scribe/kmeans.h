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

#ifndef SCRIBE_KMEANS_H_
#define SCRIBE_KMEANS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scribe/alphabet.h"
#include "scribe/trajectory.h"

namespace scribe {

struct WeightedInstance {
  FeatureSeq features;
  double weight = 1.0;
  CharLabel label;
};

struct KMeansResult {
  std::vector<FeatureSeq> centroids;
  // Cluster index per input instance after the final assignment step.
  std::vector<std::size_t> assignment;
  // Weighted sum of squared distances after every assignment step. Computed
  // on the raw weighted means, before directions are re-normalized.
  std::vector<double> objective_history;
  std::size_t iterations = 0;
};

// Weighted Lloyd iterations on flattened (x, y, dx, dy) vectors, seeded by
// weighted k-means++. Stops when assignments repeat or after max_iterations.
// k is reduced to the number of distinct instances; output directions are
// unit length per point.
//
// All instances must share one label and one length. Throws
// Error(kEmptyClass) for an empty list and Error(kInvalidArgument) for mixed
// labels, mismatched lengths, k == 0 or a non-positive weight.
KMeansResult WeightedKMeansDetailed(std::span<const WeightedInstance> instances,
                                    std::size_t k, std::uint64_t seed,
                                    std::size_t max_iterations = 100);

std::vector<FeatureSeq> WeightedKMeans(
    std::span<const WeightedInstance> instances, std::size_t k,
    std::uint64_t seed);

// Makes every (dx, dy) unit length. A direction that vanished in averaging is
// carried from its neighbour.
void RenormalizeDirections(std::vector<FeaturePoint>& points);

}  // namespace scribe

#endif  // SCRIBE_KMEANS_H_

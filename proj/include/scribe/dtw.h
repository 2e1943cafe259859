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

#ifndef SCRIBE_DTW_H_
#define SCRIBE_DTW_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "scribe/trajectory.h"

namespace scribe {

struct DtwConfig {
  // Multiplier on the (dx, dy) terms of the local cost.
  double direction_weight = 1.0;
  // Sakoe-Chiba half-width; cells with |i - j| > band are excluded.
  std::optional<std::size_t> band;
  // Divide the total cost by the number of cells on the alignment path.
  bool normalize_by_path = true;

  // Throws Error(kInvalidArgument) on a negative weight or zero band.
  void Validate() const;

  friend bool operator==(const DtwConfig&, const DtwConfig&) = default;
};

// sqrt(dx^2 + dy^2 + w^2 (ddx^2 + ddy^2)) between two feature points.
double LocalCost(const FeaturePoint& a, const FeaturePoint& b,
                 double direction_weight);

// Accumulated cost of the best path into a cell and that path's cell count.
// Paths are ranked by cost, then by length (shorter wins), then by step
// order diagonal, vertical, horizontal.
struct DtwCell {
  double cost = 0.0;
  std::uint32_t length = 0;

  bool feasible() const;
  friend bool operator==(const DtwCell&, const DtwCell&) = default;
};

// Final distance for a cell under cfg. Infinite for infeasible cells.
double CellDistance(const DtwCell& cell, const DtwConfig& cfg);

// Classic DTW with steps (1,0), (0,1), (1,1).
// Throws Error(kEmptyInput) for an empty sequence and Error(kBandInfeasible)
// when banded and the lengths differ by more than the band.
double DtwDistance(std::span<const FeaturePoint> a,
                   std::span<const FeaturePoint> b, const DtwConfig& cfg);
double DtwDistance(const FeatureSeq& a, const FeatureSeq& b,
                   const DtwConfig& cfg);

struct DtwAlignment {
  double distance = 0.0;
  DtwCell end;
  // (index into a, index into b), from (0,0) to the last cell.
  std::vector<std::pair<std::size_t, std::size_t>> path;
};

// Same optimum as DtwDistance, plus the optimal path.
DtwAlignment DtwAlign(std::span<const FeaturePoint> a,
                      std::span<const FeaturePoint> b, const DtwConfig& cfg);

// Incremental DTW of a growing query against a fixed list of templates. After
// consuming the prefix q[0..t) the distances equal DtwDistance(q[0..t), tmpl)
// for each template, bit for bit; infeasible banded prefixes read as
// +infinity instead of throwing.
class PrefixState {
 public:
  using Templates = std::vector<std::vector<FeaturePoint>>;

  // Throws Error(kEmptyInput) if there are no templates or one is empty.
  PrefixState(std::shared_ptr<const Templates> templates, DtwConfig cfg);

  // Consumes one query point. O(total template states).
  void Update(const FeaturePoint& point);

  std::size_t consumed() const { return consumed_; }
  std::size_t template_count() const { return columns_.size(); }
  const std::vector<DtwCell>& column(std::size_t k) const {
    return columns_[k];
  }
  const DtwConfig& config() const { return cfg_; }

  // Throws Error(kEmptyInput) when no point has been consumed.
  std::vector<double> Distances() const;

  friend bool operator==(const PrefixState& a, const PrefixState& b);

 private:
  std::shared_ptr<const Templates> templates_;
  DtwConfig cfg_;
  std::vector<std::vector<DtwCell>> columns_;
  std::size_t consumed_ = 0;
};

// Value-semantics form of PrefixState::Update.
PrefixState PrefixUpdate(PrefixState state, const FeaturePoint& point);

}  // namespace scribe

#endif  // SCRIBE_DTW_H_

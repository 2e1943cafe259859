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

#ifndef SCRIBE_TRAJECTORY_H_
#define SCRIBE_TRAJECTORY_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "scribe/alphabet.h"

namespace scribe {

inline constexpr std::size_t kDefaultResampleLength = 32;

// A pen sample in device units; t is in milliseconds.
struct RawSample {
  double x = 0.0;
  double y = 0.0;
  double t_ms = 0.0;

  friend bool operator==(const RawSample&, const RawSample&) = default;
};

// One pen-down..pen-up trace as captured by the device.
struct RawTrace {
  std::vector<RawSample> samples;

  friend bool operator==(const RawTrace&, const RawTrace&) = default;
};

// Normalized sample: coordinates in [0,1], t in seconds from the first sample.
struct TrajectoryPoint {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;

  friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) =
      default;
};

struct Trajectory {
  std::vector<TrajectoryPoint> samples;
  std::optional<CharLabel> label;

  // Writing duration, i.e. the timestamp of the last sample.
  double duration() const { return samples.empty() ? 0.0 : samples.back().t; }
};

// (x, y, dx, dy): position plus unit writing direction.
struct FeaturePoint {
  double x = 0.0;
  double y = 0.0;
  double dx = 1.0;
  double dy = 0.0;

  friend bool operator==(const FeaturePoint&, const FeaturePoint&) = default;
};

struct FeatureSeq {
  std::vector<FeaturePoint> points;
  double duration = 0.0;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }

  friend bool operator==(const FeatureSeq&, const FeatureSeq&) = default;
};

// Scales the bounding box by 1/max(width, height), moves its min corner to
// the origin and rebases time to seconds from the first sample.
// Throws Error(kDegenerateTrace) for fewer than two samples or a zero-extent
// box, and Error(kInvalidArgument) for non-increasing timestamps.
Trajectory Normalize(const RawTrace& raw);

// Inverse view of a normalized trajectory as a raw trace (t in ms).
RawTrace ToRawTrace(const Trajectory& trajectory);

// One feature point per sample. The direction of a zero-length segment is
// carried from the previous sample; leading samples without a defined
// direction take the first defined one.
// Throws Error(kDegenerateTrace) if no segment has non-zero length.
FeatureSeq Featurize(const Trajectory& trajectory);

// Normalize followed by Featurize.
FeatureSeq Encode(const RawTrace& raw);

// Unit directions for a polyline using the same carry rules as Featurize.
// Returns std::nullopt when every segment has zero length.
std::optional<std::vector<FeaturePoint>> WithDirections(
    std::span<const FeaturePoint> positions);

// Total (x, y) polyline length.
double ArcLength(const FeatureSeq& seq);

// length points equally spaced by arc length along the (x, y) polyline,
// directions recomputed from the resampled positions, duration preserved.
// Throws Error(kInvalidArgument) for length < 2 and Error(kEmptyInput) for an
// empty sequence.
FeatureSeq Resample(const FeatureSeq& seq,
                    std::size_t length = kDefaultResampleLength);

}  // namespace scribe

#endif  // SCRIBE_TRAJECTORY_H_

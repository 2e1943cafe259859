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

#include "scribe/trajectory.h"

#include <algorithm>
#include <cmath>

#include "scribe/error.h"

namespace scribe {

Trajectory Normalize(const RawTrace& raw) {
  const auto& in = raw.samples;
  if (in.size() < 2) {
    throw Error(ErrorCode::kDegenerateTrace, "need at least 2 samples");
  }
  double min_x = in[0].x, max_x = in[0].x, min_y = in[0].y, max_y = in[0].y;
  for (std::size_t i = 0; i < in.size(); ++i) {
    const RawSample& s = in[i];
    if (!std::isfinite(s.x) || !std::isfinite(s.y) || !std::isfinite(s.t_ms)) {
      throw Error(ErrorCode::kInvalidArgument, "non-finite sample");
    }
    if (i > 0 && !(s.t_ms > in[i - 1].t_ms)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "timestamps must be strictly increasing");
    }
    min_x = std::min(min_x, s.x);
    max_x = std::max(max_x, s.x);
    min_y = std::min(min_y, s.y);
    max_y = std::max(max_y, s.y);
  }
  const double extent = std::max(max_x - min_x, max_y - min_y);
  if (!(extent > 0.0)) {
    throw Error(ErrorCode::kDegenerateTrace, "all samples coincide");
  }
  Trajectory out;
  out.samples.reserve(in.size());
  const double t0 = in[0].t_ms;
  for (const RawSample& s : in) {
    // Clamp guards the last ulp so coordinates stay inside [0,1].
    out.samples.push_back(
        {std::clamp((s.x - min_x) / extent, 0.0, 1.0),
         std::clamp((s.y - min_y) / extent, 0.0, 1.0), (s.t_ms - t0) / 1000.0});
  }
  return out;
}

RawTrace ToRawTrace(const Trajectory& trajectory) {
  RawTrace raw;
  raw.samples.reserve(trajectory.samples.size());
  for (const TrajectoryPoint& p : trajectory.samples) {
    raw.samples.push_back({p.x, p.y, p.t * 1000.0});
  }
  return raw;
}

std::optional<std::vector<FeaturePoint>> WithDirections(
    std::span<const FeaturePoint> positions) {
  std::vector<FeaturePoint> out(positions.begin(), positions.end());
  std::optional<std::size_t> first_defined;
  for (std::size_t i = 1; i < out.size(); ++i) {
    const double ux = out[i].x - out[i - 1].x;
    const double uy = out[i].y - out[i - 1].y;
    const double z = std::hypot(ux, uy);
    if (z > 0.0) {
      out[i].dx = ux / z;
      out[i].dy = uy / z;
      if (!first_defined) first_defined = i;
    } else if (first_defined) {
      out[i].dx = out[i - 1].dx;
      out[i].dy = out[i - 1].dy;
    }
  }
  if (!first_defined) return std::nullopt;
  for (std::size_t i = 0; i < *first_defined; ++i) {
    out[i].dx = out[*first_defined].dx;
    out[i].dy = out[*first_defined].dy;
  }
  return out;
}

FeatureSeq Featurize(const Trajectory& trajectory) {
  if (trajectory.samples.size() < 2) {
    throw Error(ErrorCode::kDegenerateTrace, "need at least 2 samples");
  }
  std::vector<FeaturePoint> positions;
  positions.reserve(trajectory.samples.size());
  for (const TrajectoryPoint& p : trajectory.samples) {
    positions.push_back({p.x, p.y, 0.0, 0.0});
  }
  auto points = WithDirections(positions);
  if (!points) {
    throw Error(ErrorCode::kDegenerateTrace, "trajectory has no extent");
  }
  return FeatureSeq{std::move(*points), trajectory.duration()};
}

FeatureSeq Encode(const RawTrace& raw) { return Featurize(Normalize(raw)); }

double ArcLength(const FeatureSeq& seq) {
  double total = 0.0;
  for (std::size_t i = 1; i < seq.points.size(); ++i) {
    total += std::hypot(seq.points[i].x - seq.points[i - 1].x,
                        seq.points[i].y - seq.points[i - 1].y);
  }
  return total;
}

FeatureSeq Resample(const FeatureSeq& seq, std::size_t length) {
  if (length < 2) {
    throw Error(ErrorCode::kInvalidArgument, "resample length must be >= 2");
  }
  if (seq.empty()) throw Error(ErrorCode::kEmptyInput, "empty sequence");
  const auto& in = seq.points;

  std::vector<double> cumulative(in.size(), 0.0);
  for (std::size_t i = 1; i < in.size(); ++i) {
    cumulative[i] = cumulative[i - 1] +
                    std::hypot(in[i].x - in[i - 1].x, in[i].y - in[i - 1].y);
  }
  const double total = cumulative.back();
  if (!(total > 0.0)) {
    return FeatureSeq{std::vector<FeaturePoint>(length, in.front()),
                      seq.duration};
  }

  std::vector<FeaturePoint> positions;
  positions.reserve(length);
  positions.push_back({in.front().x, in.front().y, 0.0, 0.0});
  std::size_t segment = 1;
  for (std::size_t k = 1; k + 1 < length; ++k) {
    const double target =
        total * static_cast<double>(k) / static_cast<double>(length - 1);
    while (segment + 1 < in.size() && cumulative[segment] < target) ++segment;
    const double span = cumulative[segment] - cumulative[segment - 1];
    const double u =
        span > 0.0
            ? std::clamp((target - cumulative[segment - 1]) / span, 0.0, 1.0)
            : 1.0;
    const FeaturePoint& a = in[segment - 1];
    const FeaturePoint& b = in[segment];
    positions.push_back({a.x + u * (b.x - a.x), a.y + u * (b.y - a.y), 0.0, 0.0});
  }
  positions.push_back({in.back().x, in.back().y, 0.0, 0.0});

  auto points = WithDirections(positions);
  if (!points) {
    return FeatureSeq{std::vector<FeaturePoint>(length, in.front()),
                      seq.duration};
  }
  return FeatureSeq{std::move(*points), seq.duration};
}

}  // namespace scribe

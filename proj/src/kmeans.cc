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

#include "scribe/kmeans.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "scribe/error.h"

namespace scribe {
namespace {

using Vector = std::vector<double>;

Vector Flatten(const FeatureSeq& seq) {
  Vector v;
  v.reserve(seq.points.size() * 4);
  for (const FeaturePoint& p : seq.points) {
    v.insert(v.end(), {p.x, p.y, p.dx, p.dy});
  }
  return v;
}

double SquaredDistance(const Vector& a, const Vector& b) {
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    total += d * d;
  }
  return total;
}

// Uniform in [0, 1) from the top 53 bits; independent of the standard
// library's distribution implementation.
double Uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::size_t SampleIndex(std::span<const double> mass, std::mt19937_64& rng) {
  double total = 0.0;
  for (double m : mass) total += m;
  const double target = Uniform(rng) * total;
  double running = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < mass.size(); ++i) {
    if (mass[i] <= 0.0) continue;
    running += mass[i];
    last_positive = i;
    if (target < running) return i;
  }
  return last_positive;
}

std::size_t Nearest(const Vector& x, const std::vector<Vector>& centroids,
                    double* distance) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    const double d = SquaredDistance(x, centroids[c]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  if (distance) *distance = best_d;
  return best;
}

}  // namespace

void RenormalizeDirections(std::vector<FeaturePoint>& points) {
  std::optional<std::size_t> first_defined;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double norm = std::hypot(points[i].dx, points[i].dy);
    if (norm > 1e-12) {
      points[i].dx /= norm;
      points[i].dy /= norm;
      if (!first_defined) first_defined = i;
    } else if (first_defined) {
      points[i].dx = points[i - 1].dx;
      points[i].dy = points[i - 1].dy;
    }
  }
  const std::size_t source = first_defined.value_or(points.size());
  for (std::size_t i = 0; i < std::min(source, points.size()); ++i) {
    if (source < points.size()) {
      points[i].dx = points[source].dx;
      points[i].dy = points[source].dy;
    } else {
      points[i].dx = 1.0;
      points[i].dy = 0.0;
    }
  }
}

KMeansResult WeightedKMeansDetailed(std::span<const WeightedInstance> instances,
                                    std::size_t k, std::uint64_t seed,
                                    std::size_t max_iterations) {
  if (instances.empty()) {
    throw Error(ErrorCode::kEmptyClass, "no instances to cluster");
  }
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "k must be >= 1");
  const CharLabel label = instances.front().label;
  const std::size_t length = instances.front().features.size();
  if (length == 0) throw Error(ErrorCode::kEmptyInput, "empty instance");

  std::vector<Vector> points;
  std::vector<double> weights;
  std::vector<double> durations;
  points.reserve(instances.size());
  for (const WeightedInstance& inst : instances) {
    if (inst.label != label) {
      throw Error(ErrorCode::kInvalidArgument, "instances mix labels");
    }
    if (inst.features.size() != length) {
      throw Error(ErrorCode::kInvalidArgument,
                  "instances must be resampled to one length");
    }
    if (!(inst.weight > 0.0) || !std::isfinite(inst.weight)) {
      throw Error(ErrorCode::kInvalidArgument, "weights must be > 0");
    }
    points.push_back(Flatten(inst.features));
    weights.push_back(inst.weight);
    durations.push_back(inst.features.duration);
  }
  const std::size_t n = points.size();

  std::vector<Vector> distinct;
  for (const Vector& p : points) {
    if (std::find(distinct.begin(), distinct.end(), p) == distinct.end()) {
      distinct.push_back(p);
    }
  }
  k = std::min(k, distinct.size());

  // Weighted k-means++ seeding.
  std::mt19937_64 rng(seed);
  std::vector<Vector> centroids;
  centroids.push_back(points[SampleIndex(weights, rng)]);
  std::vector<double> mass(n);
  while (centroids.size() < k) {
    for (std::size_t i = 0; i < n; ++i) {
      double d = 0.0;
      Nearest(points[i], centroids, &d);
      mass[i] = weights[i] * d;
    }
    centroids.push_back(points[SampleIndex(mass, rng)]);
  }

  KMeansResult result;
  std::vector<std::size_t> assignment(n, 0);
  std::vector<double> centroid_duration(k, 0.0);
  for (std::size_t iter = 0; iter < max_iterations; ++iter) {
    std::vector<std::size_t> next(n);
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double d = 0.0;
      next[i] = Nearest(points[i], centroids, &d);
      objective += weights[i] * d;
    }
    result.objective_history.push_back(objective);
    const bool stable = iter > 0 && next == assignment;
    assignment = std::move(next);
    result.iterations = iter + 1;

    std::vector<Vector> sums(k, Vector(length * 4, 0.0));
    std::vector<double> total_weight(k, 0.0);
    std::vector<double> duration_sum(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t c = assignment[i];
      for (std::size_t d = 0; d < points[i].size(); ++d) {
        sums[c][d] += weights[i] * points[i][d];
      }
      total_weight[c] += weights[i];
      duration_sum[c] += weights[i] * durations[i];
    }
    for (std::size_t c = 0; c < k; ++c) {
      // An emptied cluster keeps its previous centroid.
      if (total_weight[c] <= 0.0) continue;
      for (double& v : sums[c]) v /= total_weight[c];
      centroids[c] = std::move(sums[c]);
      centroid_duration[c] = duration_sum[c] / total_weight[c];
    }
    if (stable) break;
  }

  result.assignment = std::move(assignment);
  for (std::size_t c = 0; c < k; ++c) {
    FeatureSeq seq;
    seq.duration = centroid_duration[c];
    seq.points.reserve(length);
    for (std::size_t p = 0; p < length; ++p) {
      const double* v = &centroids[c][p * 4];
      seq.points.push_back({v[0], v[1], v[2], v[3]});
    }
    RenormalizeDirections(seq.points);
    result.centroids.push_back(std::move(seq));
  }
  return result;
}

std::vector<FeatureSeq> WeightedKMeans(
    std::span<const WeightedInstance> instances, std::size_t k,
    std::uint64_t seed) {
  return WeightedKMeansDetailed(instances, k, seed).centroids;
}

}  // namespace scribe

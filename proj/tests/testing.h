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

// Generators and independent oracles shared by the test binaries.

#ifndef SCRIBE_TESTS_TESTING_H_
#define SCRIBE_TESTS_TESTING_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <utility>
#include <vector>

#include "scribe/alphabet.h"
#include "scribe/channel_metrics.h"
#include "scribe/decoder.h"
#include "scribe/prototype.h"
#include "scribe/trajectory.h"

namespace scribe::testing {

inline double Unit(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline FeaturePoint RandomPoint(std::mt19937_64& rng) {
  const double angle = 2.0 * std::acos(-1.0) * Unit(rng);
  return {Unit(rng), Unit(rng), std::cos(angle), std::sin(angle)};
}

inline std::vector<FeaturePoint> RandomPoints(std::mt19937_64& rng,
                                              std::size_t n) {
  std::vector<FeaturePoint> out(n);
  for (auto& p : out) p = RandomPoint(rng);
  return out;
}

// Points on a small integer grid, so equal costs and tied paths are common.
inline std::vector<FeaturePoint> GridPoints(std::mt19937_64& rng,
                                            std::size_t n) {
  std::vector<FeaturePoint> out(n);
  for (auto& p : out) {
    p = {static_cast<double>(rng() % 3), static_cast<double>(rng() % 3),
         (rng() % 2) ? 1.0 : 0.0, 0.0};
    p.dy = p.dx == 1.0 ? 0.0 : 1.0;
  }
  return out;
}

// A smooth random stroke with directions, as a writer would produce.
inline FeatureSeq RandomStroke(std::mt19937_64& rng, std::size_t n) {
  std::vector<FeaturePoint> pts;
  double x = Unit(rng), y = Unit(rng);
  double heading = 2.0 * std::acos(-1.0) * Unit(rng);
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back({x, y, 1.0, 0.0});
    heading += 0.6 * (Unit(rng) - 0.5);
    const double step = 0.02 + 0.05 * Unit(rng);
    x += step * std::cos(heading);
    y += step * std::sin(heading);
  }
  FeatureSeq seq{*WithDirections(pts), 0.5 + Unit(rng)};
  return seq;
}

inline RawTrace RandomRawTrace(std::mt19937_64& rng, std::size_t n) {
  RawTrace raw;
  double t = 1000.0 * Unit(rng);
  for (std::size_t i = 0; i < n; ++i) {
    raw.samples.push_back({500.0 * Unit(rng), 300.0 * Unit(rng), t});
    t += 1.0 + 30.0 * Unit(rng);
  }
  return raw;
}

// The textbook local cost written out independently of the library.
inline double OracleLocalCost(const FeaturePoint& a, const FeaturePoint& b,
                              double beta) {
  const double ex = a.x - b.x, ey = a.y - b.y;
  const double ex2 = a.dx - b.dx, ey2 = a.dy - b.dy;
  return std::sqrt(ex * ex + ey * ey + beta * beta * (ex2 * ex2 + ey2 * ey2));
}

struct OraclePath {
  double cost = std::numeric_limits<double>::infinity();
  std::size_t length = 0;
};

// Every monotone path from (0,0) to (n-1,m-1) with unit steps, summed in path
// order. Among equal-cost paths the shortest wins.
inline void EnumeratePaths(const std::vector<FeaturePoint>& a,
                           const std::vector<FeaturePoint>& b, double beta,
                           std::size_t i, std::size_t j, double cost,
                           std::size_t length, OraclePath& best) {
  cost += OracleLocalCost(a[i], b[j], beta);
  ++length;
  if (i + 1 == a.size() && j + 1 == b.size()) {
    if (cost < best.cost || (cost == best.cost && length < best.length)) {
      best = {cost, length};
    }
    return;
  }
  if (i + 1 < a.size() && j + 1 < b.size()) {
    EnumeratePaths(a, b, beta, i + 1, j + 1, cost, length, best);
  }
  if (i + 1 < a.size()) EnumeratePaths(a, b, beta, i + 1, j, cost, length, best);
  if (j + 1 < b.size()) EnumeratePaths(a, b, beta, i, j + 1, cost, length, best);
}

inline double BruteForceDtw(const std::vector<FeaturePoint>& a,
                            const std::vector<FeaturePoint>& b, double beta,
                            bool normalize) {
  OraclePath best;
  EnumeratePaths(a, b, beta, 0, 0, 0.0, 0, best);
  return normalize ? best.cost / static_cast<double>(best.length) : best.cost;
}

inline double OracleEntropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log(v) / std::log(2.0);
  }
  return h;
}

inline Posterior PointMass(const Alphabet& alphabet, CharLabel label) {
  Posterior p{alphabet.labels(),
              std::vector<double>(alphabet.size(), 0.0), 0.0};
  p.probabilities[alphabet.IndexOrThrow(label)] = 1.0;
  return p;
}

inline Posterior Uniform(const Alphabet& alphabet) {
  return {alphabet.labels(),
          std::vector<double>(alphabet.size(),
                              1.0 / static_cast<double>(alphabet.size())),
          0.0};
}

inline Posterior RandomPosterior(std::mt19937_64& rng,
                                 const Alphabet& alphabet) {
  std::vector<double> p(alphabet.size());
  double sum = 0.0;
  for (double& v : p) {
    v = -std::log(1.0 - Unit(rng)) * (Unit(rng) < 0.3 ? 10.0 : 1.0);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return {alphabet.labels(), std::move(p), 0.0};
}

// One record per label with the given posterior builder and duration.
template <typename Fn>
std::vector<CharacterRecord> SessionOf(const Alphabet& alphabet, Fn&& posterior,
                                       double duration) {
  std::vector<CharacterRecord> records;
  for (CharLabel label : alphabet.labels()) {
    records.push_back({label, posterior(label), duration, "adapt", 1, "u"});
  }
  return records;
}

// A prototype set made of one random stroke per label.
inline PrototypeSet RandomPrototypeSet(std::mt19937_64& rng,
                                       const Alphabet& alphabet,
                                       std::size_t per_label,
                                       std::size_t min_states,
                                       std::size_t max_states) {
  PrototypeSet set;
  set.user = "random";
  for (CharLabel label : alphabet.labels()) {
    for (std::size_t k = 0; k < per_label; ++k) {
      const std::size_t n = min_states + rng() % (max_states - min_states + 1);
      set.prototypes.push_back(Prototype::FromSequence(label, RandomStroke(rng, n), 0));
    }
  }
  return set;
}

}  // namespace scribe::testing

#endif  // SCRIBE_TESTS_TESTING_H_

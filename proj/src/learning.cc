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

#include "scribe/learning.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "scribe/error.h"
#include "scribe/kmeans.h"

namespace scribe {
namespace {

std::map<CharLabel, std::vector<const FeatureSeq*>> GroupByLabel(
    std::span<const LabeledExample> examples) {
  std::map<CharLabel, std::vector<const FeatureSeq*>> out;
  for (const LabeledExample& e : examples) out[e.label].push_back(&e.features);
  return out;
}

// Nearest prototype index among competitors followed by candidate; ties go to
// the lower index.
std::size_t NearestIndex(std::span<const double> competitor_distances,
                         double candidate_distance) {
  std::size_t best = competitor_distances.size();
  double best_d = candidate_distance;
  for (std::size_t i = 0; i < competitor_distances.size(); ++i) {
    if (competitor_distances[i] <= best_d &&
        (competitor_distances[i] < best_d || i < best)) {
      best_d = competitor_distances[i];
      best = i;
    }
  }
  return best;
}

DtwConfig Unbanded(DtwConfig cfg) {
  cfg.band.reset();
  return cfg;
}

// Clusters one label and turns the centroids into prototypes.
std::vector<Prototype> ClusterLabel(CharLabel label,
                                    const std::vector<WeightedInstance>& pool,
                                    std::size_t k, std::uint64_t seed,
                                    std::uint64_t version) {
  std::vector<Prototype> out;
  for (const FeatureSeq& centroid : WeightedKMeans(pool, k, seed)) {
    out.push_back(Prototype::FromSequence(label, centroid, version));
  }
  return out;
}

// Shortens the freshly clustered prototypes of one label in place.
void ReduceLabel(PrototypeSet& set, CharLabel label,
                 std::span<const FeatureSeq> corpus,
                 const StateReductionOptions& options) {
  if (corpus.empty()) return;
  for (std::size_t index : set.IndicesFor(label)) {
    std::vector<Prototype> competitors;
    for (std::size_t j = 0; j < set.prototypes.size(); ++j) {
      if (j != index) competitors.push_back(set.prototypes[j]);
    }
    set.prototypes[index] =
        ReduceStates(set.prototypes[index], corpus, options, competitors)
            .prototype;
  }
}

void ReplaceLabel(PrototypeSet& set, CharLabel label,
                  std::vector<Prototype> replacement) {
  std::erase_if(set.prototypes,
                [&](const Prototype& p) { return p.label == label; });
  for (Prototype& p : replacement) set.prototypes.push_back(std::move(p));
  set.SortByLabel();
}

}  // namespace

std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t a,
                         std::uint64_t b) {
  // splitmix64 finalizer over a simple combination.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (a + 1) +
                    0xBF58476D1CE4E5B9ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

PrototypeSet TrainTypicalPrototypes(std::span<const LabeledExample> corpus,
                                    const Alphabet& alphabet,
                                    const LearningConfig& cfg) {
  const auto groups = GroupByLabel(corpus);
  PrototypeSet set;
  set.generation = 0;
  for (CharLabel label : alphabet.labels()) {
    auto it = groups.find(label);
    if (it == groups.end()) {
      throw Error(ErrorCode::kEmptyClass, label.ToString());
    }
    std::vector<WeightedInstance> pool;
    for (const FeatureSeq* seq : it->second) {
      pool.push_back({Resample(*seq, cfg.resample_length), 1.0, label});
    }
    for (Prototype& p :
         ClusterLabel(label, pool, cfg.k_typical,
                      DeriveSeed(cfg.seed, label.LetterIndex()), 0)) {
      set.prototypes.push_back(std::move(p));
    }
  }
  if (cfg.reduction) {
    for (CharLabel label : alphabet.labels()) {
      std::vector<FeatureSeq> label_corpus;
      for (const FeatureSeq* seq : groups.at(label)) label_corpus.push_back(*seq);
      ReduceLabel(set, label, label_corpus, *cfg.reduction);
    }
  }
  return set;
}

PrototypeSet InitialAdapt(const PrototypeSet& typical,
                          std::span<const LabeledExample> pool,
                          std::span<const LabeledExample> user_examples,
                          const LearningConfig& cfg) {
  if (typical.generation != 0) {
    throw Error(ErrorCode::kInvalidArgument,
                "initial adaptation starts from the typical set");
  }
  const Alphabet alphabet = typical.alphabet();
  for (const LabeledExample& e : user_examples) alphabet.IndexOrThrow(e.label);

  PrototypeSet out = typical;
  out.generation = 1;
  const auto pool_groups = GroupByLabel(pool);
  const auto user_groups = GroupByLabel(user_examples);
  for (const auto& [label, user_seqs] : user_groups) {
    std::vector<WeightedInstance> instances;
    std::vector<FeatureSeq> corpus;
    if (auto it = pool_groups.find(label); it != pool_groups.end()) {
      for (const FeatureSeq* seq : it->second) {
        instances.push_back({Resample(*seq, cfg.resample_length), 1.0, label});
        corpus.push_back(*seq);
      }
    } else {
      for (std::size_t i : typical.IndicesFor(label)) {
        instances.push_back(
            {Resample(typical.prototypes[i].AsSequence(), cfg.resample_length),
             1.0, label});
      }
    }
    for (const FeatureSeq* seq : user_seqs) {
      instances.push_back(
          {Resample(*seq, cfg.resample_length), cfg.user_weight, label});
      corpus.push_back(*seq);
    }
    ReplaceLabel(out, label,
                 ClusterLabel(label, instances, cfg.k_adapted,
                              DeriveSeed(cfg.seed, label.LetterIndex(), 1),
                              out.generation));
    if (cfg.reduction) ReduceLabel(out, label, corpus, *cfg.reduction);
  }
  return out;
}

PrototypeSet IncrementalAdapt(PrototypeSet set,
                              std::span<const LabeledExample> new_examples,
                              const LearningConfig& cfg) {
  if (set.generation < 1) {
    throw Error(ErrorCode::kInvalidArgument,
                "incremental adaptation needs an adapted set");
  }
  if (cfg.cadence < 1) {
    throw Error(ErrorCode::kInvalidArgument, "cadence must be >= 1");
  }
  const Alphabet alphabet = set.alphabet();
  for (const LabeledExample& e : new_examples) alphabet.IndexOrThrow(e.label);

  for (const LabeledExample& e : new_examples) {
    auto& buffer = set.pending_examples[e.label];
    buffer.push_back(e.features);
    if (buffer.size() < cfg.cadence) continue;

    std::vector<WeightedInstance> instances;
    for (std::size_t i : set.IndicesFor(e.label)) {
      instances.push_back(
          {Resample(set.prototypes[i].AsSequence(), cfg.resample_length),
           cfg.prototype_weight, e.label});
    }
    for (const FeatureSeq& seq : buffer) {
      instances.push_back({Resample(seq, cfg.resample_length), 1.0, e.label});
    }
    const std::uint64_t next_generation = set.generation + 1;
    ReplaceLabel(set, e.label,
                 ClusterLabel(e.label, instances, cfg.k_adapted,
                              DeriveSeed(cfg.seed, e.label.LetterIndex(),
                                         next_generation + 1),
                              next_generation));
    if (cfg.reduction) ReduceLabel(set, e.label, buffer, *cfg.reduction);
    set.pending_examples.erase(e.label);
    set.generation = next_generation;
  }
  return set;
}

std::vector<double> ExpectedVisits(const Prototype& prototype,
                                   std::span<const FeatureSeq> corpus,
                                   const DtwConfig& dtw) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "no corpus");
  const DtwConfig cfg = Unbanded(dtw);
  std::vector<double> visits(prototype.states.size(), 0.0);
  for (const FeatureSeq& seq : corpus) {
    const DtwAlignment alignment =
        DtwAlign(seq.points, prototype.states, cfg);
    const auto& path = alignment.path;
    std::size_t begin = 0;
    while (begin < path.size()) {
      std::size_t end = begin;
      while (end < path.size() && path[end].first == path[begin].first) ++end;
      const double share = 1.0 / static_cast<double>(end - begin);
      for (std::size_t c = begin; c < end; ++c) visits[path[c].second] += share;
      begin = end;
    }
  }
  for (double& v : visits) v /= static_cast<double>(corpus.size());
  return visits;
}

StateReduction ReduceStates(const Prototype& prototype,
                            std::span<const FeatureSeq> corpus,
                            const StateReductionOptions& options,
                            std::span<const Prototype> competitors) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "no corpus");
  if (!(options.visit_threshold >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "visit threshold must be >= 0");
  }
  prototype.Validate();
  const std::size_t floor = std::max<std::size_t>(options.min_states, 2);

  StateReduction result{prototype, prototype.states.size(), 1.0, false};
  Prototype original = prototype;
  original.visit_counts = ExpectedVisits(prototype, corpus, options.dtw);

  // Drop rarely visited states, keeping the most visited ones at the floor.
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < original.states.size(); ++j) {
    if (original.visit_counts[j] >= options.visit_threshold) keep.push_back(j);
  }
  if (keep.size() < floor) {
    std::vector<std::size_t> order(original.states.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return original.visit_counts[a] > original.visit_counts[b];
    });
    order.resize(std::min(floor, order.size()));
    std::sort(order.begin(), order.end());
    keep = std::move(order);
  }

  // Merge consecutive near-duplicates with visit-weighted means.
  Prototype reduced{original.label, {}, {}, original.version};
  std::size_t remaining = keep.size();
  for (std::size_t j : keep) {
    const FeaturePoint& s = original.states[j];
    const double v = original.visit_counts[j];
    if (!reduced.states.empty() && remaining > 0 &&
        reduced.states.size() + remaining > floor &&
        LocalCost(reduced.states.back(), s, options.dtw.direction_weight) <
            options.merge_epsilon) {
      FeaturePoint& m = reduced.states.back();
      double& mv = reduced.visit_counts.back();
      const double total = mv + v;
      const double a = total > 0.0 ? mv / total : 0.5;
      const double b = 1.0 - a;
      m = {a * m.x + b * s.x, a * m.y + b * s.y, a * m.dx + b * s.dx,
           a * m.dy + b * s.dy};
      const double norm = std::hypot(m.dx, m.dy);
      if (norm > 1e-12) {
        m.dx /= norm;
        m.dy /= norm;
      } else {
        m.dx = s.dx;
        m.dy = s.dy;
      }
      mv = total;
    } else {
      reduced.states.push_back(s);
      reduced.visit_counts.push_back(v);
    }
    --remaining;
  }

  if (reduced.states.size() == original.states.size()) {
    result.prototype = std::move(original);
    return result;
  }

  // Nearest-prototype agreement before and after.
  std::size_t agree = 0;
  std::vector<double> competitor_distances(competitors.size());
  for (const FeatureSeq& seq : corpus) {
    for (std::size_t c = 0; c < competitors.size(); ++c) {
      competitor_distances[c] =
          DtwDistance(seq.points, competitors[c].states, Unbanded(options.dtw));
    }
    const double before =
        DtwDistance(seq.points, original.states, Unbanded(options.dtw));
    const double after =
        DtwDistance(seq.points, reduced.states, Unbanded(options.dtw));
    auto label_of = [&](std::size_t i) {
      return i < competitors.size() ? competitors[i].label : prototype.label;
    };
    if (label_of(NearestIndex(competitor_distances, before)) ==
        label_of(NearestIndex(competitor_distances, after))) {
      ++agree;
    }
  }
  result.agreement =
      static_cast<double>(agree) / static_cast<double>(corpus.size());
  if (result.agreement < options.min_agreement) {
    result.prototype = std::move(original);
    result.rolled_back = true;
    return result;
  }
  result.prototype = std::move(reduced);
  return result;
}

}  // namespace scribe

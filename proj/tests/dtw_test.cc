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

#include "scribe/dtw.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <memory>
#include <random>

#include "expect_error.h"
#include "testing.h"

namespace scribe {
namespace {

using testing::ExpectCode;

std::vector<FeaturePoint> Scalars(std::initializer_list<double> xs) {
  std::vector<FeaturePoint> out;
  for (double x : xs) out.push_back({x, 0.0, 1.0, 0.0});
  return out;
}

// Brute force over all monotone paths with lengths up to 6; runs both on
// continuous values and on a small grid where ties are frequent.
TEST(DtwTest, MatchesExhaustiveEnumeration) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 400; ++trial) {
    const bool grid = trial % 2 == 1;
    const std::size_t n = 1 + rng() % 6, m = 1 + rng() % 6;
    const auto a = grid ? testing::GridPoints(rng, n) : testing::RandomPoints(rng, n);
    const auto b = grid ? testing::GridPoints(rng, m) : testing::RandomPoints(rng, m);
    for (double beta : {0.0, 1.0, 2.5}) {
      for (bool normalize : {false, true}) {
        DtwConfig cfg;
        cfg.direction_weight = beta;
        cfg.normalize_by_path = normalize;
        EXPECT_EQ(DtwDistance(a, b, cfg), testing::BruteForceDtw(a, b, beta, normalize))
            << "n=" << n << " m=" << m << " beta=" << beta;
      }
    }
  }
}

TEST(DtwTest, ScalarExample) {
  DtwConfig cfg;
  cfg.direction_weight = 0.0;
  cfg.normalize_by_path = false;
  EXPECT_EQ(DtwDistance(Scalars({0, 1}), Scalars({0, 2}), cfg), 1.0);
  cfg.normalize_by_path = true;
  EXPECT_EQ(DtwDistance(Scalars({0, 1}), Scalars({0, 2}), cfg), 0.5);
}

TEST(DtwTest, SinglePointIsLocalCost) {
  const FeaturePoint a{0.1, 0.2, 1.0, 0.0}, b{0.4, 0.6, 0.0, 1.0};
  DtwConfig cfg;
  EXPECT_EQ(DtwDistance(std::vector{a}, std::vector{b}, cfg), LocalCost(a, b, 1.0));
  EXPECT_DOUBLE_EQ(LocalCost(a, b, 1.0), std::sqrt(0.09 + 0.16 + 2.0));
  EXPECT_DOUBLE_EQ(LocalCost(a, b, 0.0), 0.5);
}

TEST(DtwTest, IdentityNonNegativityAndSymmetry) {
  std::mt19937_64 rng(22);
  DtwConfig plain;
  plain.normalize_by_path = false;
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = testing::RandomPoints(rng, 1 + rng() % 30);
    const auto b = testing::RandomPoints(rng, 1 + rng() % 30);
    EXPECT_EQ(DtwDistance(a, a, DtwConfig{}), 0.0);
    EXPECT_GE(DtwDistance(a, b, DtwConfig{}), 0.0);
    EXPECT_EQ(DtwDistance(a, b, plain), DtwDistance(b, a, plain));
  }
}

TEST(DtwTest, BandMatchesUnbandedWhenWide) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = testing::RandomPoints(rng, 1 + rng() % 12);
    const auto b = testing::RandomPoints(rng, 1 + rng() % 12);
    DtwConfig banded;
    banded.band = 12;
    EXPECT_EQ(DtwDistance(a, b, banded), DtwDistance(a, b, DtwConfig{}));
    DtwConfig narrow;
    narrow.band = 1;
    const std::size_t gap = a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
    if (gap > 1) {
      ExpectCode(ErrorCode::kBandInfeasible, [&] { DtwDistance(a, b, narrow); });
    }
  }
}

TEST(DtwTest, NarrowBandNeverBeatsUnbandedTotal) {
  std::mt19937_64 rng(24);
  DtwConfig plain;
  plain.normalize_by_path = false;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 10;
    const auto a = testing::RandomPoints(rng, n);
    const auto b = testing::RandomPoints(rng, n);
    DtwConfig banded = plain;
    banded.band = 1;
    EXPECT_GE(DtwDistance(a, b, banded), DtwDistance(a, b, plain));
  }
}

TEST(DtwTest, Errors) {
  std::mt19937_64 rng(1);
  const auto a = testing::RandomPoints(rng, 3);
  ExpectCode(ErrorCode::kEmptyInput, [&] { DtwDistance({}, a, DtwConfig{}); });
  ExpectCode(ErrorCode::kEmptyInput, [&] { DtwDistance(a, {}, DtwConfig{}); });
  DtwConfig bad;
  bad.direction_weight = -1.0;
  ExpectCode(ErrorCode::kInvalidArgument, [&] { DtwDistance(a, a, bad); });
  DtwConfig zero_band;
  zero_band.band = 0;
  ExpectCode(ErrorCode::kInvalidArgument, [&] { DtwDistance(a, a, zero_band); });
}

TEST(DtwTest, AlignmentPathIsMonotoneAndConsistent) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = testing::RandomPoints(rng, 1 + rng() % 15);
    const auto b = testing::RandomPoints(rng, 1 + rng() % 15);
    DtwConfig cfg;
    cfg.normalize_by_path = false;
    const DtwAlignment al = DtwAlign(a, b, cfg);
    ASSERT_FALSE(al.path.empty());
    EXPECT_EQ(al.path.front(), std::make_pair(std::size_t{0}, std::size_t{0}));
    EXPECT_EQ(al.path.back(), std::make_pair(a.size() - 1, b.size() - 1));
    double cost = 0.0;
    for (std::size_t k = 0; k < al.path.size(); ++k) {
      const auto [i, j] = al.path[k];
      cost += LocalCost(a[i], b[j], cfg.direction_weight);
      if (k > 0) {
        const auto [pi, pj] = al.path[k - 1];
        EXPECT_TRUE((i == pi + 1 || i == pi) && (j == pj + 1 || j == pj) &&
                    (i != pi || j != pj));
      }
    }
    EXPECT_EQ(cost, al.distance);
    EXPECT_EQ(al.path.size(), al.end.length);
    EXPECT_EQ(al.distance, DtwDistance(a, b, cfg));
  }
}

std::shared_ptr<const PrefixState::Templates> RandomTemplates(std::mt19937_64& rng,
                                                              std::size_t count) {
  auto templates = std::make_shared<PrefixState::Templates>();
  for (std::size_t k = 0; k < count; ++k) {
    templates->push_back(testing::RandomPoints(rng, 2 + rng() % 20));
  }
  return templates;
}

TEST(PrefixStateTest, InitHasTemplateColumnsAndNoDistances) {
  std::mt19937_64 rng(26);
  const auto templates = RandomTemplates(rng, 5);
  const PrefixState a(templates, DtwConfig{});
  const PrefixState b(templates, DtwConfig{});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.consumed(), 0u);
  ASSERT_EQ(a.template_count(), 5u);
  for (std::size_t k = 0; k < 5; ++k) {
    EXPECT_EQ(a.column(k).size(), (*templates)[k].size());
  }
  ExpectCode(ErrorCode::kEmptyInput, [&] { a.Distances(); });
}

TEST(PrefixStateTest, EveryPrefixMatchesBatchExactly) {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 60; ++trial) {
    const auto templates = RandomTemplates(rng, 1 + rng() % 6);
    const auto w = testing::RandomPoints(rng, 1 + rng() % 25);
    for (bool normalize : {true, false}) {
      DtwConfig cfg;
      cfg.normalize_by_path = normalize;
      PrefixState state(templates, cfg);
      for (std::size_t t = 0; t < w.size(); ++t) {
        state = PrefixUpdate(std::move(state), w[t]);
        const auto d = state.Distances();
        const std::span prefix(w.data(), t + 1);
        for (std::size_t k = 0; k < templates->size(); ++k) {
          EXPECT_EQ(d[k], DtwDistance(prefix, (*templates)[k], cfg));
        }
      }
    }
  }
}

TEST(PrefixStateTest, OnePointIsCostAlongFirstColumn) {
  const auto templates = std::make_shared<PrefixState::Templates>(
      PrefixState::Templates{Scalars({0.5, 0.0, 1.0})});
  DtwConfig cfg;
  cfg.normalize_by_path = false;
  PrefixState state(templates, cfg);
  state.Update({0.0, 0.0, 1.0, 0.0});
  // A single query point must pair with every template state in turn.
  EXPECT_DOUBLE_EQ(state.Distances()[0], 0.5 + 0.0 + 1.0);
}

TEST(PrefixStateTest, BandedPrefixIsInfiniteUntilFeasible) {
  const auto templates = std::make_shared<PrefixState::Templates>(
      PrefixState::Templates{Scalars({0, 1, 2, 3, 4, 5})});
  DtwConfig cfg;
  cfg.band = 2;
  PrefixState state(templates, cfg);
  const auto w = Scalars({0, 1, 2, 3, 4, 5});
  for (std::size_t t = 0; t < w.size(); ++t) {
    state.Update(w[t]);
    const double d = state.Distances()[0];
    if (t + 1 < 4) {
      EXPECT_TRUE(std::isinf(d)) << t;
    } else {
      EXPECT_EQ(d, DtwDistance(std::span(w.data(), t + 1), (*templates)[0], cfg));
    }
  }
}

TEST(PrefixStateTest, Deterministic) {
  std::mt19937_64 rng(28);
  const auto templates = RandomTemplates(rng, 4);
  const auto w = testing::RandomPoints(rng, 12);
  PrefixState a(templates, DtwConfig{}), b(templates, DtwConfig{});
  for (const auto& p : w) {
    a.Update(p);
    b.Update(p);
  }
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.Distances(), b.Distances());
}

}  // namespace
}  // namespace scribe

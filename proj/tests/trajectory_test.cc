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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "scribe/error.h"
#include "expect_error.h"
#include "testing.h"

namespace scribe {
namespace {

using testing::ExpectCode;

RawTrace Trace(std::initializer_list<RawSample> samples) { return RawTrace{samples}; }

TEST(NormalizeTest, SquareBoxSpansUnitSquare) {
  const Trajectory t = Normalize(Trace({{10, 20, 5}, {110, 120, 15}, {60, 20, 40}}));
  ASSERT_EQ(t.samples.size(), 3u);
  EXPECT_DOUBLE_EQ(t.samples[0].x, 0.0);
  EXPECT_DOUBLE_EQ(t.samples[0].y, 0.0);
  EXPECT_DOUBLE_EQ(t.samples[1].x, 1.0);
  EXPECT_DOUBLE_EQ(t.samples[1].y, 1.0);
  EXPECT_DOUBLE_EQ(t.samples[2].x, 0.5);
  EXPECT_DOUBLE_EQ(t.samples[0].t, 0.0);
  EXPECT_DOUBLE_EQ(t.samples[2].t, 0.035);
  EXPECT_DOUBLE_EQ(t.duration(), 0.035);
}

TEST(NormalizeTest, WideBoxKeepsAspect) {
  const Trajectory t = Normalize(Trace({{0, 0, 0}, {200, 100, 10}, {100, 50, 20}}));
  double max_x = 0, max_y = 0;
  for (const auto& s : t.samples) {
    max_x = std::max(max_x, s.x);
    max_y = std::max(max_y, s.y);
  }
  EXPECT_DOUBLE_EQ(max_x, 1.0);
  EXPECT_DOUBLE_EQ(max_y, 0.5);
  EXPECT_DOUBLE_EQ(t.samples[2].x, 0.5);
  EXPECT_DOUBLE_EQ(t.samples[2].y, 0.25);
}

TEST(NormalizeTest, DegenerateInputs) {
  ExpectCode(ErrorCode::kDegenerateTrace, [] { Normalize(Trace({{5, 5, 0}})); });
  ExpectCode(ErrorCode::kDegenerateTrace, [] { Normalize(Trace({})); });
  ExpectCode(ErrorCode::kDegenerateTrace,
             [] { Normalize(Trace({{5, 5, 0}, {5, 5, 10}, {5, 5, 20}})); });
}

TEST(NormalizeTest, RejectsNonIncreasingTime) {
  ExpectCode(ErrorCode::kInvalidArgument,
             [] { Normalize(Trace({{0, 0, 10}, {1, 1, 10}})); });
  ExpectCode(ErrorCode::kInvalidArgument,
             [] { Normalize(Trace({{0, 0, 10}, {1, 1, 5}})); });
  ExpectCode(ErrorCode::kInvalidArgument,
             [] { Normalize(Trace({{0, 0, 0}, {NAN, 1, 5}})); });
}

TEST(NormalizeTest, IdempotentOnRandomTraces) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Trajectory once = Normalize(testing::RandomRawTrace(rng, 2 + rng() % 40));
    const Trajectory twice = Normalize(ToRawTrace(once));
    ASSERT_EQ(once.samples.size(), twice.samples.size());
    for (std::size_t i = 0; i < once.samples.size(); ++i) {
      EXPECT_NEAR(once.samples[i].x, twice.samples[i].x, 1e-12);
      EXPECT_NEAR(once.samples[i].y, twice.samples[i].y, 1e-12);
      EXPECT_NEAR(once.samples[i].t, twice.samples[i].t, 1e-12);
    }
  }
}

TEST(NormalizeTest, InvariantsOnRandomTraces) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const Trajectory t = Normalize(testing::RandomRawTrace(rng, 2 + rng() % 40));
    EXPECT_EQ(t.samples.front().t, 0.0);
    double max_extent = 0.0;
    for (std::size_t i = 0; i < t.samples.size(); ++i) {
      const auto& s = t.samples[i];
      EXPECT_GE(s.x, 0.0);
      EXPECT_LE(s.x, 1.0);
      EXPECT_GE(s.y, 0.0);
      EXPECT_LE(s.y, 1.0);
      max_extent = std::max({max_extent, s.x, s.y});
      if (i > 0) {
        EXPECT_GT(s.t, t.samples[i - 1].t);
      }
    }
    EXPECT_DOUBLE_EQ(max_extent, 1.0);
  }
}

Trajectory Path(std::initializer_list<std::pair<double, double>> xy) {
  Trajectory t;
  double time = 0.0;
  for (auto [x, y] : xy) {
    t.samples.push_back({x, y, time});
    time += 0.01;
  }
  return t;
}

TEST(FeaturizeTest, HorizontalAndVertical) {
  const FeatureSeq h = Featurize(Path({{0, 0}, {1, 0}}));
  EXPECT_EQ(h.points[1].dx, 1.0);
  EXPECT_EQ(h.points[1].dy, 0.0);
  EXPECT_EQ(h.points[0].dx, 1.0);
  const FeatureSeq v = Featurize(Path({{0, 0}, {0, 1}}));
  EXPECT_EQ(v.points[1].dx, 0.0);
  EXPECT_EQ(v.points[1].dy, 1.0);
  EXPECT_EQ(v.points[0].dy, 1.0);
}

TEST(FeaturizeTest, RepeatedPointCarriesDirection) {
  const FeatureSeq f = Featurize(Path({{0, 0}, {1, 0}, {1, 0}}));
  EXPECT_EQ(f.points[2].dx, 1.0);
  EXPECT_EQ(f.points[2].dy, 0.0);
  EXPECT_DOUBLE_EQ(f.duration, 0.02);
}

TEST(FeaturizeTest, LeadingRepeatsTakeFirstDefinedDirection) {
  const FeatureSeq f = Featurize(Path({{0, 0}, {0, 0}, {0, 0}, {0, 1}, {1, 1}}));
  for (int i = 0; i < 4; ++i) {
    EXPECT_EQ(f.points[i].dx, 0.0) << i;
    EXPECT_EQ(f.points[i].dy, 1.0) << i;
  }
  EXPECT_EQ(f.points[4].dx, 1.0);
}

TEST(FeaturizeTest, DiagonalIsUnitNorm) {
  const FeatureSeq f = Featurize(Path({{0, 0}, {0.5, 0.5}}));
  EXPECT_NEAR(f.points[1].dx, std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(f.points[1].dy, std::sqrt(0.5), 1e-15);
}

TEST(FeaturizeTest, LengthAndUnitDirectionsOnRandomTraces) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    RawTrace raw = testing::RandomRawTrace(rng, 2 + rng() % 40);
    // Repeat some positions to exercise the carry rule.
    for (std::size_t i = 1; i < raw.samples.size(); ++i) {
      if (rng() % 4 == 0) {
        raw.samples[i].x = raw.samples[i - 1].x;
        raw.samples[i].y = raw.samples[i - 1].y;
      }
    }
    const FeatureSeq f = Encode(raw);
    ASSERT_EQ(f.size(), raw.samples.size());
    for (const auto& p : f.points) {
      EXPECT_NEAR(p.dx * p.dx + p.dy * p.dy, 1.0, 1e-9);
    }
  }
}

FeatureSeq Line(std::size_t n, double x0, double y0, double x1, double y1) {
  std::vector<FeaturePoint> pts;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(n - 1);
    pts.push_back({x0 + u * (x1 - x0), y0 + u * (y1 - y0)});
  }
  return {*WithDirections(pts), 1.25};
}

TEST(ResampleTest, StraightLineIsEquallySpacedAndCollinear) {
  // Uneven input spacing along y = 0.5 x.
  std::vector<FeaturePoint> pts = {{0, 0}, {0.1, 0.05}, {0.15, 0.075}, {0.8, 0.4}, {1, 0.5}};
  const FeatureSeq in{*WithDirections(pts), 2.0};
  for (std::size_t L : {2u, 3u, 7u, 32u, 100u}) {
    const FeatureSeq out = Resample(in, L);
    ASSERT_EQ(out.size(), L);
    EXPECT_EQ(out.duration, 2.0);
    const double step = std::hypot(1.0, 0.5) / static_cast<double>(L - 1);
    for (std::size_t i = 0; i < L; ++i) {
      EXPECT_NEAR(out.points[i].y, 0.5 * out.points[i].x, 1e-12);
      if (i > 0) {
        EXPECT_NEAR(std::hypot(out.points[i].x - out.points[i - 1].x,
                               out.points[i].y - out.points[i - 1].y),
                    step, 1e-12);
      }
      EXPECT_NEAR(out.points[i].dx, 1.0 / std::hypot(1.0, 0.5), 1e-12);
    }
  }
}

TEST(ResampleTest, TwoPointsAreEndpoints) {
  const FeatureSeq in = Line(9, 0.2, 0.1, 0.7, 0.9);
  const FeatureSeq out = Resample(in, 2);
  EXPECT_EQ(out.points[0].x, in.points.front().x);
  EXPECT_EQ(out.points[0].y, in.points.front().y);
  EXPECT_EQ(out.points[1].x, in.points.back().x);
  EXPECT_EQ(out.points[1].y, in.points.back().y);
}

TEST(ResampleTest, IdempotentOnEquallySpacedInput) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    // A turning walk with a constant step is equally spaced by construction.
    std::vector<FeaturePoint> pts;
    double x = 0.5, y = 0.5, heading = 0.0;
    const std::size_t n = 2 + rng() % 60;
    for (std::size_t i = 0; i < n; ++i) {
      pts.push_back({x, y});
      heading += testing::Unit(rng) - 0.5;
      x += 0.03 * std::cos(heading);
      y += 0.03 * std::sin(heading);
    }
    const FeatureSeq once{*WithDirections(pts), 1.0};
    const FeatureSeq twice = Resample(once, once.size());
    for (std::size_t i = 0; i < once.size(); ++i) {
      EXPECT_NEAR(once.points[i].x, twice.points[i].x, 1e-9);
      EXPECT_NEAR(once.points[i].y, twice.points[i].y, 1e-9);
      EXPECT_NEAR(once.points[i].dx, twice.points[i].dx, 1e-9);
      EXPECT_NEAR(once.points[i].dy, twice.points[i].dy, 1e-9);
    }
  }
}

TEST(ResampleTest, EndpointsExactAndArcLengthKept) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    const FeatureSeq in = testing::RandomStroke(rng, 3 + rng() % 80);
    for (std::size_t L : {32u, 48u, 64u}) {
      const FeatureSeq out = Resample(in, L);
      EXPECT_EQ(out.points.front().x, in.points.front().x);
      EXPECT_EQ(out.points.front().y, in.points.front().y);
      EXPECT_EQ(out.points.back().x, in.points.back().x);
      EXPECT_EQ(out.points.back().y, in.points.back().y);
      EXPECT_NEAR(ArcLength(out), ArcLength(in), 0.01 * ArcLength(in));
      for (const auto& p : out.points) {
        EXPECT_NEAR(p.dx * p.dx + p.dy * p.dy, 1.0, 1e-9);
      }
    }
  }
}

TEST(ResampleTest, RejectsLengthBelowTwo) {
  ExpectCode(ErrorCode::kInvalidArgument, [] { Resample(Line(4, 0, 0, 1, 1), 1); });
}

TEST(AlphabetTest, LowercaseIsUniform) {
  const Alphabet a = Alphabet::Lowercase();
  ASSERT_EQ(a.size(), 26u);
  double sum = 0.0;
  for (double p : a.prior()) sum += p;
  EXPECT_NEAR(sum, 1.0, 1e-15);
  EXPECT_EQ(a.label(0).ToChar(), 'a');
  EXPECT_EQ(a.label(25).ToChar(), 'z');
  ExpectCode(ErrorCode::kUnknownLabel, [] { CharLabel::FromChar('A'); });
  EXPECT_FALSE(CharLabel::Parse("ab").has_value());
}

TEST(AlphabetTest, RejectsBadPrior) {
  const std::vector<CharLabel> labels = {CharLabel::FromChar('a'), CharLabel::FromChar('b')};
  ExpectCode(ErrorCode::kNotADistribution, [&] { Alphabet(labels, {0.7, 0.7}); });
  const Alphabet ok(labels, {0.25, 0.75});
  EXPECT_EQ(ok.prior()[1], 0.75);
}

}  // namespace
}  // namespace scribe

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

#include "scribe/writer.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "scribe/error.h"

namespace scribe {
namespace {

using Path = std::vector<std::pair<double, double>>;

// Polyline builder. Angles are in degrees, counter-clockwise as seen on
// screen (y grows downward).
class Glyph {
 public:
  Glyph& To(double x, double y) {
    path_.emplace_back(x, y);
    return *this;
  }
  Glyph& Arc(double cx, double cy, double rx, double ry, double from_deg,
             double to_deg) {
    const int steps =
        std::max(2, static_cast<int>(std::ceil(std::abs(to_deg - from_deg) / 8.0)));
    for (int s = 0; s <= steps; ++s) {
      const double a = (from_deg + (to_deg - from_deg) * s / steps) *
                       std::numbers::pi / 180.0;
      path_.emplace_back(cx + rx * std::cos(a), cy - ry * std::sin(a));
    }
    return *this;
  }
  Path Build() { return std::move(path_); }

 private:
  Path path_;
};

Path GlyphPath(char c) {
  switch (c) {
    case 'a': return Glyph().Arc(0.45, 0.5, 0.35, 0.4, 30, 390).To(0.82, 1.0).Build();
    case 'b': return Glyph().To(0.2, -0.6).To(0.2, 0.95).Arc(0.45, 0.65, 0.27, 0.32, 210, -150).Build();
    case 'c': return Glyph().Arc(0.5, 0.5, 0.4, 0.45, 45, 315).Build();
    case 'd': return Glyph().Arc(0.45, 0.55, 0.33, 0.4, 30, 390).To(0.78, -0.6).To(0.8, 1.0).Build();
    case 'e': return Glyph().To(0.1, 0.55).To(0.85, 0.55).Arc(0.5, 0.55, 0.37, 0.42, 0, 300).Build();
    case 'f': return Glyph().Arc(0.6, -0.3, 0.2, 0.2, 20, 180).To(0.4, 1.4).Build();
    case 'g': return Glyph().Arc(0.45, 0.45, 0.33, 0.38, 30, 390).To(0.78, 1.4).Arc(0.5, 1.4, 0.28, 0.25, 0, -180).Build();
    case 'h': return Glyph().To(0.2, -0.6).To(0.2, 1.0).To(0.2, 0.6).Arc(0.5, 0.6, 0.3, 0.3, 180, 0).To(0.8, 1.0).Build();
    case 'i': return Glyph().To(0.5, 0.0).To(0.5, 0.95).To(0.55, 1.0).To(0.75, 0.9).Build();
    case 'j': return Glyph().To(0.6, 0.0).To(0.6, 1.3).Arc(0.4, 1.3, 0.2, 0.25, 0, -180).Build();
    case 'k': return Glyph().To(0.2, -0.6).To(0.2, 1.0).To(0.2, 0.65).To(0.75, 0.15).To(0.3, 0.55).To(0.8, 1.0).Build();
    case 'l': return Glyph().To(0.5, -0.6).To(0.5, 1.0).Build();
    case 'm': return Glyph().To(0.05, 1.0).To(0.05, 0.25).Arc(0.25, 0.35, 0.2, 0.2, 180, 0).To(0.45, 1.0).To(0.45, 0.35).Arc(0.65, 0.35, 0.2, 0.2, 180, 0).To(0.85, 1.0).Build();
    case 'n': return Glyph().To(0.15, 1.0).To(0.15, 0.25).Arc(0.45, 0.4, 0.3, 0.3, 180, 0).To(0.75, 1.0).Build();
    case 'o': return Glyph().Arc(0.5, 0.5, 0.4, 0.45, 90, 450).Build();
    case 'p': return Glyph().To(0.2, 0.0).To(0.2, 1.6).To(0.2, 0.4).Arc(0.45, 0.4, 0.25, 0.3, 180, -150).Build();
    case 'q': return Glyph().Arc(0.45, 0.45, 0.33, 0.38, 30, 390).To(0.78, 1.6).To(0.98, 1.35).Build();
    case 'r': return Glyph().To(0.2, 1.0).To(0.2, 0.1).To(0.2, 0.45).Arc(0.45, 0.5, 0.25, 0.3, 150, 45).Build();
    case 's': return Glyph().Arc(0.5, 0.28, 0.3, 0.25, 30, 270).Arc(0.5, 0.76, 0.3, 0.24, 90, -150).Build();
    case 't': return Glyph().To(0.15, 0.05).To(0.85, 0.05).To(0.5, 0.05).To(0.5, 1.0).To(0.75, 0.95).Build();
    case 'u': return Glyph().To(0.15, 0.0).To(0.15, 0.65).Arc(0.45, 0.65, 0.3, 0.3, 180, 360).To(0.75, 0.0).To(0.8, 1.0).Build();
    case 'v': return Glyph().To(0.1, 0.0).To(0.5, 1.0).To(0.9, 0.0).Build();
    case 'w': return Glyph().To(0.0, 0.0).To(0.25, 1.0).To(0.5, 0.35).To(0.75, 1.0).To(1.0, 0.0).Build();
    case 'x': return Glyph().To(0.1, 0.0).To(0.9, 1.0).To(0.9, 0.0).To(0.1, 1.0).Build();
    case 'y': return Glyph().To(0.15, 0.0).To(0.15, 0.55).Arc(0.45, 0.55, 0.3, 0.3, 180, 360).To(0.75, 0.0).To(0.75, 1.4).Arc(0.5, 1.4, 0.25, 0.25, 0, -180).Build();
    case 'z': return Glyph().To(0.1, 0.0).To(0.9, 0.0).To(0.1, 1.0).To(0.9, 1.0).Build();
  }
  throw Error(ErrorCode::kUnknownLabel, std::string(1, c));
}

// Unit box, min corner at the origin, aspect preserved.
void FitUnitBox(std::vector<FeaturePoint>& points) {
  double min_x = points[0].x, max_x = points[0].x;
  double min_y = points[0].y, max_y = points[0].y;
  for (const FeaturePoint& p : points) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  const double extent = std::max(max_x - min_x, max_y - min_y);
  for (FeaturePoint& p : points) {
    p.x = (p.x - min_x) / extent;
    p.y = (p.y - min_y) / extent;
  }
}

FeatureSeq ToGlyphSeq(std::vector<FeaturePoint> points) {
  FitUnitBox(points);
  auto with_dirs = WithDirections(points);
  if (!with_dirs) throw Error(ErrorCode::kDegenerateTrace, "flat glyph");
  FeatureSeq seq = Resample(FeatureSeq{std::move(*with_dirs), 0.0}, kGlyphLength);
  for (FeaturePoint& p : seq.points) {
    p.x = std::clamp(p.x, 0.0, 1.0);
    p.y = std::clamp(p.y, 0.0, 1.0);
  }
  return seq;
}

// Smooth random displacement: Gaussian offsets at a few knots, linearly
// interpolated along the point index.
void AddKnotNoise(std::vector<FeaturePoint>& points, double sigma,
                  std::size_t knots, std::mt19937_64& rng) {
  std::vector<std::pair<double, double>> offsets(knots);
  for (auto& o : offsets) {
    o.first = sigma * Gaussian(rng);
    o.second = sigma * Gaussian(rng);
  }
  if (sigma == 0.0) return;
  const double last = static_cast<double>(points.size() - 1);
  for (std::size_t k = 0; k < points.size(); ++k) {
    const double u = static_cast<double>(k) / last * static_cast<double>(knots - 1);
    const std::size_t a = std::min(static_cast<std::size_t>(u), knots - 2);
    const double f = u - static_cast<double>(a);
    points[k].x += (1.0 - f) * offsets[a].first + f * offsets[a + 1].first;
    points[k].y += (1.0 - f) * offsets[a].second + f * offsets[a + 1].second;
  }
}

double Turn(const FeaturePoint& a, const FeaturePoint& b, const FeaturePoint& c) {
  const double ux = b.x - a.x, uy = b.y - a.y;
  const double vx = c.x - b.x, vy = c.y - b.y;
  const double cross = ux * vy - uy * vx;
  const double dot = ux * vx + uy * vy;
  if (cross == 0.0 && dot == 0.0) return 0.0;
  return std::abs(std::atan2(cross, dot));
}

}  // namespace

double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double Gaussian(std::mt19937_64& rng) {
  const double u1 = 1.0 - Uniform01(rng);  // (0, 1]
  const double u2 = Uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

FeatureSeq GlyphTemplate(CharLabel label) {
  std::vector<FeaturePoint> points;
  for (const auto& [x, y] : GlyphPath(label.ToChar())) {
    points.push_back({x, y, 0.0, 0.0});
  }
  return ToGlyphSeq(std::move(points));
}

SyntheticWriter::SyntheticWriter(std::string id, std::uint64_t seed,
                                 const WriterProfile& profile)
    : id_(std::move(id)),
      seed_(seed),
      noise_(profile.noise),
      duration_jitter_(profile.duration_jitter),
      drift_(profile.drift),
      sample_rate_hz_(profile.sample_rate_hz),
      device_scale_(profile.device_scale),
      rng_(seed) {
  if (!(profile.t_first >= profile.t_limit) || !(profile.t_limit > 0.0) ||
      !(profile.practice_exponent >= 0.0) || !(profile.noise >= 0.0) ||
      !(profile.style_variation >= 0.0) || !(profile.drift >= 0.0) ||
      !(profile.duration_jitter >= 0.0) || !(profile.sample_rate_hz > 0.0) ||
      !(profile.device_scale > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid writer profile");
  }
  const double spread = profile.practice_spread;
  t_first_ = profile.t_first * std::exp(spread * Gaussian(rng_));
  t_limit_ = std::min(profile.t_limit * std::exp(spread * Gaussian(rng_)), t_first_);
  exponent_ = profile.practice_exponent * std::exp(spread * Gaussian(rng_));

  // A writer's slant, width and rotation are shared by all letters.
  const double v = profile.style_variation;
  const double shear = 2.0 * v * Gaussian(rng_);
  const double width = std::exp(1.5 * v * Gaussian(rng_));
  const double rotation = v * Gaussian(rng_);
  const double cr = std::cos(rotation), sr = std::sin(rotation);
  for (char c = 'a'; c <= 'z'; ++c) {
    const CharLabel label = CharLabel::FromChar(c);
    std::vector<FeaturePoint> points = GlyphTemplate(label).points;
    for (FeaturePoint& p : points) {
      const double x = (p.x + shear * (p.y - 0.5)) * width;
      const double y = p.y;
      p.x = cr * x - sr * y;
      p.y = sr * x + cr * y;
    }
    AddKnotNoise(points, v, 5, rng_);
    styles_.emplace(label, ToGlyphSeq(std::move(points)));
  }
}

double SyntheticWriter::ExpectedDuration(int session) const {
  const double n = static_cast<double>(std::max(session, 1));
  return t_limit_ + (t_first_ - t_limit_) * std::pow(n, -exponent_);
}

RawTrace SyntheticWriter::Write(CharLabel label, int session) {
  std::vector<FeaturePoint> path = styles_.at(label).points;
  AddKnotNoise(path, noise_, 6, rng_);
  const double jitter = Gaussian(rng_);
  const double duration =
      ExpectedDuration(session) *
      (duration_jitter_ > 0.0 ? std::exp(duration_jitter_ * jitter) : 1.0);

  // Pen speed slows at high curvature and near the stroke ends.
  const std::size_t n = path.size();
  std::vector<double> length(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    length[k] = length[k - 1] + std::hypot(path[k].x - path[k - 1].x,
                                           path[k].y - path[k - 1].y);
  }
  const double total = std::max(length.back(), 1e-12);
  std::vector<double> time(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    double turn = 0.0;
    for (std::size_t j = (k > 2 ? k - 2 : 1); j <= std::min(k + 1, n - 2); ++j) {
      turn = std::max(turn, Turn(path[j - 1], path[j], path[j + 1]));
    }
    const double segment = length[k] - length[k - 1];
    const double curvature = turn / std::max(segment, 1e-6);
    const double u = 0.5 * (length[k] + length[k - 1]) / total;
    const double envelope = 0.3 + 0.7 * std::sin(std::numbers::pi * u);
    const double speed = envelope * std::cbrt(1.0 / (1.0 + 0.5 * curvature));
    time[k] = time[k - 1] + segment / speed;
  }
  const double time_scale = duration / std::max(time.back(), 1e-12);
  for (double& t : time) t *= time_scale;
  time.back() = duration;

  RawTrace trace;
  const double step = 1.0 / sample_rate_hz_;
  std::size_t k = 1;
  auto emit = [&](double t) {
    while (k + 1 < n && time[k] < t) ++k;
    const double span = time[k] - time[k - 1];
    const double f = span > 0.0 ? std::clamp((t - time[k - 1]) / span, 0.0, 1.0) : 1.0;
    const double x = path[k - 1].x + f * (path[k].x - path[k - 1].x);
    const double y = path[k - 1].y + f * (path[k].y - path[k - 1].y);
    trace.samples.push_back(
        {40.0 + device_scale_ * x, 40.0 + device_scale_ * y, 1000.0 * t});
  };
  trace.samples.push_back({40.0 + device_scale_ * path[0].x,
                           40.0 + device_scale_ * path[0].y, 0.0});
  for (int j = 1; step * j < duration - 0.5 * step; ++j) emit(step * j);
  trace.samples.push_back({40.0 + device_scale_ * path.back().x,
                           40.0 + device_scale_ * path.back().y, 1000.0 * duration});
  return trace;
}

void SyntheticWriter::Feedback(CharLabel intent, CharLabel predicted) {
  if (intent == predicted || drift_ == 0.0) return;
  FeatureSeq& mine = styles_.at(intent);
  const FeatureSeq& other = styles_.at(predicted);
  std::vector<FeaturePoint> moved = mine.points;
  for (std::size_t i = 0; i < moved.size(); ++i) {
    const double vx = moved[i].x - other.points[i].x;
    const double vy = moved[i].y - other.points[i].y;
    const double norm = std::hypot(vx, vy);
    if (norm > 0.0) {
      moved[i].x += drift_ * vx / norm;
      moved[i].y += drift_ * vy / norm;
    }
  }
  if (auto with_dirs = WithDirections(moved)) mine.points = std::move(*with_dirs);
}

bool operator==(const SyntheticWriter& a, const SyntheticWriter& b) {
  return a.id_ == b.id_ && a.seed_ == b.seed_ && a.styles_ == b.styles_ &&
         a.noise_ == b.noise_ && a.t_first_ == b.t_first_ &&
         a.t_limit_ == b.t_limit_ && a.exponent_ == b.exponent_ &&
         a.duration_jitter_ == b.duration_jitter_ && a.drift_ == b.drift_ &&
         a.sample_rate_hz_ == b.sample_rate_hz_ &&
         a.device_scale_ == b.device_scale_ && a.rng_ == b.rng_;
}

SyntheticWriter SynthesizeUser(const std::string& id, std::uint64_t seed,
                               const WriterProfile& profile) {
  return SyntheticWriter(id, seed, profile);
}

}  // namespace scribe

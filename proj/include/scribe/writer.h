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

#ifndef SCRIBE_WRITER_H_
#define SCRIBE_WRITER_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>

#include "scribe/alphabet.h"
#include "scribe/trajectory.h"

namespace scribe {

// Points per glyph template polyline.
inline constexpr std::size_t kGlyphLength = 64;

// Unistroke path of a lowercase letter, scaled into the unit box with its min
// corner at the origin, kGlyphLength points equally spaced by arc length.
FeatureSeq GlyphTemplate(CharLabel label);

struct WriterProfile {
  // Magnitude of the writer's personal deformation of the base glyphs.
  double style_variation = 0.06;
  // Per-instance smooth positional noise, in normalized units.
  double noise = 0.025;
  // Practice law T(n) = t_limit + (t_first - t_limit) n^-exponent.
  double t_first = 2.0;
  double t_limit = 0.8;
  double practice_exponent = 0.3;
  // Relative per-writer spread of the practice-law parameters.
  double practice_spread = 0.15;
  // Log-normal sigma of per-character duration around T(n).
  double duration_jitter = 0.1;
  // Step a misrecognized letter takes away from the confused letter.
  double drift = 0.02;
  double sample_rate_hz = 60.0;
  // Device pixels per normalized unit.
  double device_scale = 300.0;
};

// A simulated participant: personal letter styles, a practice law for
// writing duration and a drift response to recognition errors.
class SyntheticWriter {
 public:
  // Deterministic in (id, seed, profile).
  SyntheticWriter(std::string id, std::uint64_t seed,
                  const WriterProfile& profile);

  const std::string& id() const { return id_; }
  std::uint64_t seed() const { return seed_; }
  const FeatureSeq& style(CharLabel label) const { return styles_.at(label); }
  double noise() const { return noise_; }
  double t_first() const { return t_first_; }
  double t_limit() const { return t_limit_; }
  double practice_exponent() const { return exponent_; }
  double drift() const { return drift_; }

  // Expected writing duration in session n (1-based).
  double ExpectedDuration(int session) const;

  // One trace of label in session n; consumes randomness.
  RawTrace Write(CharLabel label, int session);

  // Recognition feedback. On an error the intended letter's style moves
  // drift units away from the confused letter's style, point by point.
  void Feedback(CharLabel intent, CharLabel predicted);

  friend bool operator==(const SyntheticWriter&, const SyntheticWriter&);

 private:
  std::string id_;
  std::uint64_t seed_;
  std::map<CharLabel, FeatureSeq> styles_;
  double noise_;
  double t_first_;
  double t_limit_;
  double exponent_;
  double duration_jitter_;
  double drift_;
  double sample_rate_hz_;
  double device_scale_;
  std::mt19937_64 rng_;
};

// Throws Error(kInvalidArgument) unless t_first >= t_limit > 0,
// exponent >= 0 and noise >= 0.
SyntheticWriter SynthesizeUser(const std::string& id, std::uint64_t seed,
                               const WriterProfile& profile);

// Standard normal deviate via Box-Muller on 53-bit uniforms.
double Gaussian(std::mt19937_64& rng);
double Uniform01(std::mt19937_64& rng);

}  // namespace scribe

#endif  // SCRIBE_WRITER_H_

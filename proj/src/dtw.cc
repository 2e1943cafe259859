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

#include <cmath>
#include <limits>

#include "scribe/error.h"

namespace scribe {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr DtwCell kInfeasible{kInf, 0};

bool Better(const DtwCell& a, const DtwCell& b) {
  return a.cost < b.cost || (a.cost == b.cost && a.length < b.length);
}

bool InBand(std::size_t i, std::size_t j, const DtwConfig& cfg) {
  if (!cfg.band) return true;
  const std::size_t gap = i > j ? i - j : j - i;
  return gap <= *cfg.band;
}

enum class Step : std::uint8_t { kNone, kDiagonal, kVertical, kHorizontal };

// Fills row i of the accumulated table from row i-1 (empty for i == 0).
// steps, when non-null, receives the chosen predecessor of each cell.
void AdvanceRow(std::span<const DtwCell> prev, std::span<DtwCell> next,
                const FeaturePoint& point, std::span<const FeaturePoint> tmpl,
                std::size_t row, const DtwConfig& cfg, Step* steps) {
  for (std::size_t j = 0; j < tmpl.size(); ++j) {
    if (!InBand(row, j, cfg)) {
      next[j] = kInfeasible;
      if (steps) steps[j] = Step::kNone;
      continue;
    }
    DtwCell best = kInfeasible;
    Step step = Step::kNone;
    if (row == 0 && j == 0) {
      best = {0.0, 0};
    } else {
      if (row > 0 && j > 0 && prev[j - 1].feasible()) {
        best = prev[j - 1];
        step = Step::kDiagonal;
      }
      if (row > 0 && prev[j].feasible() &&
          (step == Step::kNone || Better(prev[j], best))) {
        best = prev[j];
        step = Step::kVertical;
      }
      if (j > 0 && next[j - 1].feasible() &&
          (step == Step::kNone || Better(next[j - 1], best))) {
        best = next[j - 1];
        step = Step::kHorizontal;
      }
      if (step == Step::kNone) {
        next[j] = kInfeasible;
        if (steps) steps[j] = Step::kNone;
        continue;
      }
    }
    next[j] = {best.cost + LocalCost(point, tmpl[j], cfg.direction_weight),
               best.length + 1};
    if (steps) steps[j] = step;
  }
}

void CheckInputs(std::span<const FeaturePoint> a,
                 std::span<const FeaturePoint> b, const DtwConfig& cfg) {
  cfg.Validate();
  if (a.empty() || b.empty()) {
    throw Error(ErrorCode::kEmptyInput, "DTW of an empty sequence");
  }
  if (cfg.band) {
    const std::size_t gap =
        a.size() > b.size() ? a.size() - b.size() : b.size() - a.size();
    if (gap > *cfg.band) {
      throw Error(ErrorCode::kBandInfeasible,
                  "length difference exceeds the band");
    }
  }
}

}  // namespace

void DtwConfig::Validate() const {
  if (!(direction_weight >= 0.0) || !std::isfinite(direction_weight)) {
    throw Error(ErrorCode::kInvalidArgument, "direction weight must be >= 0");
  }
  if (band && *band < 1) {
    throw Error(ErrorCode::kInvalidArgument, "band must be >= 1");
  }
}

double LocalCost(const FeaturePoint& a, const FeaturePoint& b,
                 double direction_weight) {
  const double px = a.x - b.x;
  const double py = a.y - b.y;
  const double qx = a.dx - b.dx;
  const double qy = a.dy - b.dy;
  const double w2 = direction_weight * direction_weight;
  return std::sqrt(px * px + py * py + w2 * (qx * qx + qy * qy));
}

bool DtwCell::feasible() const { return cost != kInf; }

double CellDistance(const DtwCell& cell, const DtwConfig& cfg) {
  if (!cell.feasible()) return kInf;
  return cfg.normalize_by_path ? cell.cost / static_cast<double>(cell.length)
                               : cell.cost;
}

double DtwDistance(std::span<const FeaturePoint> a,
                   std::span<const FeaturePoint> b, const DtwConfig& cfg) {
  CheckInputs(a, b, cfg);
  std::vector<DtwCell> prev(b.size()), next(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    AdvanceRow(prev, next, a[i], b, i, cfg, nullptr);
    std::swap(prev, next);
  }
  return CellDistance(prev.back(), cfg);
}

double DtwDistance(const FeatureSeq& a, const FeatureSeq& b,
                   const DtwConfig& cfg) {
  return DtwDistance(std::span<const FeaturePoint>(a.points),
                     std::span<const FeaturePoint>(b.points), cfg);
}

DtwAlignment DtwAlign(std::span<const FeaturePoint> a,
                      std::span<const FeaturePoint> b, const DtwConfig& cfg) {
  CheckInputs(a, b, cfg);
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<Step> steps(n * m, Step::kNone);
  std::vector<DtwCell> prev(m), next(m);
  for (std::size_t i = 0; i < n; ++i) {
    AdvanceRow(prev, next, a[i], b, i, cfg, &steps[i * m]);
    std::swap(prev, next);
  }
  DtwAlignment out;
  out.end = prev.back();
  out.distance = CellDistance(out.end, cfg);

  std::size_t i = n - 1;
  std::size_t j = m - 1;
  out.path.emplace_back(i, j);
  while (i > 0 || j > 0) {
    switch (steps[i * m + j]) {
      case Step::kDiagonal: --i; --j; break;
      case Step::kVertical: --i; break;
      case Step::kHorizontal: --j; break;
      case Step::kNone:
        throw Error(ErrorCode::kBandInfeasible, "no feasible alignment");
    }
    out.path.emplace_back(i, j);
  }
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

PrefixState::PrefixState(std::shared_ptr<const Templates> templates,
                         DtwConfig cfg)
    : templates_(std::move(templates)), cfg_(cfg) {
  cfg_.Validate();
  if (!templates_ || templates_->empty()) {
    throw Error(ErrorCode::kEmptyInput, "no templates");
  }
  columns_.reserve(templates_->size());
  for (const auto& tmpl : *templates_) {
    if (tmpl.empty()) throw Error(ErrorCode::kEmptyInput, "empty template");
    columns_.emplace_back(tmpl.size(), kInfeasible);
  }
}

void PrefixState::Update(const FeaturePoint& point) {
  std::vector<DtwCell> next;
  for (std::size_t k = 0; k < columns_.size(); ++k) {
    const auto& tmpl = (*templates_)[k];
    next.resize(tmpl.size());
    std::span<const DtwCell> prev =
        consumed_ == 0 ? std::span<const DtwCell>() : columns_[k];
    AdvanceRow(prev, next, point, tmpl, consumed_, cfg_, nullptr);
    columns_[k].swap(next);
  }
  ++consumed_;
}

std::vector<double> PrefixState::Distances() const {
  if (consumed_ == 0) {
    throw Error(ErrorCode::kEmptyInput, "no points consumed");
  }
  std::vector<double> out;
  out.reserve(columns_.size());
  for (const auto& column : columns_) {
    out.push_back(CellDistance(column.back(), cfg_));
  }
  return out;
}

bool operator==(const PrefixState& a, const PrefixState& b) {
  return a.consumed_ == b.consumed_ && a.cfg_ == b.cfg_ &&
         a.columns_ == b.columns_ &&
         (a.templates_ == b.templates_ || *a.templates_ == *b.templates_);
}

PrefixState PrefixUpdate(PrefixState state, const FeaturePoint& point) {
  state.Update(point);
  return state;
}

}  // namespace scribe

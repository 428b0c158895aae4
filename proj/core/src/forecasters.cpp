// Copyright 2026 The ucal Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ucal/forecasters.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

namespace ucal {

std::string ForecasterSpec::name() const {
  switch (kind) {
    case ForecasterKind::kFtl:
      return "ftl";
    case ForecasterKind::kFtplGeometric:
      return "ftpl-geometric";
    case ForecasterKind::kFtplUniform:
      return "ftpl-uniform";
    case ForecasterKind::kStatic: {
      std::string out = "static:";
      if (static_point) {
        for (std::size_t i = 0; i < static_point->size(); ++i) {
          if (i) out += ";";
          char buf[32];
          std::snprintf(buf, sizeof buf, "%.6g", (*static_point)[i]);
          out += buf;
        }
      }
      return out;
    }
  }
  return "unknown";
}

double geometric_parameter(int num_outcomes, std::int64_t horizon) {
  if (num_outcomes < 1 || horizon < 1) {
    throw std::invalid_argument("geometric_parameter needs K >= 1 and T >= 1");
  }
  return std::min(1.0, std::sqrt(static_cast<double>(num_outcomes) /
                                 static_cast<double>(horizon)));
}

std::int64_t sample_geometric(double q, RngStream& rng) {
  if (!(q > 0.0 && q <= 1.0)) {
    throw std::invalid_argument("geometric parameter must lie in (0, 1]");
  }
  if (q == 1.0) return 1;
  const double u = rng.uniform_open_closed();
  const double m = std::ceil(std::log(u) / std::log1p(-q));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(m));
}

ForecasterState::ForecasterState(const ForecasterSpec& spec, int num_outcomes,
                                 std::int64_t horizon)
    : kind_(spec.kind), horizon_(horizon), counts_(num_outcomes) {
  if (num_outcomes < 2) throw std::invalid_argument("forecaster needs K >= 2");
  if (horizon < 1) throw std::invalid_argument("forecaster needs T >= 1");
  switch (kind_) {
    case ForecasterKind::kFtplGeometric:
      noise_q_ = geometric_parameter(num_outcomes, horizon);
      break;
    case ForecasterKind::kFtplUniform:
      uniform_noise_max_ =
          static_cast<std::int64_t>(std::floor(std::sqrt(static_cast<double>(horizon))));
      break;
    case ForecasterKind::kStatic:
      if (!spec.static_point) {
        throw std::invalid_argument("static forecaster needs a point");
      }
      if (spec.static_point->num_outcomes() != num_outcomes) {
        throw std::invalid_argument("static point dimension differs from K");
      }
      static_point_ = spec.static_point;
      break;
    case ForecasterKind::kFtl:
      break;
  }
}

ForecasterState ForecasterState::ftl(int num_outcomes, std::int64_t horizon) {
  return ForecasterState(ForecasterSpec::ftl(), num_outcomes, horizon);
}

ForecasterState ForecasterState::ftpl_geometric(int num_outcomes, std::int64_t horizon) {
  return ForecasterState(ForecasterSpec::ftpl_geometric(), num_outcomes, horizon);
}

ForecasterState ForecasterState::ftpl_uniform(int num_outcomes, std::int64_t horizon) {
  return ForecasterState(ForecasterSpec::ftpl_uniform(), num_outcomes, horizon);
}

ForecasterState ForecasterState::fixed(SimplexPoint p, std::int64_t horizon) {
  const int k = p.num_outcomes();
  return ForecasterState(ForecasterSpec::fixed(std::move(p)), k, horizon);
}

SimplexPoint ForecasterState::predict(RngStream& rng) const {
  const int k = num_outcomes();
  switch (kind_) {
    case ForecasterKind::kFtl:
      // Round 1 has no history; play the uniform point.
      if (counts_.total() == 0) return SimplexPoint::uniform(k);
      return mean_of_counts(counts_);
    case ForecasterKind::kStatic:
      return *static_point_;
    case ForecasterKind::kFtplGeometric:
    case ForecasterKind::kFtplUniform:
      break;
  }
  // Y_i = n_{t-1,i} + m_{t,i}; forecast Y / ΣY.
  std::vector<double> perturbed(k);
  std::int64_t total = 0;
  for (int i = 0; i < k; ++i) {
    const std::int64_t noise =
        kind_ == ForecasterKind::kFtplGeometric
            ? sample_geometric(noise_q_, rng)
            : static_cast<std::int64_t>(
                  rng.uniform_below(static_cast<std::uint64_t>(uniform_noise_max_) + 1));
    const std::int64_t y = counts_[i] + noise;
    perturbed[i] = static_cast<double>(y);
    total += y;
  }
  if (total == 0) return SimplexPoint::uniform(k);
  const double denom = static_cast<double>(total);
  for (double& v : perturbed) v /= denom;
  return unchecked_simplex(std::move(perturbed));
}

void ForecasterState::observe(Outcome y) {
  if (round_ > horizon_) throw std::out_of_range("horizon exceeded");
  counts_.add(y);
  ++round_;
}

}  // namespace ucal

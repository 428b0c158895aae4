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

#ifndef UCAL_FORECASTERS_HPP_
#define UCAL_FORECASTERS_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "ucal/rng.hpp"
#include "ucal/simplex.hpp"

namespace ucal {

enum class ForecasterKind { kFtl, kFtplGeometric, kFtplUniform, kStatic };

// What to build; turned into a fresh ForecasterState per game.
struct ForecasterSpec {
  ForecasterKind kind = ForecasterKind::kFtl;
  std::optional<SimplexPoint> static_point;

  static ForecasterSpec ftl() { return {ForecasterKind::kFtl, std::nullopt}; }
  static ForecasterSpec ftpl_geometric() {
    return {ForecasterKind::kFtplGeometric, std::nullopt};
  }
  static ForecasterSpec ftpl_uniform() {
    return {ForecasterKind::kFtplUniform, std::nullopt};
  }
  static ForecasterSpec fixed(SimplexPoint p) { return {ForecasterKind::kStatic, std::move(p)}; }

  std::string name() const;
};

// Noise parameter q = min(1, √(K/T)).
double geometric_parameter(int num_outcomes, std::int64_t horizon);

// Draw from Geometric(q) on {1, 2, ...} by inverse transform,
// m = ⌈ln U / ln(1 − q)⌉. q == 1 always yields 1.
std::int64_t sample_geometric(double q, RngStream& rng);

// State of one online forecaster over a game of horizon T: the counts of the
// outcomes seen so far and the 1-based round t, with counts.total() == t − 1.
//
// predict() is const and pure given the RNG; observe() advances the round.
class ForecasterState {
 public:
  ForecasterState(const ForecasterSpec& spec, int num_outcomes, std::int64_t horizon);

  static ForecasterState ftl(int num_outcomes, std::int64_t horizon);
  static ForecasterState ftpl_geometric(int num_outcomes, std::int64_t horizon);
  static ForecasterState ftpl_uniform(int num_outcomes, std::int64_t horizon);
  static ForecasterState fixed(SimplexPoint p, std::int64_t horizon);

  // Forecast for the current round. FTL ignores the RNG.
  SimplexPoint predict(RngStream& rng) const;

  // Throws std::out_of_range("horizon exceeded") once t > T.
  void observe(Outcome y);

  ForecasterKind kind() const { return kind_; }
  int num_outcomes() const { return counts_.num_outcomes(); }
  std::int64_t horizon() const { return horizon_; }
  std::int64_t round() const { return round_; }
  const CountVector& counts() const { return counts_; }
  bool uses_randomness() const {
    return kind_ == ForecasterKind::kFtplGeometric || kind_ == ForecasterKind::kFtplUniform;
  }

 private:
  ForecasterKind kind_;
  std::int64_t horizon_;
  std::int64_t round_ = 1;
  CountVector counts_;
  std::optional<SimplexPoint> static_point_;
  double noise_q_ = 1.0;
  std::int64_t uniform_noise_max_ = 0;
};

// Value-style update: returns the state after observing y.
inline ForecasterState observe(ForecasterState state, Outcome y) {
  state.observe(y);
  return state;
}

}  // namespace ucal

#endif  // UCAL_FORECASTERS_HPP_

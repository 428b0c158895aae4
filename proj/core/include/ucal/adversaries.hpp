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

#ifndef UCAL_ADVERSARIES_HPP_
#define UCAL_ADVERSARIES_HPP_

#include <cstdint>
#include <istream>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ucal/losses.hpp"
#include "ucal/rng.hpp"
#include "ucal/simplex.hpp"

namespace ucal {

enum class AdversaryKind { kFixed, kIidUniform, kAlternating, kGreedyAdaptive };

// Outcome generator. Fixed, IidUniform and Alternating are oblivious: they
// never look at the forecasts. GreedyAdaptive picks argmax_i ℓ(p_{t−1}, e_i)
// against the previous forecast (the uniform point at t = 1), ties to the
// lowest index.
class Adversary {
 public:
  static Adversary fixed(int num_outcomes, std::vector<Outcome> sequence);
  static Adversary iid_uniform(int num_outcomes);
  static Adversary alternating(int num_outcomes);
  static Adversary greedy_adaptive(ProperLoss loss);

  // t is 1-based; past_forecasts holds p_1..p_{t−1}.
  Outcome next_outcome(std::int64_t t, std::span<const SimplexPoint> past_forecasts,
                       RngStream& rng) const;

  AdversaryKind kind() const { return kind_; }
  int num_outcomes() const { return num_outcomes_; }
  bool is_oblivious() const { return kind_ != AdversaryKind::kGreedyAdaptive; }
  std::string name() const;
  // Length of a Fixed sequence; 0 otherwise.
  std::size_t sequence_length() const { return sequence_ ? sequence_->size() : 0; }

 private:
  Adversary(AdversaryKind kind, int num_outcomes) : kind_(kind), num_outcomes_(num_outcomes) {}

  AdversaryKind kind_;
  int num_outcomes_;
  std::shared_ptr<const std::vector<Outcome>> sequence_;
  std::shared_ptr<const ProperLoss> loss_;
};

// Whitespace-separated 1-based outcome indices. Throws std::runtime_error on
// malformed tokens or indices outside [1, K].
std::vector<Outcome> read_outcome_sequence(std::istream& in, int num_outcomes);
std::vector<Outcome> load_outcome_sequence(const std::string& path, int num_outcomes);

}  // namespace ucal

#endif  // UCAL_ADVERSARIES_HPP_

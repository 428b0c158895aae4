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

#include "ucal/adversaries.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

namespace ucal {

Adversary Adversary::fixed(int num_outcomes, std::vector<Outcome> sequence) {
  if (num_outcomes < 2) throw std::invalid_argument("adversary needs K >= 2");
  for (Outcome y : sequence) {
    if (y.index < 0 || y.index >= num_outcomes) {
      throw std::invalid_argument("fixed sequence has an outcome outside [0, K)");
    }
  }
  Adversary adv(AdversaryKind::kFixed, num_outcomes);
  adv.sequence_ = std::make_shared<const std::vector<Outcome>>(std::move(sequence));
  return adv;
}

Adversary Adversary::iid_uniform(int num_outcomes) {
  if (num_outcomes < 2) throw std::invalid_argument("adversary needs K >= 2");
  return Adversary(AdversaryKind::kIidUniform, num_outcomes);
}

Adversary Adversary::alternating(int num_outcomes) {
  if (num_outcomes < 2) {
    throw std::invalid_argument("alternating adversary needs K >= 2");
  }
  return Adversary(AdversaryKind::kAlternating, num_outcomes);
}

Adversary Adversary::greedy_adaptive(ProperLoss loss) {
  Adversary adv(AdversaryKind::kGreedyAdaptive, loss.num_outcomes());
  adv.loss_ = std::make_shared<const ProperLoss>(std::move(loss));
  return adv;
}

std::string Adversary::name() const {
  switch (kind_) {
    case AdversaryKind::kFixed:
      return "fixed";
    case AdversaryKind::kIidUniform:
      return "iid";
    case AdversaryKind::kAlternating:
      return "alternating";
    case AdversaryKind::kGreedyAdaptive:
      return "greedy:" + loss_->id();
  }
  return "unknown";
}

Outcome Adversary::next_outcome(std::int64_t t, std::span<const SimplexPoint> past_forecasts,
                                RngStream& rng) const {
  if (t < 1) throw std::invalid_argument("rounds are 1-based");
  switch (kind_) {
    case AdversaryKind::kFixed: {
      if (static_cast<std::size_t>(t) > sequence_->size()) {
        throw std::out_of_range("fixed outcome sequence exhausted at round " +
                                std::to_string(t));
      }
      return (*sequence_)[t - 1];
    }
    case AdversaryKind::kIidUniform:
      return Outcome{static_cast<int>(rng.uniform_below(num_outcomes_))};
    case AdversaryKind::kAlternating:
      return Outcome{t % 2 == 1 ? 0 : 1};
    case AdversaryKind::kGreedyAdaptive: {
      const SimplexPoint proxy = past_forecasts.empty()
                                     ? SimplexPoint::uniform(num_outcomes_)
                                     : past_forecasts.back();
      const auto values = loss_->bivariate_all(proxy);
      int best = 0;
      for (int i = 1; i < num_outcomes_; ++i) {
        if (values[i] > values[best]) best = i;
      }
      return Outcome{best};
    }
  }
  return Outcome{0};
}

std::vector<Outcome> read_outcome_sequence(std::istream& in, int num_outcomes) {
  std::vector<Outcome> out;
  std::string token;
  while (in >> token) {
    std::size_t consumed = 0;
    long long value = 0;
    try {
      value = std::stoll(token, &consumed);
    } catch (const std::exception&) {
      consumed = 0;
    }
    if (consumed != token.size()) {
      throw std::runtime_error("bad outcome token '" + token + "'");
    }
    if (value < 1 || value > num_outcomes) {
      throw std::runtime_error("outcome " + token + " outside [1, " +
                               std::to_string(num_outcomes) + "]");
    }
    out.push_back(Outcome{static_cast<int>(value - 1)});
  }
  return out;
}

std::vector<Outcome> load_outcome_sequence(const std::string& path, int num_outcomes) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open outcome file '" + path + "'");
  return read_outcome_sequence(in, num_outcomes);
}

}  // namespace ucal

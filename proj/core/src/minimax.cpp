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

#include "ucal/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ucal::minimax {
namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace

double recurrence_step(double v1, double v2, Branch* branch) {
  const double gap = v1 - v2;
  if (gap < -2.0) {
    if (branch) *branch = Branch::kLow;
    return v2;
  }
  if (gap > 2.0) {
    if (branch) *branch = Branch::kHigh;
    return v1;
  }
  if (branch) *branch = Branch::kMiddle;
  return gap * gap / 8.0 + (v1 + v2) / 2.0 + 0.5;
}

double optimal_q(double v1, double v2) {
  return std::clamp((v1 - v2 + 2.0) / 4.0, 0.0, 1.0);
}

double base_value(std::int64_t n, std::int64_t horizon) {
  const double t = static_cast<double>(horizon);
  const double frac = static_cast<double>(n) / t;
  return 2.0 * t * frac * (frac - 1.0);
}

double MinimaxTable::at(std::int64_t n1, std::int64_t n2, std::int64_t r) const {
  if (!has_full_table()) throw std::logic_error("table was not retained");
  if (n1 < 0 || n2 < 0 || r < 0 || n1 + n2 + r != horizon) {
    throw std::out_of_range("state outside n1 + n2 + r = T");
  }
  return layers[r][n1];
}

MinimaxTable dp_value(std::int64_t horizon, bool keep_table) {
  if (horizon < 1 || horizon > kMaxDpHorizon) {
    throw std::out_of_range("dp_value supports 1 <= T <= " +
                            std::to_string(kMaxDpHorizon));
  }
  MinimaxTable table;
  table.horizon = horizon;

  std::vector<double> prev(horizon + 1);
  for (std::int64_t n = 0; n <= horizon; ++n) prev[n] = base_value(n, horizon);
  if (keep_table) {
    table.layers.reserve(horizon + 1);
    table.layers.push_back(prev);
  }

  std::vector<double> next;
  for (std::int64_t r = 1; r <= horizon; ++r) {
    // Layer r holds n1 = 0..T−r; V1 = prev[n1 + 1], V2 = prev[n1].
    next.assign(horizon - r + 1, 0.0);
    for (std::int64_t n1 = 0; n1 <= horizon - r; ++n1) {
      const double v1 = prev[n1 + 1];
      const double v2 = prev[n1];
      table.max_abs_gap = std::max(table.max_abs_gap, std::abs(v1 - v2));
      Branch branch;
      next[n1] = recurrence_step(v1, v2, &branch);
      ++table.states;
      switch (branch) {
        case Branch::kLow: ++table.low_branch; break;
        case Branch::kMiddle: ++table.middle_branch; break;
        case Branch::kHigh: ++table.high_branch; break;
      }
    }
    if (keep_table) table.layers.push_back(next);
    prev.swap(next);
  }
  table.value = prev[0];
  return table;
}

double ClosedFormSequences::structural_value(std::int64_t n1, std::int64_t n2,
                                             std::int64_t r) const {
  const double diff = static_cast<double>(n1 - n2);
  return diff * diff / 2.0 * u[r] -
         2.0 * static_cast<double>(n1) * static_cast<double>(n2) /
             static_cast<double>(horizon) +
         v[r];
}

double ClosedFormSequences::half_sum_a() const {
  CompensatedSum s;
  for (double x : a) s.add(x);
  return 0.5 * s.value();
}

ClosedFormSequences closed_form(std::int64_t horizon) {
  if (horizon < 1) throw std::out_of_range("closed_form needs T >= 1");
  ClosedFormSequences seq;
  seq.horizon = horizon;
  const double inv_t = 1.0 / static_cast<double>(horizon);
  seq.u.assign(horizon + 1, 0.0);
  seq.v.assign(horizon + 1, 0.0);
  seq.a.assign(horizon, 0.0);
  // v accumulates increments u_r/2 + (r+1)/T − 1/2 that nearly cancel, so it
  // is carried as a compensated sum.
  CompensatedSum v;
  const double t = static_cast<double>(horizon);
  for (std::int64_t r = 0; r < horizon; ++r) {
    const double shifted = seq.u[r] + inv_t;
    seq.a[r] = shifted;
    seq.u[r + 1] = seq.u[r] + shifted * shifted;
    v.add(seq.u[r] / 2.0 + (2.0 * static_cast<double>(r + 1) - t) / (2.0 * t));
    seq.v[r + 1] = v.value();
  }
  seq.value = seq.v[horizon];
  return seq;
}

double a_upper_bound(std::int64_t r, std::int64_t horizon) {
  return 1.0 / static_cast<double>(horizon - r);
}

double a_lower_bound(std::int64_t r, std::int64_t horizon) {
  return 1.0 / (static_cast<double>(horizon - r) + std::log(static_cast<double>(horizon)));
}

SandwichCheck check_a_bounds(const ClosedFormSequences& seq) {
  const std::int64_t horizon = seq.horizon;
  if (horizon < 2) throw std::out_of_range("check_a_bounds needs T >= 2");
  SandwichCheck check;
  for (std::int64_t r = 0; r < horizon; ++r) {
    const double a = seq.a[r];
    check.max_upper_violation =
        std::max(check.max_upper_violation, a - a_upper_bound(r, horizon));
    check.max_lower_violation =
        std::max(check.max_lower_violation, a_lower_bound(r, horizon) - a);
  }
  const double log_t = std::log(static_cast<double>(horizon));
  check.value_lower_bound = 0.5 * std::log(static_cast<double>(horizon) / (log_t + 1.0) + 1.0);
  check.value_violation = std::max(0.0, check.value_lower_bound - seq.value);
  return check;
}

SandwichCheck check_a_bounds(std::int64_t horizon) {
  if (horizon < 2) throw std::out_of_range("check_a_bounds needs T >= 2");
  return check_a_bounds(closed_form(horizon));
}

}  // namespace ucal::minimax

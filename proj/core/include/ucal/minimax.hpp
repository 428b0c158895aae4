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

#ifndef UCAL_MINIMAX_HPP_
#define UCAL_MINIMAX_HPP_

#include <cstdint>
#include <vector>

namespace ucal::minimax {

// Exact minimax regret of the binary (K = 2) forecasting game under the
// unscaled squared loss ‖p − y‖².
//
// V_{n1,n2,r} is the optimal remaining regret with outcome counts (n1, n2)
// and r rounds left (n1 + n2 + r = T). With V1 = V_{n1+1,n2,r−1} and
// V2 = V_{n1,n2+1,r−1} the adversary's optimal mixed outcome q solves
//
//   sup_{q∈[0,1]}  V2 + (V1 − V2)·q − 2(q² − q)
//
// giving the three-branch recurrence
//
//   V2                                   if V1 − V2 < −2
//   (V1 − V2)²/8 + (V1 + V2)/2 + 1/2     if |V1 − V2| <= 2
//   V1                                   if V1 − V2 > 2
//
// over the base layer V_{n,T−n,0} = 2T·(n/T)·(n/T − 1). The game value is
// V_{0,0,T}.

inline constexpr std::int64_t kMaxDpHorizon = 4096;

enum class Branch { kLow, kMiddle, kHigh };

// One step of the recurrence; reports which branch produced the value.
double recurrence_step(double v1, double v2, Branch* branch = nullptr);

// argmax q of the inner sup: clamp((V1 − V2 + 2)/4, 0, 1).
double optimal_q(double v1, double v2);

// V_{n, T−n, 0}.
double base_value(std::int64_t n, std::int64_t horizon);

struct MinimaxTable {
  std::int64_t horizon = 0;
  double value = 0.0;  // V_{0,0,T}
  // max over computed states of |V1 − V2|.
  double max_abs_gap = 0.0;
  std::int64_t states = 0;  // states with r >= 1
  std::int64_t low_branch = 0;
  std::int64_t middle_branch = 0;
  std::int64_t high_branch = 0;
  // layers[r][n1] = V_{n1, T−r−n1, r}; filled only when requested.
  std::vector<std::vector<double>> layers;

  bool has_full_table() const { return !layers.empty(); }
  double at(std::int64_t n1, std::int64_t n2, std::int64_t r) const;
  bool middle_branch_everywhere() const { return middle_branch == states; }
};

// Bottom-up evaluation of the three-branch recurrence. O(T²) time, O(T)
// memory unless keep_table is set. Requires 1 <= T <= kMaxDpHorizon.
MinimaxTable dp_value(std::int64_t horizon, bool keep_table = false);

// Closed-form sequences:
//   u_{r+1} = u_r + (u_r + 1/T)²
//   v_{r+1} = u_r/2 + v_r + (r+1)/T − 1/2,   u_0 = v_0 = 0
//   a_r = u_r + 1/T,                          value = v_T = ½ Σ_{r<T} a_r
// With these, V_{n1,n2,r} = ((n1 − n2)²/2)·u_r − 2·n1·n2/T + v_r.
struct ClosedFormSequences {
  std::int64_t horizon = 0;
  std::vector<double> u;  // r = 0..T
  std::vector<double> v;  // r = 0..T
  std::vector<double> a;  // r = 0..T−1
  double value = 0.0;

  double structural_value(std::int64_t n1, std::int64_t n2, std::int64_t r) const;
  double half_sum_a() const;
};

ClosedFormSequences closed_form(std::int64_t horizon);

// Sandwich 1/(T − r + ln T) <= a_r <= 1/(T − r), and the value bound
// v_T >= ½·ln(T/(ln T + 1) + 1). Violations are amounts past each bound
// (0 when satisfied).
struct SandwichCheck {
  double max_upper_violation = 0.0;
  double max_lower_violation = 0.0;
  double value_lower_bound = 0.0;
  double value_violation = 0.0;
};

SandwichCheck check_a_bounds(const ClosedFormSequences& seq);
SandwichCheck check_a_bounds(std::int64_t horizon);

double a_upper_bound(std::int64_t r, std::int64_t horizon);
double a_lower_bound(std::int64_t r, std::int64_t horizon);

}  // namespace ucal::minimax

#endif  // UCAL_MINIMAX_HPP_

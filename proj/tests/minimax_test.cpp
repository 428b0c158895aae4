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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "support/oracles.hpp"
#include "ucal/minimax.hpp"

namespace ucal::minimax {
namespace {

TEST(DpValue, SmallHorizons) {
  EXPECT_NEAR(dp_value(1).value, 0.5, 1e-15);
  EXPECT_NEAR(dp_value(2).value, 0.625, 1e-15);
}

TEST(DpValue, MatchesPrimalOracle) {
  // Frozen from the primal ternary-search oracle.
  const std::vector<double> frozen = {0.5,
                                      0.625,
                                      0.709876543209877,
                                      0.775520324707032,
                                      0.829527757098189,
                                      0.875630824081957,
                                      0.915971277797997,
                                      0.951903683039316};
  for (int t = 1; t <= 8; ++t) {
    EXPECT_NEAR(dp_value(t).value, frozen[t - 1], 1e-9) << t;
    EXPECT_NEAR(testing::primal_minimax_value(t), frozen[t - 1], 1e-9) << t;
  }
  for (int t : {12, 20, 33}) {
    EXPECT_NEAR(dp_value(t).value, testing::primal_minimax_value(t), 1e-9) << t;
  }
}

TEST(DpValue, BaseLayer) {
  EXPECT_DOUBLE_EQ(base_value(1, 4), -1.5);
  const auto table = dp_value(4, true);
  EXPECT_DOUBLE_EQ(table.at(1, 3, 0), -1.5);
  for (int n = 0; n <= 4; ++n) {
    EXPECT_DOUBLE_EQ(table.at(n, 4 - n, 0), 2.0 * 4 * (n / 4.0) * (n / 4.0 - 1.0));
  }
  EXPECT_EQ(table.at(0, 0, 4), table.value);
}

TEST(DpValue, RangeAndTableAccess) {
  EXPECT_THROW(dp_value(0), std::out_of_range);
  EXPECT_THROW(dp_value(kMaxDpHorizon + 1), std::out_of_range);
  const auto lean = dp_value(10);
  EXPECT_FALSE(lean.has_full_table());
  EXPECT_THROW(lean.at(0, 0, 10), std::logic_error);
  const auto full = dp_value(10, true);
  EXPECT_THROW(full.at(1, 1, 1), std::out_of_range);
  EXPECT_EQ(full.states, 10 * 11 / 2);
}

TEST(DpValue, MiddleBranchAndGap) {
  for (int t : {1, 2, 17, 128, 512}) {
    const auto table = dp_value(t);
    EXPECT_TRUE(table.middle_branch_everywhere()) << t;
    EXPECT_LE(table.max_abs_gap, 2.0 + 1e-9) << t;
  }
}

TEST(RecurrenceStep, Branches) {
  Branch b;
  EXPECT_EQ(recurrence_step(0.0, 5.0, &b), 5.0);
  EXPECT_EQ(b, Branch::kLow);
  EXPECT_EQ(recurrence_step(5.0, 0.0, &b), 5.0);
  EXPECT_EQ(b, Branch::kHigh);
  EXPECT_DOUBLE_EQ(recurrence_step(1.0, 1.0, &b), 1.5);
  EXPECT_EQ(b, Branch::kMiddle);
  // Continuous at the branch edges.
  EXPECT_DOUBLE_EQ(recurrence_step(2.0, 0.0), 2.0);
  EXPECT_DOUBLE_EQ(recurrence_step(0.0, 2.0), 2.0);
}

TEST(OptimalQ, Examples) {
  EXPECT_DOUBLE_EQ(optimal_q(3.0, 3.0), 0.5);
  EXPECT_DOUBLE_EQ(optimal_q(2.0, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(optimal_q(-4.0, 0.0), 0.0);
  // The maximizer achieves the step value.
  for (double d : {-1.5, -0.3, 0.0, 0.7, 1.9}) {
    const double q = optimal_q(d, 0.0);
    EXPECT_NEAR(0.0 + d * q - 2.0 * (q * q - q), recurrence_step(d, 0.0), 1e-15);
  }
}

TEST(ClosedForm, Sequences) {
  const auto two = closed_form(2);
  EXPECT_EQ(two.u[0], 0.0);
  EXPECT_DOUBLE_EQ(two.u[1], 0.25);
  EXPECT_DOUBLE_EQ(two.value, 0.625);
  EXPECT_DOUBLE_EQ(closed_form(1).value, 0.5);

  const auto seq = closed_form(1000);
  EXPECT_EQ(seq.u.size(), 1001u);
  EXPECT_EQ(seq.a.size(), 1000u);
  EXPECT_DOUBLE_EQ(seq.a[0], 1.0 / 1000);
  for (std::int64_t r = 0; r < 1000; ++r) {
    const double shifted = seq.u[r] + 1.0 / 1000;
    ASSERT_EQ(seq.u[r + 1], seq.u[r] + shifted * shifted);
  }
  EXPECT_THROW(closed_form(0), std::out_of_range);
}

TEST(ClosedForm, ValueIsHalfSumOfA) {
  for (std::int64_t t : {1, 2, 10, 1000, 100000, 1000000}) {
    const auto seq = closed_form(t);
    EXPECT_NEAR(seq.value, seq.half_sum_a(), 1e-12) << t;
  }
}

TEST(ClosedForm, AgreesWithDp) {
  for (std::int64_t t = 1; t <= 512; ++t) {
    ASSERT_NEAR(dp_value(t).value, closed_form(t).value, 1e-8) << t;
  }
}

TEST(ClosedForm, StructuralIdentityEntrywise) {
  const std::int64_t t = 256;
  const auto table = dp_value(t, true);
  const auto seq = closed_form(t);
  for (std::int64_t r = 0; r <= t; ++r) {
    for (std::int64_t n1 = 0; n1 <= t - r; ++n1) {
      const std::int64_t n2 = t - r - n1;
      ASSERT_NEAR(table.at(n1, n2, r), seq.structural_value(n1, n2, r), 1e-8)
          << n1 << ',' << n2 << ',' << r;
    }
  }
}

TEST(Bounds, SandwichHolds) {
  for (std::int64_t t : {2, 10, 1000, 1000000}) {
    const auto check = check_a_bounds(t);
    EXPECT_LE(check.max_upper_violation, 1e-12) << t;
    EXPECT_LE(check.max_lower_violation, 1e-12) << t;
    EXPECT_EQ(check.value_violation, 0.0) << t;
  }
  EXPECT_DOUBLE_EQ(a_upper_bound(0, 50), 1.0 / 50);
  EXPECT_DOUBLE_EQ(closed_form(50).a[0], a_upper_bound(0, 50));
  EXPECT_THROW(check_a_bounds(1), std::out_of_range);
}

TEST(Bounds, ValueLowerBoundFormula) {
  const std::int64_t t = 1000;
  const double lt = std::log(1000.0);
  EXPECT_NEAR(check_a_bounds(t).value_lower_bound, 0.5 * std::log(1000.0 / (lt + 1.0) + 1.0),
              1e-15);
}

TEST(Growth, LogarithmicDoubling) {
  for (std::int64_t t = 64; t <= 1024; t *= 2) {
    const double gain = dp_value(2 * t).value - dp_value(t).value;
    EXPECT_GE(gain, 0.5 * std::log(2.0) - 0.1) << t;
  }
}

}  // namespace
}  // namespace ucal::minimax

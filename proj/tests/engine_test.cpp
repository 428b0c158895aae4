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
#include <cstdlib>
#include <sstream>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "ucal/engine.hpp"

namespace ucal {
namespace {

SimplexPoint point(std::vector<double> v) { return validate_simplex(v); }

TEST(RunGame, FtlAlternatingHandUnroll) {
  RngStream rng(1, 0);
  const auto tr = run_game(ForecasterSpec::ftl(), Adversary::alternating(2), 4, rng);
  ASSERT_EQ(tr.forecasts.size(), 4u);
  EXPECT_EQ(tr.forecasts[0], point({0.5, 0.5}));
  EXPECT_EQ(tr.forecasts[1], point({1.0, 0.0}));
  EXPECT_EQ(tr.forecasts[2], point({0.5, 0.5}));
  EXPECT_NEAR(tr.forecasts[3][0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(tr.forecasts[3][1], 1.0 / 3.0, 1e-15);
  EXPECT_EQ(tr.final_counts, CountVector({2, 2}));
}

TEST(RunGame, StaticAgainstFixed) {
  const auto p = point({0.3, 0.7});
  const auto adv = Adversary::fixed(2, {Outcome{0}, Outcome{1}, Outcome{1}});
  RngStream rng(1, 0);
  const auto tr = run_game(ForecasterSpec::fixed(p), adv, 3, rng);
  for (const auto& f : tr.forecasts) EXPECT_EQ(f, p);
}

TEST(RunGame, SameSeedSameTranscript) {
  RngStream a(77, 3), b(77, 3);
  const auto ta = run_game(ForecasterSpec::ftpl_geometric(), Adversary::iid_uniform(3), 200, a);
  const auto tb = run_game(ForecasterSpec::ftpl_geometric(), Adversary::iid_uniform(3), 200, b);
  EXPECT_EQ(ta.forecasts, tb.forecasts);
  EXPECT_EQ(ta.outcomes, tb.outcomes);
}

TEST(RunGame, DimensionMismatch) {
  RngStream rng(1, 0);
  EXPECT_THROW(run_game(ForecasterState::ftl(3, 5), Adversary::alternating(2), 5, rng),
               std::invalid_argument);
}

TEST(RunGame, GreedySeesOnlyEarlierForecasts) {
  // With a static forecaster the greedy adversary's choice is fixed after t = 1.
  const auto p = point({0.7, 0.3});
  RngStream rng(1, 0);
  const auto tr = run_game(ForecasterSpec::fixed(p),
                           Adversary::greedy_adaptive(ProperLoss::squared(2)), 5, rng);
  EXPECT_EQ(tr.outcomes[0], Outcome{0});
  for (int t = 1; t < 5; ++t) EXPECT_EQ(tr.outcomes[t], Outcome{1});
}

TEST(Regret, FtlAlternatingQuarterHorizon) {
  for (std::int64_t horizon : {2, 8, 100, 10000}) {
    RngStream rng(1, 0);
    const auto tr = run_game(ForecasterSpec::ftl(), Adversary::alternating(2), horizon, rng);
    const auto rec = regret(tr, ProperLoss::vshaped(2));
    EXPECT_NEAR(rec.regret, horizon / 4.0, 1e-9) << horizon;
    EXPECT_EQ(rec.regret, rec.algorithm_cost - rec.benchmark_cost);
  }
}

TEST(Regret, StaticAtMeanIsZero) {
  const auto adv = Adversary::fixed(2, {Outcome{0}, Outcome{1}, Outcome{0}, Outcome{0}});
  RngStream rng(1, 0);
  const auto tr = run_game(ForecasterSpec::fixed(point({0.75, 0.25})), adv, 4, rng);
  for (const auto& loss : testing::shipped_losses(2)) {
    EXPECT_NEAR(regret(tr, loss).regret, 0.0, 1e-12) << loss.id();
  }
}

TEST(Regret, VShapedBenchmarkCostIsHalfDeviation) {
  for (int k : {2, 3, 5}) {
    RngStream rng(4, static_cast<std::uint64_t>(k));
    const std::int64_t horizon = 1000;
    const auto tr = run_game(ForecasterSpec::ftl(), Adversary::iid_uniform(k), horizon, rng);
    const auto rec = regret(tr, ProperLoss::vshaped(k));
    double deviation = 0.0;
    for (int i = 0; i < k; ++i) {
      deviation += std::abs(static_cast<double>(tr.final_counts[i]) - horizon / static_cast<double>(k));
    }
    EXPECT_NEAR(rec.benchmark_cost, -0.5 * deviation, 1e-9) << k;
  }
}

TEST(Regret, KMismatchThrows) {
  RngStream rng(1, 0);
  const auto tr = run_game(ForecasterSpec::ftl(), Adversary::alternating(2), 4, rng);
  EXPECT_THROW(regret(tr, ProperLoss::vshaped(3)), std::invalid_argument);
}

TEST(Estimate, StaticAtMeanIsZero) {
  const auto adv = Adversary::fixed(2, {Outcome{0}, Outcome{1}});
  const auto est = estimate_calibration(ForecasterSpec::fixed(SimplexPoint::uniform(2)), adv,
                                        testing::shipped_losses(2), 2, 5, 1);
  EXPECT_NEAR(est.pucal, 0.0, 1e-9);
  EXPECT_NEAR(est.ucal, 0.0, 1e-9);
}

TEST(Estimate, SingletonFamilyPucalEqualsUcal) {
  const auto est = estimate_calibration(ForecasterSpec::ftpl_geometric(), Adversary::iid_uniform(2),
                                        {ProperLoss::vshaped(2)}, 256, 50, 3);
  EXPECT_NEAR(est.pucal, est.ucal, 1e-9);
  EXPECT_EQ(est.mean_for("vshaped"), est.pucal);
  EXPECT_THROW(est.mean_for("spherical"), std::out_of_range);
}

TEST(Estimate, ThreadCountDoesNotChangeResults) {
  const auto losses = testing::shipped_losses(3);
  const auto one = estimate_calibration(ForecasterSpec::ftpl_geometric(), Adversary::iid_uniform(3),
                                        losses, 300, 17, 9, 1);
  const auto four = estimate_calibration(ForecasterSpec::ftpl_geometric(),
                                         Adversary::iid_uniform(3), losses, 300, 17, 9, 4);
  EXPECT_EQ(one.regrets, four.regrets);
  EXPECT_EQ(one.ucal, four.ucal);
}

TEST(Estimate, RejectsEmptyFamilyAndWrongK) {
  EXPECT_THROW(estimate_calibration(ForecasterSpec::ftl(), Adversary::alternating(2), {}, 4, 1, 1),
               std::invalid_argument);
  EXPECT_THROW(estimate_calibration(ForecasterSpec::ftl(), Adversary::alternating(2),
                                    {ProperLoss::vshaped(3)}, 4, 1, 1),
               std::invalid_argument);
}

TEST(Estimate, WorkerExceptionPropagates) {
  // Fixed sequence shorter than T fails inside the workers.
  const auto adv = Adversary::fixed(2, {Outcome{0}});
  EXPECT_THROW(estimate_calibration(ForecasterSpec::ftl(), adv, {ProperLoss::vshaped(2)}, 3, 4, 1, 2),
               std::out_of_range);
}

TEST(WorkerCount, HonorsEnvironment) {
  ::setenv("UCAL_THREADS", "3", 1);
  EXPECT_EQ(worker_count(10), 3);
  EXPECT_EQ(worker_count(2), 2);
  ::unsetenv("UCAL_THREADS");
  EXPECT_GE(worker_count(10), 1);
}

TEST(MixtureSup, FtlAlternatingReachesQuarter) {
  const std::int64_t horizon = 1000;
  RngStream rng(1, 0);
  const auto tr = run_game(ForecasterSpec::ftl(), Adversary::alternating(2), horizon, rng);
  const auto res = sup_regret_mixture(tr, ProperLoss::squared(2, 0.5), ProperLoss::vshaped(2),
                                      1.0 / horizon);
  EXPECT_GE(res.grid_sup, horizon / 4.0 - 1e-9);
  EXPECT_EQ(res.best_weight, 0.0);
}

TEST(MixtureSup, GridNeverExceedsExact) {
  testing::for_all(
      40, 61,
      [](RngStream& rng) {
        const auto horizon = 1 + static_cast<std::int64_t>(rng.uniform_below(300));
        const double eps = 1.0 / (1 + static_cast<double>(rng.uniform_below(50)));
        return std::make_tuple(horizon, eps, rng.derive(1));
      },
      [](auto input, int) {
        auto& [horizon, eps, rng] = input;
        const auto tr = run_game(ForecasterSpec::ftpl_geometric(), Adversary::iid_uniform(2),
                                 horizon, rng);
        const auto a = ProperLoss::spherical(2);
        const auto b = ProperLoss::vshaped(2);
        const auto res = sup_regret_mixture(tr, a, b, eps);
        const double r1 = regret(tr, a).regret;
        const double r2 = regret(tr, b).regret;
        ASSERT_LE(res.grid_sup, res.exact_sup);
        ASSERT_LE(res.exact_sup - res.grid_sup, eps * (std::abs(r1) + std::abs(r2)) + 1e-12);
        // 0 and 1 are on the grid, so the endpoints are hit exactly.
        ASSERT_EQ(res.grid_sup, std::max(r1, r2));
      });
}

TEST(MixtureSup, IdenticalComponents) {
  RngStream rng(5, 0);
  const auto tr = run_game(ForecasterSpec::ftpl_geometric(), Adversary::iid_uniform(2), 100, rng);
  const auto loss = ProperLoss::spherical(2);
  const auto res = sup_regret_mixture(tr, loss, loss, 0.1);
  EXPECT_EQ(res.grid_sup, regret(tr, loss).regret);
  EXPECT_EQ(res.exact_sup, res.grid_sup);
}

TEST(MixtureGrid, Shape) {
  const auto grid = mixture_grid(0.25);
  EXPECT_EQ(grid, (std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}));
  EXPECT_EQ(mixture_grid(1.0), (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(mixture_grid(1e-4).size(), 10001u);
  EXPECT_THROW(mixture_grid(0.0), std::invalid_argument);
}

TEST(HighProb, Examples) {
  const std::vector<double> zeros(100, 0.0);
  const auto zero = check_high_prob_bound(zeros, 2, 1024, 0.1);
  EXPECT_EQ(zero.fraction_exceeding, 0.0);
  EXPECT_TRUE(zero.passed());
  EXPECT_NEAR(zero.allowed_fraction, 0.1 + 3.0 * std::sqrt(0.09 / 100), 1e-15);

  const auto vacuous = check_high_prob_bound(zeros, 2, 1024, 1.0);
  EXPECT_NEAR(vacuous.threshold, 4.0 * std::sqrt(2048.0), 1e-12);
  EXPECT_TRUE(vacuous.passed());

  std::vector<double> big(10, 1e9);
  EXPECT_FALSE(check_high_prob_bound(big, 2, 1024, 0.1).passed());
  EXPECT_THROW(check_high_prob_bound(zeros, 2, 1024, 0.0), std::invalid_argument);
}

TEST(BinomialMad, Examples) {
  EXPECT_NEAR(exact_binomial_mad(4, 0.5), 0.75, 1e-12);
  EXPECT_NEAR(exact_binomial_mad(1, 0.5), 0.5, 1e-12);
  EXPECT_GE(exact_binomial_mad(10000, 0.5), std::sqrt(10000.0 / 8.0));
  EXPECT_TRUE(std::isfinite(exact_binomial_mad(100000, 0.5)));
  EXPECT_THROW(exact_binomial_mad(0, 0.5), std::invalid_argument);
  EXPECT_THROW(exact_binomial_mad(4, 1.0), std::invalid_argument);
}

TEST(BinomialMad, MatchesEnumeration) {
  // Frozen from the 2^T enumeration oracle.
  const std::vector<std::pair<int, double>> frozen = {
      {1, 0.5}, {2, 0.5}, {3, 0.75}, {4, 0.75}, {5, 0.9375}, {8, 1.09375}, {12, 1.353515625}};
  for (const auto& [t, value] : frozen) {
    EXPECT_NEAR(testing::enumerated_binomial_mad(t, 0.5), value, 1e-12);
    EXPECT_NEAR(exact_binomial_mad(t, 0.5), value, 1e-12) << t;
  }
  EXPECT_NEAR(exact_binomial_mad(6, 0.3), 0.907578, 1e-12);
  for (int t = 1; t <= 16; ++t) {
    EXPECT_NEAR(exact_binomial_mad(t, 0.37), testing::enumerated_binomial_mad(t, 0.37), 1e-12);
  }
}

// The empirical mean is no worse than any fixed point.
TEST(EngineProperty, BenchmarkIsOptimal) {
  testing::for_all(
      30, 71,
      [](RngStream& rng) {
        const int k = testing::gen_k(rng);
        const auto len = 1 + static_cast<std::int64_t>(rng.uniform_below(200));
        return std::make_tuple(k, testing::gen_outcomes(k, len, rng), rng.derive(2));
      },
      [](auto input, int) {
        auto& [k, seq, rng] = input;
        CountVector counts(k);
        for (Outcome y : seq) counts.add(y);
        const auto beta = mean_of_counts(counts);
        for (const auto& loss : testing::shipped_losses(k)) {
          const double best = fixed_point_cost(counts, loss, beta);
          for (int i = 0; i < 1000; ++i) {
            const auto p = sample_simplex(k, rng);
            ASSERT_LE(best, fixed_point_cost(counts, loss, p) + 1e-9) << loss.id();
          }
        }
      });
}

TEST(EngineProperty, PucalAtMostUcal) {
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto est = estimate_calibration(ForecasterSpec::ftpl_geometric(),
                                          Adversary::iid_uniform(3), testing::shipped_losses(3),
                                          200, 40, seed);
    EXPECT_LE(est.pucal, est.ucal + 3.0 * est.std_error);
  }
}

TEST(Csv, FormatAndQuoting) {
  EXPECT_EQ(format_real(2500.0), "2500");
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");

  std::ostringstream out;
  write_regret_csv(out, {{"e", "ftl", "alternating", "mixture(0.5,a,b)", 2, 8, 0, 1, 2.0}});
  EXPECT_EQ(out.str(),
            "experiment,forecaster,adversary,loss,K,T,trial,seed,regret\n"
            "e,ftl,alternating,\"mixture(0.5,a,b)\",2,8,0,1,2\n");
}

}  // namespace
}  // namespace ucal

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

#ifndef UCAL_ENGINE_HPP_
#define UCAL_ENGINE_HPP_

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "ucal/adversaries.hpp"
#include "ucal/forecasters.hpp"
#include "ucal/losses.hpp"
#include "ucal/rng.hpp"
#include "ucal/simplex.hpp"

namespace ucal {

// Record of one game: forecast p_t and outcome y_t for t = 1..T.
struct Transcript {
  int num_outcomes = 0;
  std::int64_t horizon = 0;
  std::vector<SimplexPoint> forecasts;
  std::vector<Outcome> outcomes;
  CountVector final_counts{2};
};

// Plays T rounds. Each round the forecaster predicts before the adversary's
// outcome is revealed to it. The forecaster draws from `rng`; the adversary
// draws from an independent stream derived from it, so an oblivious
// adversary's sequence does not depend on the forecaster.
Transcript run_game(ForecasterState forecaster, const Adversary& adversary,
                    std::int64_t horizon, RngStream& rng);
Transcript run_game(const ForecasterSpec& spec, const Adversary& adversary,
                    std::int64_t horizon, RngStream& rng);

struct RegretRecord {
  std::string loss_id;
  double algorithm_cost = 0.0;
  double benchmark_cost = 0.0;
  double regret = 0.0;  // algorithm_cost − benchmark_cost
};

// Σ_t ℓ(p_t, y_t) − Σ_t ℓ(β, y_t) with β the empirical mean of the outcomes,
// which minimizes the second sum for every proper loss.
RegretRecord regret(const Transcript& transcript, const ProperLoss& loss);

// Σ_t ℓ(p, y_t) for a fixed forecast p, i.e. Σ_i n_i ℓ(p, e_i).
double fixed_point_cost(const CountVector& counts, const ProperLoss& loss,
                        const SimplexPoint& p);

// Worker count for trial fan-out: UCAL_THREADS if set (>= 1), otherwise the
// hardware concurrency, capped by the number of trials.
int worker_count(int trials);

// Runs `trials` independent games, trial i on RngStream(base_seed, i), and
// applies `metric` to each transcript. Results are indexed by trial, so the
// output does not depend on scheduling. `threads` <= 0 means worker_count().
std::vector<std::vector<double>> run_trials(
    const ForecasterSpec& spec, const Adversary& adversary, std::int64_t horizon,
    int trials, std::uint64_t base_seed,
    const std::function<std::vector<double>(const Transcript&)>& metric,
    int threads = 0);

struct CalibrationEstimate {
  // max over losses of the mean regret.
  double pucal = 0.0;
  // mean over trials of the max regret.
  double ucal = 0.0;
  // standard error of the per-trial sup values.
  double std_error = 0.0;
  std::size_t pucal_loss = 0;
  double pucal_std_error = 0.0;
  int trials = 0;
  std::vector<std::string> loss_ids;
  std::vector<double> per_loss_mean;
  std::vector<double> per_loss_std_error;
  // regrets[trial][loss]
  std::vector<std::vector<double>> regrets;

  double mean_for(const std::string& loss_id) const;
};

// Monte-Carlo PUCal / UCal over an explicit finite loss family.
CalibrationEstimate estimate_calibration(const ForecasterSpec& spec,
                                         const Adversary& adversary,
                                         const std::vector<ProperLoss>& losses,
                                         std::int64_t horizon, int trials,
                                         std::uint64_t base_seed, int threads = 0);

struct MixtureSupRegret {
  double grid_sup = 0.0;
  double exact_sup = 0.0;
  double best_weight = 0.0;
  std::size_t grid_size = 0;
};

// Weights 𝒞 = {0, ε, 2ε, …} ∪ {1}. Regret is affine in the weight, so each
// grid value is w·Reg_1 + (1 − w)·Reg_2 and the exact sup over [0, 1] is
// max(Reg_1, Reg_2).
std::vector<double> mixture_grid(double eps);
MixtureSupRegret sup_regret_mixture(const Transcript& transcript, const ProperLoss& first,
                                    const ProperLoss& second, double eps);

struct HighProbCheck {
  double threshold = 0.0;          // 4√(KT) + √(2T ln(1/δ))
  double fraction_exceeding = 0.0;
  double allowed_fraction = 0.0;   // δ + 3√(δ(1−δ)/n)
  bool passed() const { return fraction_exceeding <= allowed_fraction; }
};

HighProbCheck check_high_prob_bound(std::span<const double> regrets, int num_outcomes,
                                    std::int64_t horizon, double delta);

// E|Bin(T, p) − Tp| summed exactly over the pmf (log-space weights).
double exact_binomial_mad(std::int64_t trials, double p);

// --- CSV -------------------------------------------------------------------

struct RegretRow {
  std::string experiment;
  std::string forecaster;
  std::string adversary;
  std::string loss;
  int num_outcomes = 0;
  std::int64_t horizon = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  double regret = 0.0;
};

inline constexpr const char* kRegretCsvHeader =
    "experiment,forecaster,adversary,loss,K,T,trial,seed,regret";

// 12 significant digits, no trailing zeros.
std::string format_real(double x);
// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);
void write_regret_csv(std::ostream& out, const std::vector<RegretRow>& rows,
                      bool include_header = true);

}  // namespace ucal

#endif  // UCAL_ENGINE_HPP_

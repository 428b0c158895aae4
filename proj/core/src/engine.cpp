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

#include "ucal/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace ucal {
namespace {

constexpr std::uint64_t kAdversarySalt = 0xAD7E45A2ULL;

double mean(std::span<const double> xs) {
  double s = 0.0;
  for (double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

double standard_error(std::span<const double> xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
}

}  // namespace

Transcript run_game(ForecasterState forecaster, const Adversary& adversary,
                    std::int64_t horizon, RngStream& rng) {
  if (forecaster.num_outcomes() != adversary.num_outcomes()) {
    throw std::invalid_argument("dimension mismatch: forecaster K = " +
                                std::to_string(forecaster.num_outcomes()) +
                                ", adversary K = " +
                                std::to_string(adversary.num_outcomes()));
  }
  if (horizon < 1) throw std::invalid_argument("run_game needs T >= 1");

  RngStream adversary_rng = rng.derive(kAdversarySalt);
  Transcript tr;
  tr.num_outcomes = forecaster.num_outcomes();
  tr.horizon = horizon;
  tr.forecasts.reserve(horizon);
  tr.outcomes.reserve(horizon);
  for (std::int64_t t = 1; t <= horizon; ++t) {
    tr.forecasts.push_back(forecaster.predict(rng));
    // The adversary sees p_1..p_{t−1} only.
    const std::span<const SimplexPoint> past(tr.forecasts.data(), tr.forecasts.size() - 1);
    const Outcome y = adversary.next_outcome(t, past, adversary_rng);
    tr.outcomes.push_back(y);
    forecaster.observe(y);
  }
  tr.final_counts = CountVector(tr.num_outcomes);
  for (Outcome y : tr.outcomes) tr.final_counts.add(y);
  return tr;
}

Transcript run_game(const ForecasterSpec& spec, const Adversary& adversary,
                    std::int64_t horizon, RngStream& rng) {
  return run_game(ForecasterState(spec, adversary.num_outcomes(), horizon), adversary,
                  horizon, rng);
}

double fixed_point_cost(const CountVector& counts, const ProperLoss& loss,
                        const SimplexPoint& p) {
  const auto values = loss.bivariate_all(p);
  double cost = 0.0;
  for (int i = 0; i < counts.num_outcomes(); ++i) {
    if (counts[i] != 0) cost += static_cast<double>(counts[i]) * values[i];
  }
  return cost;
}

RegretRecord regret(const Transcript& transcript, const ProperLoss& loss) {
  if (loss.num_outcomes() != transcript.num_outcomes) {
    throw std::invalid_argument("loss and transcript disagree on K");
  }
  RegretRecord record;
  record.loss_id = loss.id();
  for (std::size_t t = 0; t < transcript.outcomes.size(); ++t) {
    record.algorithm_cost += loss.bivariate(transcript.forecasts[t], transcript.outcomes[t]);
  }
  const SimplexPoint benchmark = mean_of_counts(transcript.final_counts);
  record.benchmark_cost = fixed_point_cost(transcript.final_counts, loss, benchmark);
  record.regret = record.algorithm_cost - record.benchmark_cost;
  return record;
}

int worker_count(int trials) {
  int workers = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("UCAL_THREADS")) {
    const int requested = std::atoi(env);
    if (requested >= 1) workers = requested;
  }
  workers = std::max(workers, 1);
  return std::max(1, std::min(workers, trials));
}

std::vector<std::vector<double>> run_trials(
    const ForecasterSpec& spec, const Adversary& adversary, std::int64_t horizon,
    int trials, std::uint64_t base_seed,
    const std::function<std::vector<double>(const Transcript&)>& metric, int threads) {
  if (trials < 1) throw std::invalid_argument("need at least one trial");
  // Validate the configuration once on the calling thread.
  ForecasterState probe(spec, adversary.num_outcomes(), horizon);
  (void)probe;

  std::vector<std::vector<double>> results(trials);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (int i = next++; i < trials; i = next++) {
      try {
        RngStream rng(base_seed, static_cast<std::uint64_t>(i));
        results[i] = metric(run_game(spec, adversary, horizon, rng));
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = trials;
      }
    }
  };

  const int workers = threads > 0 ? std::min(threads, trials) : worker_count(trials);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

double CalibrationEstimate::mean_for(const std::string& loss_id) const {
  for (std::size_t j = 0; j < loss_ids.size(); ++j) {
    if (loss_ids[j] == loss_id) return per_loss_mean[j];
  }
  throw std::out_of_range("no loss '" + loss_id + "' in estimate");
}

CalibrationEstimate estimate_calibration(const ForecasterSpec& spec,
                                         const Adversary& adversary,
                                         const std::vector<ProperLoss>& losses,
                                         std::int64_t horizon, int trials,
                                         std::uint64_t base_seed, int threads) {
  if (losses.empty()) throw std::invalid_argument("loss family is empty");
  for (const auto& loss : losses) {
    if (loss.num_outcomes() != adversary.num_outcomes()) {
      throw std::invalid_argument("loss '" + loss.id() + "' has the wrong K");
    }
  }
  CalibrationEstimate est;
  est.trials = trials;
  for (const auto& loss : losses) est.loss_ids.push_back(loss.id());
  est.regrets = run_trials(
      spec, adversary, horizon, trials, base_seed,
      [&losses](const Transcript& tr) {
        std::vector<double> row;
        row.reserve(losses.size());
        for (const auto& loss : losses) row.push_back(regret(tr, loss).regret);
        return row;
      },
      threads);

  const std::size_t n_losses = losses.size();
  std::vector<double> sups(trials);
  std::vector<std::vector<double>> columns(n_losses, std::vector<double>(trials));
  for (int i = 0; i < trials; ++i) {
    const auto& row = est.regrets[i];
    sups[i] = *std::max_element(row.begin(), row.end());
    for (std::size_t j = 0; j < n_losses; ++j) columns[j][i] = row[j];
  }
  est.ucal = mean(sups);
  est.std_error = standard_error(sups);
  for (std::size_t j = 0; j < n_losses; ++j) {
    est.per_loss_mean.push_back(mean(columns[j]));
    est.per_loss_std_error.push_back(standard_error(columns[j]));
  }
  est.pucal_loss = static_cast<std::size_t>(
      std::max_element(est.per_loss_mean.begin(), est.per_loss_mean.end()) -
      est.per_loss_mean.begin());
  est.pucal = est.per_loss_mean[est.pucal_loss];
  est.pucal_std_error = est.per_loss_std_error[est.pucal_loss];
  return est;
}

std::vector<double> mixture_grid(double eps) {
  if (!(eps > 0.0 && eps <= 1.0)) throw std::invalid_argument("eps must lie in (0, 1]");
  std::vector<double> grid;
  for (std::int64_t k = 0;; ++k) {
    const double w = static_cast<double>(k) * eps;
    if (w >= 1.0 - 1e-12) break;
    grid.push_back(w);
  }
  grid.push_back(1.0);
  return grid;
}

MixtureSupRegret sup_regret_mixture(const Transcript& transcript, const ProperLoss& first,
                                    const ProperLoss& second, double eps) {
  const auto grid = mixture_grid(eps);
  const double r1 = regret(transcript, first).regret;
  const double r2 = regret(transcript, second).regret;
  const double lo = std::min(r1, r2);
  const double hi = std::max(r1, r2);

  MixtureSupRegret out;
  out.exact_sup = hi;
  out.grid_size = grid.size();
  out.grid_sup = -std::numeric_limits<double>::infinity();
  for (double w : grid) {
    double value;
    if (w == 0.0) {
      value = r2;
    } else if (w == 1.0) {
      value = r1;
    } else {
      // Affine in w; the clamp only absorbs rounding.
      value = std::clamp(w * r1 + (1.0 - w) * r2, lo, hi);
    }
    if (value > out.grid_sup) {
      out.grid_sup = value;
      out.best_weight = w;
    }
  }
  return out;
}

HighProbCheck check_high_prob_bound(std::span<const double> regrets, int num_outcomes,
                                    std::int64_t horizon, double delta) {
  if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0, 1]");
  const double kt = static_cast<double>(num_outcomes) * static_cast<double>(horizon);
  HighProbCheck check;
  check.threshold = 4.0 * std::sqrt(kt) +
                    std::sqrt(2.0 * static_cast<double>(horizon) * std::log(1.0 / delta));
  if (!regrets.empty()) {
    const auto exceeding =
        std::count_if(regrets.begin(), regrets.end(),
                      [&](double r) { return r > check.threshold; });
    check.fraction_exceeding =
        static_cast<double>(exceeding) / static_cast<double>(regrets.size());
    check.allowed_fraction =
        delta + 3.0 * std::sqrt(delta * (1.0 - delta) / static_cast<double>(regrets.size()));
  } else {
    check.allowed_fraction = delta;
  }
  return check;
}

double exact_binomial_mad(std::int64_t trials, double p) {
  if (trials < 1) throw std::invalid_argument("exact_binomial_mad needs T >= 1");
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("p must lie in (0, 1)");
  const double n = static_cast<double>(trials);
  const double mean_count = n * p;
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double log_n_fact = std::lgamma(n + 1.0);
  double total = 0.0;
  for (std::int64_t k = 0; k <= trials; ++k) {
    const double kd = static_cast<double>(k);
    const double log_pmf = log_n_fact - std::lgamma(kd + 1.0) - std::lgamma(n - kd + 1.0) +
                           kd * log_p + (n - kd) * log_q;
    total += std::exp(log_pmf) * std::abs(kd - mean_count);
  }
  return total;
}

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_regret_csv(std::ostream& out, const std::vector<RegretRow>& rows,
                      bool include_header) {
  if (include_header) out << kRegretCsvHeader << '\n';
  for (const auto& row : rows) {
    out << csv_field(row.experiment) << ',' << csv_field(row.forecaster) << ','
        << csv_field(row.adversary) << ',' << csv_field(row.loss) << ','
        << row.num_outcomes << ',' << row.horizon << ',' << row.trial << ','
        << row.seed << ',' << format_real(row.regret) << '\n';
  }
}

}  // namespace ucal

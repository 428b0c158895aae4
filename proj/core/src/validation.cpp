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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ucal/losses.hpp"

namespace ucal {
namespace {

double expected_loss(std::span<const double> weights, const std::vector<double>& values) {
  return dot(weights, values);
}

void enumerate_compositions(int remaining, int slots, std::vector<int>& current,
                            int resolution, std::vector<SimplexPoint>& out) {
  if (slots == 1) {
    current.push_back(remaining);
    std::vector<double> probs(current.size());
    for (std::size_t i = 0; i < current.size(); ++i) {
      probs[i] = static_cast<double>(current[i]) / resolution;
    }
    out.push_back(unchecked_simplex(std::move(probs)));
    current.pop_back();
    return;
  }
  for (int take = 0; take <= remaining; ++take) {
    current.push_back(take);
    enumerate_compositions(remaining - take, slots - 1, current, resolution, out);
    current.pop_back();
  }
}

}  // namespace

LossValidationReport check_proper(const ProperLoss& loss,
                                  const std::vector<PointPair>& pairs, double tol) {
  LossValidationReport report;
  report.range_min = std::numeric_limits<double>::infinity();
  report.range_max = -std::numeric_limits<double>::infinity();
  for (const auto& [p, q] : pairs) {
    const auto at_p = loss.bivariate_all(p);
    const auto at_q = loss.bivariate_all(q);
    const double truthful = expected_loss(p.probs(), at_p);
    const double misreport = expected_loss(p.probs(), at_q);
    const double excess = truthful - misreport;
    if (excess > tol) ++report.properness_violations;
    report.max_violation = std::max(report.max_violation, excess);
    for (const auto* values : {&at_p, &at_q}) {
      const auto [lo, hi] = std::minmax_element(values->begin(), values->end());
      report.range_min = std::min(report.range_min, *lo);
      report.range_max = std::max(report.range_max, *hi);
    }
    ++report.pairs_checked;
  }
  if (pairs.empty()) report.range_min = report.range_max = 0.0;
  return report;
}

std::int64_t check_concavity(const ProperLoss& loss,
                             const std::vector<PointPair>& pairs, double tol) {
  std::int64_t violations = 0;
  for (const auto& [p, q] : pairs) {
    std::vector<double> mid(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) mid[i] = 0.5 * (p[i] + q[i]);
    const double f_mid = loss.univariate(unchecked_simplex(std::move(mid)));
    const double chord = 0.5 * (loss.univariate(p) + loss.univariate(q));
    if (f_mid < chord - tol) ++violations;
  }
  return violations;
}

RangeReport bivariate_range(const ProperLoss& loss,
                            const std::vector<SimplexPoint>& points) {
  RangeReport range{std::numeric_limits<double>::infinity(),
                    -std::numeric_limits<double>::infinity()};
  for (const auto& p : points) {
    for (double v : loss.bivariate_all(p)) {
      range.min = std::min(range.min, v);
      range.max = std::max(range.max, v);
    }
  }
  if (points.empty()) range = {};
  return range;
}

bool check_hessian_growth(const ProperLoss& loss, const std::vector<double>& grid,
                          double c) {
  if (loss.kind() != LossKind::kTsallis) {
    throw std::invalid_argument("Hessian-growth check applies to Tsallis losses");
  }
  const double alpha = loss.alpha();
  for (double p : grid) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("boundary point");
  }
  for (double p : grid) {
    const double second_derivative = alpha * (alpha - 1.0) * std::pow(p, alpha - 2.0);
    const double bound = c * std::max(1.0 / p, 1.0 / (1.0 - p));
    if (second_derivative > bound) return false;
  }
  return true;
}

double lipschitz_ratio(const ProperLoss& loss, const SimplexPoint& p,
                       const SimplexPoint& q) {
  const double distance = l2_distance(p.probs(), q.probs());
  if (distance == 0.0) return 0.0;
  const auto at_p = loss.bivariate_all(p);
  const auto at_q = loss.bivariate_all(q);
  double worst = 0.0;
  for (std::size_t i = 0; i < at_p.size(); ++i) {
    worst = std::max(worst, std::abs(at_p[i] - at_q[i]));
  }
  return worst / distance;
}

double estimate_lipschitz(const ProperLoss& loss, int samples, RngStream& rng) {
  if (samples < 1) throw std::invalid_argument("estimate_lipschitz needs samples >= 1");
  const int k = loss.num_outcomes();
  double estimate = 0.0;
  for (int s = 0; s < samples; ++s) {
    const SimplexPoint p = sample_simplex(k, rng);
    const SimplexPoint r = sample_simplex(k, rng);
    if (s % 2 == 0) {
      estimate = std::max(estimate, lipschitz_ratio(loss, p, r));
      continue;
    }
    const double step = std::pow(10.0, -6.0 * (1.0 - rng.uniform_open_closed()));
    std::vector<double> q(k);
    for (int i = 0; i < k; ++i) q[i] = (1.0 - step) * p[i] + step * r[i];
    estimate = std::max(estimate, lipschitz_ratio(loss, p, unchecked_simplex(std::move(q))));
  }
  return estimate;
}

std::vector<SimplexPoint> simplex_mesh(int num_outcomes, int resolution) {
  if (num_outcomes < 1 || resolution < 1) {
    throw std::invalid_argument("simplex_mesh needs K >= 1 and resolution >= 1");
  }
  std::vector<SimplexPoint> out;
  std::vector<int> current;
  enumerate_compositions(resolution, num_outcomes, current, resolution, out);
  return out;
}

std::vector<SimplexPoint> validation_points(int num_outcomes, int resolution,
                                            int random_points, RngStream& rng) {
  std::vector<SimplexPoint> points;
  if (num_outcomes <= 3) points = simplex_mesh(num_outcomes, resolution);
  points.reserve(points.size() + random_points);
  for (int i = 0; i < random_points; ++i) {
    points.push_back(sample_simplex(num_outcomes, rng));
  }
  return points;
}

std::vector<PointPair> random_pairs(int num_outcomes, int count, RngStream& rng) {
  std::vector<PointPair> pairs;
  pairs.reserve(count);
  for (int i = 0; i < count; ++i) {
    SimplexPoint p = sample_simplex(num_outcomes, rng);
    SimplexPoint q = sample_simplex(num_outcomes, rng);
    pairs.emplace_back(std::move(p), std::move(q));
  }
  return pairs;
}

ValidationSuiteResult run_validation_suite(const ProperLoss& loss,
                                           const ValidationSuiteOptions& options) {
  RngStream rng(options.seed, 0);
  const int k = loss.num_outcomes();
  ValidationSuiteResult result;

  const auto pairs = random_pairs(k, options.pairs, rng);
  result.report = check_proper(loss, pairs, options.tol);
  result.report.concavity_violations = check_concavity(loss, pairs, options.tol);

  const auto points =
      validation_points(k, options.mesh_resolution, options.random_points, rng);
  const RangeReport range = bivariate_range(loss, points);
  result.report.range_min = std::min(result.report.range_min, range.min);
  result.report.range_max = std::max(result.report.range_max, range.max);

  RngStream lipschitz_rng = rng.derive(1);
  result.report.lipschitz_estimate =
      estimate_lipschitz(loss, options.lipschitz_samples, lipschitz_rng);

  result.proper = result.report.properness_violations == 0;
  result.concave = result.report.concavity_violations == 0;
  if (loss.nominally_in_unit_range()) {
    result.bounded = result.report.range_min >= -1.0 - options.tol &&
                     result.report.range_max <= 1.0 + options.tol;
  } else if (loss.kind() == LossKind::kSquared) {
    // Unscaled squared loss lives on [0, 2·scale].
    result.bounded = result.report.range_min >= -options.tol &&
                     result.report.range_max <= 2.0 * loss.scale() + options.tol;
  } else {
    result.bounded = std::abs(result.report.range_min) <= 2.0 + options.tol &&
                     std::abs(result.report.range_max) <= 2.0 + options.tol;
  }
  if (loss.kind() == LossKind::kTsallis) {
    std::vector<double> grid;
    for (int i = 1; i <= 999; ++i) grid.push_back(i / 1000.0);
    const double alpha = loss.alpha();
    result.hessian_growth = check_hessian_growth(loss, grid, alpha * (alpha - 1.0));
  }
  return result;
}

}  // namespace ucal

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

#ifndef UCAL_LOSSES_HPP_
#define UCAL_LOSSES_HPP_

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ucal/rng.hpp"
#include "ucal/simplex.hpp"

namespace ucal {

enum class LossKind { kSquared, kSpherical, kVShaped, kTsallis, kMixture, kCustom };

// A loss on Δ_K × {e_1..e_K} built from a concave univariate form f and a
// subgradient rule g:
//
//   ℓ(p, e_y) = f(p) + <g_p, e_y − p>
//
// which is proper whenever f is concave. Concrete families:
//
//   Squared(s)   f(p) = s·(1 − ‖p‖²),          ℓ(p, y) = s·‖p − y‖²
//   Spherical    f(p) = −‖p‖,                  ℓ(p, y) = −p_y / ‖p‖
//   VShaped      f(p) = −½ Σ_i |p_i − 1/K|,    g_i = −½·sign(p_i − 1/K)
//   Tsallis(α)   f(p) = −c Σ_i p_i^α,          c defaults to 1/α
//   Mixture      w·ℓ_1 + (1 − w)·ℓ_2
//
// Values are immutable and cheap to copy (mixture children are shared).
class ProperLoss {
 public:
  using UnivariateFn = std::function<double(const SimplexPoint&)>;
  using SubgradientFn = std::function<std::vector<double>(const SimplexPoint&)>;

  // scale 1 gives ‖p − y‖² (range [0, 2]); scale ½ gives the Brier form.
  static ProperLoss squared(int num_outcomes, double scale = 1.0);
  static ProperLoss spherical(int num_outcomes);
  static ProperLoss vshaped(int num_outcomes);
  // Requires alpha > 1. scale <= 0 selects the default 1/alpha, which keeps
  // the bivariate form inside [−1, 1].
  static ProperLoss tsallis(int num_outcomes, double alpha, double scale = 0.0);
  static ProperLoss mixture(const ProperLoss& first, const ProperLoss& second,
                            double weight);
  // Arbitrary univariate form; nothing checks concavity here (see
  // check_concavity / check_proper).
  static ProperLoss custom(int num_outcomes, std::string name,
                           UnivariateFn univariate, SubgradientFn subgradient);

  LossKind kind() const { return kind_; }
  int num_outcomes() const { return num_outcomes_; }
  // Stable identifier used in CSV output, e.g. "tsallis(1.5)".
  const std::string& id() const { return id_; }

  // Scale for Squared/Tsallis, unused otherwise.
  double scale() const { return scale_; }
  // Tsallis exponent, or the mixture weight on the first component.
  double alpha() const { return alpha_; }
  const ProperLoss* first() const { return first_.get(); }
  const ProperLoss* second() const { return second_.get(); }

  // False for Squared with scale > ½, whose values reach 2·scale.
  bool nominally_in_unit_range() const;

  double univariate(const SimplexPoint& p) const;
  std::vector<double> subgradient(const SimplexPoint& p) const;
  double bivariate(const SimplexPoint& p, Outcome y) const;
  // ℓ(p, e_i) for every i, sharing the f(p) and <g, p> terms.
  std::vector<double> bivariate_all(const SimplexPoint& p) const;

 private:
  ProperLoss() = default;
  void check_point(const SimplexPoint& p) const;

  LossKind kind_ = LossKind::kSquared;
  int num_outcomes_ = 0;
  std::string id_;
  double scale_ = 1.0;
  double alpha_ = 0.0;
  std::shared_ptr<const ProperLoss> first_;
  std::shared_ptr<const ProperLoss> second_;
  std::shared_ptr<const UnivariateFn> custom_univariate_;
  std::shared_ptr<const SubgradientFn> custom_subgradient_;
};

// sign(0) = 0.
inline double sign(double x) { return (x > 0.0) - (x < 0.0); }

// ---------------------------------------------------------------------------
// Numerical validators. Violations are data, not exceptions.

struct LossValidationReport {
  std::int64_t pairs_checked = 0;
  std::int64_t properness_violations = 0;
  // Largest amount by which E_{y~p} ℓ(p, y) exceeded E_{y~p} ℓ(p', y).
  double max_violation = 0.0;
  std::int64_t concavity_violations = 0;
  double range_min = 0.0;
  double range_max = 0.0;
  double lipschitz_estimate = 0.0;
};

using PointPair = std::pair<SimplexPoint, SimplexPoint>;

// Counts pairs where Σ_i p_i ℓ(p, e_i) > Σ_i p_i ℓ(p', e_i) + tol. Also
// records the range of ℓ(p, e_i) over every first point.
LossValidationReport check_proper(const ProperLoss& loss,
                                  const std::vector<PointPair>& pairs,
                                  double tol);

// Midpoint concavity of the univariate form on the given pairs.
std::int64_t check_concavity(const ProperLoss& loss,
                             const std::vector<PointPair>& pairs, double tol);

struct RangeReport {
  double min = 0.0;
  double max = 0.0;
};
RangeReport bivariate_range(const ProperLoss& loss,
                            const std::vector<SimplexPoint>& points);

// True iff α(α−1)·p^{α−2} <= c·max(1/p, 1/(1−p)) at every grid point, i.e.
// the per-coordinate second derivative of −p^α obeys the Hessian-growth
// condition. Requires a Tsallis loss with α in (1, 2]; grid points must lie
// strictly inside (0, 1) or std::domain_error("boundary point") is thrown.
bool check_hessian_growth(const ProperLoss& loss, const std::vector<double>& grid,
                          double c);

// |ℓ(p, y) − ℓ(p', y)| / ‖p − p'‖ maximized over y; 0 when p == p'.
double lipschitz_ratio(const ProperLoss& loss, const SimplexPoint& p,
                       const SimplexPoint& q);

// Lower estimate of the Lipschitz constant from `samples` random pairs. Half
// the pairs are independent uniform points, half are local perturbations at
// log-uniform scales down to 1e-6, which is what exposes discontinuities.
double estimate_lipschitz(const ProperLoss& loss, int samples, RngStream& rng);

// Validation points: for K <= 3 a uniform mesh of step 1/resolution plus
// `random_points` uniform draws; for K > 3 the random draws only.
std::vector<SimplexPoint> validation_points(int num_outcomes, int resolution,
                                            int random_points, RngStream& rng);

std::vector<SimplexPoint> simplex_mesh(int num_outcomes, int resolution);

std::vector<PointPair> random_pairs(int num_outcomes, int count, RngStream& rng);

// The properness / concavity / boundedness / Lipschitz / Hessian-growth suite
// the `validate` subcommand runs.
struct ValidationSuiteOptions {
  int pairs = 10000;
  int mesh_resolution = 50;
  int random_points = 10000;
  int lipschitz_samples = 20000;
  double tol = 1e-9;
  std::uint64_t seed = 1;
};

struct ValidationSuiteResult {
  LossValidationReport report;
  bool proper = false;
  bool concave = false;
  // |ℓ| <= 1 + tol, or within [0, 2·scale] for an unscaled squared loss.
  bool bounded = false;
  // Only meaningful for Tsallis; true otherwise.
  bool hessian_growth = true;
  bool passed() const { return proper && concave && bounded && hessian_growth; }
};

ValidationSuiteResult run_validation_suite(const ProperLoss& loss,
                                           const ValidationSuiteOptions& options);

}  // namespace ucal

#endif  // UCAL_LOSSES_HPP_

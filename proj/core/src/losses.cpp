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

#include "ucal/losses.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ucal {
namespace {

std::string format_param(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

void require_outcomes(int num_outcomes) {
  if (num_outcomes < 2) {
    throw std::invalid_argument("losses need at least K = 2 outcomes");
  }
}

}  // namespace

ProperLoss ProperLoss::squared(int num_outcomes, double scale) {
  require_outcomes(num_outcomes);
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("squared loss scale must be positive");
  }
  ProperLoss loss;
  loss.kind_ = LossKind::kSquared;
  loss.num_outcomes_ = num_outcomes;
  loss.scale_ = scale;
  loss.id_ = scale == 1.0 ? "squared" : "squared(" + format_param(scale) + ")";
  return loss;
}

ProperLoss ProperLoss::spherical(int num_outcomes) {
  require_outcomes(num_outcomes);
  ProperLoss loss;
  loss.kind_ = LossKind::kSpherical;
  loss.num_outcomes_ = num_outcomes;
  loss.id_ = "spherical";
  return loss;
}

ProperLoss ProperLoss::vshaped(int num_outcomes) {
  require_outcomes(num_outcomes);
  ProperLoss loss;
  loss.kind_ = LossKind::kVShaped;
  loss.num_outcomes_ = num_outcomes;
  loss.id_ = "vshaped";
  return loss;
}

ProperLoss ProperLoss::tsallis(int num_outcomes, double alpha, double scale) {
  require_outcomes(num_outcomes);
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("tsallis exponent alpha must exceed 1, got " +
                                format_param(alpha));
  }
  ProperLoss loss;
  loss.kind_ = LossKind::kTsallis;
  loss.num_outcomes_ = num_outcomes;
  loss.alpha_ = alpha;
  loss.scale_ = scale > 0.0 ? scale : 1.0 / alpha;
  loss.id_ = "tsallis(" + format_param(alpha) + ")";
  if (scale > 0.0) loss.id_ += "*" + format_param(scale);
  return loss;
}

ProperLoss ProperLoss::mixture(const ProperLoss& first, const ProperLoss& second,
                               double weight) {
  if (first.num_outcomes() != second.num_outcomes()) {
    throw std::invalid_argument("mixture components disagree on K");
  }
  if (!(weight >= 0.0 && weight <= 1.0)) {
    throw std::invalid_argument("mixture weight must lie in [0, 1]");
  }
  ProperLoss loss;
  loss.kind_ = LossKind::kMixture;
  loss.num_outcomes_ = first.num_outcomes();
  loss.alpha_ = weight;
  loss.first_ = std::make_shared<const ProperLoss>(first);
  loss.second_ = std::make_shared<const ProperLoss>(second);
  loss.id_ = "mixture(" + format_param(weight) + "," + first.id() + "," +
             second.id() + ")";
  return loss;
}

ProperLoss ProperLoss::custom(int num_outcomes, std::string name,
                              UnivariateFn univariate, SubgradientFn subgradient) {
  require_outcomes(num_outcomes);
  if (!univariate || !subgradient) {
    throw std::invalid_argument("custom loss needs both rules");
  }
  ProperLoss loss;
  loss.kind_ = LossKind::kCustom;
  loss.num_outcomes_ = num_outcomes;
  loss.id_ = std::move(name);
  loss.custom_univariate_ = std::make_shared<const UnivariateFn>(std::move(univariate));
  loss.custom_subgradient_ =
      std::make_shared<const SubgradientFn>(std::move(subgradient));
  return loss;
}

bool ProperLoss::nominally_in_unit_range() const {
  switch (kind_) {
    case LossKind::kSquared:
      return scale_ <= 0.5;
    case LossKind::kMixture:
      return first_->nominally_in_unit_range() && second_->nominally_in_unit_range();
    case LossKind::kTsallis:
      return scale_ <= 1.0 / alpha_;
    default:
      return true;
  }
}

void ProperLoss::check_point(const SimplexPoint& p) const {
  if (p.num_outcomes() != num_outcomes_) {
    throw std::invalid_argument("point has " + std::to_string(p.num_outcomes()) +
                                " entries, loss expects K = " +
                                std::to_string(num_outcomes_));
  }
}

double ProperLoss::univariate(const SimplexPoint& p) const {
  check_point(p);
  const int k = num_outcomes_;
  switch (kind_) {
    case LossKind::kSquared: {
      const auto probs = p.probs();
      return scale_ * (1.0 - dot(probs, probs));
    }
    case LossKind::kSpherical:
      return -l2_norm(p.probs());
    case LossKind::kVShaped: {
      const double center = 1.0 / k;
      double s = 0.0;
      for (int i = 0; i < k; ++i) s += std::abs(p[i] - center);
      return -0.5 * s;
    }
    case LossKind::kTsallis: {
      double s = 0.0;
      for (int i = 0; i < k; ++i) s += std::pow(p[i], alpha_);
      return -scale_ * s;
    }
    case LossKind::kMixture:
      return alpha_ * first_->univariate(p) + (1.0 - alpha_) * second_->univariate(p);
    case LossKind::kCustom:
      return (*custom_univariate_)(p);
  }
  return 0.0;
}

std::vector<double> ProperLoss::subgradient(const SimplexPoint& p) const {
  check_point(p);
  const int k = num_outcomes_;
  std::vector<double> g(k);
  switch (kind_) {
    case LossKind::kSquared:
      for (int i = 0; i < k; ++i) g[i] = -2.0 * scale_ * p[i];
      break;
    case LossKind::kSpherical: {
      // ‖p‖ >= 1/√K on the simplex.
      const double norm = l2_norm(p.probs());
      for (int i = 0; i < k; ++i) g[i] = -p[i] / norm;
      break;
    }
    case LossKind::kVShaped: {
      const double center = 1.0 / k;
      for (int i = 0; i < k; ++i) g[i] = -0.5 * sign(p[i] - center);
      break;
    }
    case LossKind::kTsallis:
      for (int i = 0; i < k; ++i) {
        g[i] = -scale_ * alpha_ * std::pow(p[i], alpha_ - 1.0);
      }
      break;
    case LossKind::kMixture: {
      const auto g1 = first_->subgradient(p);
      const auto g2 = second_->subgradient(p);
      for (int i = 0; i < k; ++i) g[i] = alpha_ * g1[i] + (1.0 - alpha_) * g2[i];
      break;
    }
    case LossKind::kCustom:
      g = (*custom_subgradient_)(p);
      if (static_cast<int>(g.size()) != k) {
        throw std::logic_error("custom subgradient returned wrong dimension");
      }
      break;
  }
  return g;
}

std::vector<double> ProperLoss::bivariate_all(const SimplexPoint& p) const {
  check_point(p);
  if (kind_ == LossKind::kMixture) {
    // Combine component values directly so the mixture is exactly affine.
    auto values = first_->bivariate_all(p);
    const auto other = second_->bivariate_all(p);
    for (std::size_t i = 0; i < values.size(); ++i) {
      values[i] = alpha_ * values[i] + (1.0 - alpha_) * other[i];
    }
    return values;
  }
  const double f = univariate(p);
  auto g = subgradient(p);
  const double g_dot_p = dot(g, p.probs());
  for (double& gi : g) gi = f + gi - g_dot_p;
  return g;
}

double ProperLoss::bivariate(const SimplexPoint& p, Outcome y) const {
  check_point(p);
  if (y.index < 0 || y.index >= num_outcomes_) {
    throw std::out_of_range("outcome index out of range");
  }
  if (kind_ == LossKind::kMixture) {
    return alpha_ * first_->bivariate(p, y) + (1.0 - alpha_) * second_->bivariate(p, y);
  }
  const double f = univariate(p);
  const auto g = subgradient(p);
  return f + g[y.index] - dot(g, p.probs());
}

}  // namespace ucal

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

#include "ucal/simplex.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <string>

namespace ucal {

SimplexPoint SimplexPoint::uniform(int num_outcomes) {
  if (num_outcomes < 1) throw SimplexError("simplex needs at least one outcome");
  return SimplexPoint(std::vector<double>(num_outcomes, 1.0 / num_outcomes));
}

SimplexPoint SimplexPoint::vertex(int num_outcomes, int index) {
  if (num_outcomes < 1 || index < 0 || index >= num_outcomes) {
    throw SimplexError("vertex index out of range");
  }
  std::vector<double> probs(num_outcomes, 0.0);
  probs[index] = 1.0;
  return SimplexPoint(std::move(probs));
}

SimplexPoint validate_simplex(std::span<const double> values, double tol) {
  if (values.empty()) throw SimplexError("empty probability vector");
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v)) {
      throw SimplexError("non-finite entry at index " + std::to_string(i));
    }
    if (v < -tol) {
      throw SimplexError("negative entry at index " + std::to_string(i));
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > tol) {
    throw SimplexError("entries sum to " + std::to_string(sum) +
                       ", not 1 within tolerance");
  }
  std::vector<double> probs(values.begin(), values.end());
  for (double& v : probs) v = std::max(v, 0.0);
  const double clamped_sum = std::accumulate(probs.begin(), probs.end(), 0.0);
  if (clamped_sum != 1.0) {
    for (double& v : probs) v /= clamped_sum;
  }
  return SimplexPoint(std::move(probs));
}

SimplexPoint unchecked_simplex(std::vector<double> probs) {
#ifndef NDEBUG
  double sum = 0.0;
  for (double v : probs) {
    assert(v >= 0.0);
    sum += v;
  }
  assert(std::abs(sum - 1.0) <= 1e-9);
#endif
  return SimplexPoint(std::move(probs));
}

CountVector::CountVector(int num_outcomes) {
  if (num_outcomes < 1) throw std::invalid_argument("count vector needs K >= 1");
  counts_.assign(num_outcomes, 0);
}

CountVector::CountVector(std::vector<std::int64_t> counts)
    : counts_(std::move(counts)) {
  if (counts_.empty()) throw std::invalid_argument("count vector needs K >= 1");
  for (std::int64_t c : counts_) {
    if (c < 0) throw std::invalid_argument("negative count");
    total_ += c;
  }
}

void CountVector::add(Outcome y) {
  if (y.index < 0 || y.index >= num_outcomes()) {
    throw std::out_of_range("outcome index " + std::to_string(y.index) +
                            " outside [0, " + std::to_string(num_outcomes()) +
                            ")");
  }
  ++counts_[y.index];
  ++total_;
}

SimplexPoint mean_of_counts(const CountVector& counts) {
  if (counts.total() == 0) throw std::domain_error("empty history");
  const double total = static_cast<double>(counts.total());
  std::vector<double> probs(counts.num_outcomes());
  for (int i = 0; i < counts.num_outcomes(); ++i) {
    probs[i] = static_cast<double>(counts[i]) / total;
  }
  return unchecked_simplex(std::move(probs));
}

double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double l2_norm(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double l2_distance(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace ucal

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

#ifndef UCAL_SIMPLEX_HPP_
#define UCAL_SIMPLEX_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace ucal {

// Entries of a SimplexPoint are non-negative and sum to one within this.
inline constexpr double kSimplexTolerance = 1e-12;

// Raised when a vector fails the simplex invariants.
class SimplexError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// One-hot outcome e_{index+1}, stored by its 0-based index.
struct Outcome {
  int index = 0;

  friend bool operator==(Outcome, Outcome) = default;
};

// A probability vector over K outcomes. Construct through validate_simplex,
// mean_of_counts, or the named factories; the invariants hold for every
// instance.
class SimplexPoint {
 public:
  static SimplexPoint uniform(int num_outcomes);
  static SimplexPoint vertex(int num_outcomes, int index);

  std::size_t size() const { return probs_.size(); }
  int num_outcomes() const { return static_cast<int>(probs_.size()); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }

  friend bool operator==(const SimplexPoint&, const SimplexPoint&) = default;

 private:
  explicit SimplexPoint(std::vector<double> probs) : probs_(std::move(probs)) {}

  friend SimplexPoint validate_simplex(std::span<const double>, double);
  friend SimplexPoint unchecked_simplex(std::vector<double>);

  std::vector<double> probs_;
};

// Checks the simplex invariants within `tol` and renormalizes so that the
// entries sum to exactly 1 (up to the final division). Entries in [-tol, 0)
// are clamped to zero.
SimplexPoint validate_simplex(std::span<const double> values,
                              double tol = kSimplexTolerance);

// Wraps a vector the caller has already constructed on the simplex, e.g. a
// ratio of non-negative counts. Checked in debug builds only.
SimplexPoint unchecked_simplex(std::vector<double> probs);

// Per-outcome occurrence counts n_t and their total.
class CountVector {
 public:
  explicit CountVector(int num_outcomes);
  explicit CountVector(std::vector<std::int64_t> counts);

  void add(Outcome y);

  int num_outcomes() const { return static_cast<int>(counts_.size()); }
  std::int64_t total() const { return total_; }
  std::int64_t operator[](std::size_t i) const { return counts_[i]; }
  std::span<const std::int64_t> counts() const { return counts_; }

  friend bool operator==(const CountVector&, const CountVector&) = default;

 private:
  std::vector<std::int64_t> counts_;
  std::int64_t total_ = 0;
};

// counts / total: the empirical risk minimizer of every proper loss.
// Throws std::domain_error("empty history") when total is zero.
SimplexPoint mean_of_counts(const CountVector& counts);

double l2_norm(std::span<const double> v);
double l2_distance(std::span<const double> a, std::span<const double> b);
double dot(std::span<const double> a, std::span<const double> b);

}  // namespace ucal

#endif  // UCAL_SIMPLEX_HPP_

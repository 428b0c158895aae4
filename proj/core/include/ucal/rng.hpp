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

#ifndef UCAL_RNG_HPP_
#define UCAL_RNG_HPP_

#include <cstdint>
#include <random>

#include "ucal/simplex.hpp"

namespace ucal {

// Deterministic random stream keyed by (seed, stream_id). Two streams built
// from the same pair produce identical draws. Satisfies
// UniformRandomBitGenerator so it plugs into <random> distributions.
//
// Not thread-safe: each worker owns its streams.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return engine_(); }

  // Uniform on (0, 1]; never returns 0 so log() of it is finite.
  double uniform_open_closed();
  // Uniform integer on [0, n).
  std::uint64_t uniform_below(std::uint64_t n);

  // A fresh stream keyed on this stream's identity (not its state), so the
  // child is independent of how many draws the parent has made.
  RngStream derive(std::uint64_t salt) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

// Uniform draw from the simplex (flat Dirichlet) via normalized exponentials.
SimplexPoint sample_simplex(int num_outcomes, RngStream& rng);

}  // namespace ucal

#endif  // UCAL_RNG_HPP_

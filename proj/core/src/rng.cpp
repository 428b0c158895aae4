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

#include "ucal/rng.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ucal {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

double RngStream::uniform_open_closed() {
  // 53 random mantissa bits on [0, 1), reflected onto (0, 1].
  const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return 1.0 - u;
}

std::uint64_t RngStream::uniform_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniform_below(0)");
  std::uniform_int_distribution<std::uint64_t> dist(0, n - 1);
  return dist(*this);
}

RngStream RngStream::derive(std::uint64_t salt) const {
  return RngStream(seed_, splitmix64(stream_id_ ^ splitmix64(salt)));
}

SimplexPoint sample_simplex(int num_outcomes, RngStream& rng) {
  if (num_outcomes < 1) throw std::invalid_argument("sample_simplex needs K >= 1");
  std::vector<double> probs(num_outcomes);
  double sum = 0.0;
  for (double& p : probs) {
    p = -std::log(rng.uniform_open_closed());
    sum += p;
  }
  if (sum <= 0.0) return SimplexPoint::uniform(num_outcomes);
  for (double& p : probs) p /= sum;
  return unchecked_simplex(std::move(probs));
}

}  // namespace ucal

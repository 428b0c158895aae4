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

#ifndef UCAL_TOOLS_COMMANDS_HPP_
#define UCAL_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ucal::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

struct RunOptions {
  std::string experiment = "run";
  std::string forecaster;
  std::string adversary;
  std::vector<std::string> losses;
  int num_outcomes = 0;
  std::int64_t horizon = 0;
  int trials = 1;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string output;
};

struct SweepOptions {
  RunOptions run;
  std::int64_t horizon_min = 64;
  std::int64_t horizon_max = 4096;
  double factor = 2.0;
};

struct MinimaxOptions {
  std::int64_t horizon = 0;
  std::string mode = "both";
  bool check_bounds = false;
  std::string csv;
};

struct ValidateOptions {
  std::string loss;
  std::optional<double> alpha;
  std::optional<double> scale;
  int num_outcomes = 2;
  int pairs = 10000;
  std::uint64_t seed = 1;
  double tol = 1e-9;
};

// Each returns an exit code; CSV goes to `out` unless an output path is set.
int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);
int cmd_minimax(const MinimaxOptions& opts, std::ostream& out, std::ostream& err);
int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err);

// Geometric grid T_min, ⌈T_min·f⌉, … up to T_max (always strictly increasing).
std::vector<std::int64_t> horizon_grid(std::int64_t lo, std::int64_t hi, double factor);

// Parses argv (argv[0] is the program name) and dispatches to a subcommand.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ucal::cli

#endif  // UCAL_TOOLS_COMMANDS_HPP_

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

#ifndef UCAL_TOOLS_COMPONENTS_HPP_
#define UCAL_TOOLS_COMPONENTS_HPP_

#include <stdexcept>
#include <string>
#include <vector>

#include "ucal/adversaries.hpp"
#include "ucal/forecasters.hpp"
#include "ucal/losses.hpp"

namespace ucal::cli {

// Bad flags, unknown component names or malformed parameters. Maps to exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Component grammar:
//   forecaster  ftl | ftpl | ftpl-geometric | ftpl-uniform | static:p1,p2,...
//   adversary   iid | alternating | fixed:<path> | greedy:<loss>
//   loss        vshaped | spherical | squared[:scale] | tsallis:<alpha>
ProperLoss parse_loss(const std::string& text, int num_outcomes);
ForecasterSpec parse_forecaster(const std::string& text, int num_outcomes);
Adversary parse_adversary(const std::string& text, int num_outcomes);

std::vector<ProperLoss> parse_losses(const std::vector<std::string>& texts,
                                     int num_outcomes);

}  // namespace ucal::cli

#endif  // UCAL_TOOLS_COMPONENTS_HPP_

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

#include "components.hpp"

#include <cstdlib>
#include <utility>

namespace ucal::cli {
namespace {

std::pair<std::string, std::string> split_head(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return {text, ""};
  return {text.substr(0, colon), text.substr(colon + 1)};
}

double parse_real(const std::string& text, const std::string& what) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw UsageError("cannot parse " + what + " '" + text + "'");
  }
  return value;
}

}  // namespace

ProperLoss parse_loss(const std::string& text, int num_outcomes) {
  const auto [name, arg] = split_head(text);
  try {
    if (name == "vshaped" && arg.empty()) return ProperLoss::vshaped(num_outcomes);
    if (name == "spherical" && arg.empty()) return ProperLoss::spherical(num_outcomes);
    if (name == "squared") {
      const double scale = arg.empty() ? 1.0 : parse_real(arg, "squared scale");
      return ProperLoss::squared(num_outcomes, scale);
    }
    if (name == "tsallis") {
      if (arg.empty()) throw UsageError("tsallis needs an exponent, e.g. tsallis:1.5");
      return ProperLoss::tsallis(num_outcomes, parse_real(arg, "tsallis exponent"));
    }
  } catch (const std::invalid_argument& e) {
    throw UsageError("loss '" + text + "': " + e.what());
  }
  throw UsageError("unknown loss '" + text + "'");
}

std::vector<ProperLoss> parse_losses(const std::vector<std::string>& texts,
                                     int num_outcomes) {
  std::vector<ProperLoss> losses;
  losses.reserve(texts.size());
  for (const auto& t : texts) losses.push_back(parse_loss(t, num_outcomes));
  return losses;
}

ForecasterSpec parse_forecaster(const std::string& text, int num_outcomes) {
  const auto [name, arg] = split_head(text);
  if (name == "ftl" && arg.empty()) return ForecasterSpec::ftl();
  if ((name == "ftpl" || name == "ftpl-geometric") && arg.empty()) {
    return ForecasterSpec::ftpl_geometric();
  }
  if (name == "ftpl-uniform" && arg.empty()) return ForecasterSpec::ftpl_uniform();
  if (name == "static") {
    std::vector<double> probs;
    std::size_t start = 0;
    while (start <= arg.size()) {
      const auto comma = arg.find(',', start);
      const auto end = comma == std::string::npos ? arg.size() : comma;
      probs.push_back(parse_real(arg.substr(start, end - start), "static probability"));
      start = end + 1;
    }
    if (static_cast<int>(probs.size()) != num_outcomes) {
      throw UsageError("static forecast has " + std::to_string(probs.size()) +
                       " entries but K = " + std::to_string(num_outcomes));
    }
    try {
      return ForecasterSpec::fixed(validate_simplex(probs));
    } catch (const SimplexError& e) {
      throw UsageError("static forecast: " + std::string(e.what()));
    }
  }
  throw UsageError("unknown forecaster '" + text + "'");
}

Adversary parse_adversary(const std::string& text, int num_outcomes) {
  const auto [name, arg] = split_head(text);
  if (name == "iid" && arg.empty()) return Adversary::iid_uniform(num_outcomes);
  if (name == "alternating" && arg.empty()) return Adversary::alternating(num_outcomes);
  if (name == "fixed") {
    if (arg.empty()) throw UsageError("fixed adversary needs a path, e.g. fixed:seq.txt");
    try {
      return Adversary::fixed(num_outcomes, load_outcome_sequence(arg, num_outcomes));
    } catch (const std::runtime_error& e) {
      throw UsageError(e.what());
    }
  }
  if (name == "greedy") {
    return Adversary::greedy_adaptive(parse_loss(arg.empty() ? "squared" : arg, num_outcomes));
  }
  throw UsageError("unknown adversary '" + text + "'");
}

}  // namespace ucal::cli

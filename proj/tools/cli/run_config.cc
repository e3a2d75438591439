// Copyright 2026 The MrAP Authors
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

#include "cli/run_config.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "mrap/errors.h"

namespace mrap::cli {

std::string RunConfig::SetupLabel() const {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g%%", observed_fraction * 100.0);
  return buf;
}

std::uint64_t RunConfig::SubsampleSeed() const {
  return split.seed ^ 0x9E3779B97F4A7C15ull;
}

void RunConfig::Validate() const {
  split.Validate();
  propagation.Validate();
  if (!(observed_fraction > 0.0) || observed_fraction > 1.0) {
    throw InvalidArgument("--observed-fraction must lie in (0, 1]");
  }
  if (attrs_path.empty()) throw InvalidArgument("--attrs is required");
  for (const std::string& path : {triples_path, attrs_path}) {
    if (!path.empty() && !std::filesystem::exists(path)) {
      throw InvalidArgument("input file does not exist: " + path);
    }
  }
  if (!(admission.r2_min >= 0.0) || admission.r2_min > 1.0) {
    throw InvalidArgument("--r2-min must lie in [0, 1]");
  }
}

SplitSpec ParseSplitFractions(const std::string& text, std::uint64_t seed) {
  std::stringstream ss(text);
  std::string part;
  std::vector<double> parts;
  while (std::getline(ss, part, '/')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw InvalidArgument("bad split fraction '" + part + "'");
    }
  }
  if (parts.size() != 3) {
    throw InvalidArgument("--split expects A/B/C, got '" + text + "'");
  }
  const double total = parts[0] + parts[1] + parts[2];
  // Percentages are accepted as well as fractions.
  if (std::abs(total - 100.0) < 1e-6) {
    for (double& p : parts) p /= 100.0;
  }
  SplitSpec spec{parts[0], parts[1], parts[2], seed};
  spec.Validate();
  return spec;
}

}  // namespace mrap::cli

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

#ifndef MRAP_TOOLS_CLI_RUN_CONFIG_H_
#define MRAP_TOOLS_CLI_RUN_CONFIG_H_

#include <string>
#include <vector>

#include "mrap/ingest.h"
#include "mrap/model_registry.h"
#include "mrap/propagation.h"

namespace mrap::cli {

struct RunConfig {
  std::string triples_path;
  std::string attrs_path;
  std::string out_dir = "mrap_out";
  SplitSpec split;
  double observed_fraction = 1.0;
  PropagationConfig propagation;
  AdmissionConfig admission;
  Split eval_split = Split::kTest;
  bool merge_local_global = true;

  // "100%", "50%", ...
  std::string SetupLabel() const;
  // Seed of the observed-subsample stream, distinct from the split stream.
  std::uint64_t SubsampleSeed() const;
  // Checks numeric constraints and that input paths exist. Throws
  // InvalidArgument.
  void Validate() const;
};

// "80/10/10" or "0.8/0.1/0.1". Throws InvalidArgument.
SplitSpec ParseSplitFractions(const std::string& text, std::uint64_t seed);

}  // namespace mrap::cli

#endif  // MRAP_TOOLS_CLI_RUN_CONFIG_H_

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

#ifndef MRAP_TOOLS_CLI_COMMANDS_H_
#define MRAP_TOOLS_CLI_COMMANDS_H_

#include <ostream>
#include <string>

#include "cli/run_config.h"

namespace mrap::cli {

enum ExitCode : int {
  kOk = 0,
  kUsageError = 1,
  kDataError = 2,
  kNotConverged = 3,
};

// Output files written under RunConfig::out_dir.
inline constexpr const char* kManifestFile = "split.tsv";
inline constexpr const char* kModelsFile = "models.tsv";
inline constexpr const char* kImputedFile = "imputed.tsv";
inline constexpr const char* kTraceFile = "trace.csv";
inline constexpr const char* kReportCsv = "report.csv";
inline constexpr const char* kReportTxt = "report.txt";
inline constexpr const char* kAblationCsv = "ablation.csv";
inline constexpr const char* kAblationTxt = "ablation.txt";
inline constexpr const char* kDifferencesCsv = "differences.csv";

int CmdStats(const RunConfig& config, std::ostream& out);
int CmdSplit(const RunConfig& config, std::ostream& out);
int CmdFit(const RunConfig& config, std::ostream& out);
int CmdImpute(const RunConfig& config, std::ostream& out);
int CmdEval(const RunConfig& config, std::ostream& out);
int CmdAblate(const RunConfig& config, std::ostream& out);
// `key` is "dep|indep|relation|forward|reverse" or "dep|indep|INNER".
int CmdDifferences(const RunConfig& config, const std::string& key,
                   std::ostream& out);

// Parses argv, dispatches, and maps exceptions to exit codes. Human-readable
// summaries go to `out`; diagnostics go to stderr through the logger.
int Main(int argc, const char* const* argv, std::ostream& out);

}  // namespace mrap::cli

#endif  // MRAP_TOOLS_CLI_COMMANDS_H_

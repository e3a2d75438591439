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

#ifndef MRAP_REPORT_H_
#define MRAP_REPORT_H_

#include <ostream>
#include <span>
#include <string>

#include "mrap/evaluation.h"

namespace mrap {

// "dep|indep|relation|direction", or "dep|indep|INNER".
std::string PathKeyLabel(const PathKey& key, const KnowledgeGraph& graph,
                         const AttributeTable& attrs);

// CSV `method,setup,attr_type,mae,rmse,n_test,n_unpredicted`.
void WriteReportCsv(std::span<const EvalReport> reports, std::ostream& out);

// Aligned table: one row per attribute type, an MAE/RMSE column pair per
// report. With `merge_local_global`, reports named "Local" and "Global" share
// one "Local/Global" pair showing the lower-MAE method, prefixed with '*'
// when Global wins. Each report still gets its own CSV rows.
void WriteReportTable(std::span<const EvalReport> reports, std::ostream& out,
                      bool merge_local_global);

// CSV `key,value` plus a trailing `# mean=...,std=...` line.
void WriteDifferences(const std::string& key_label, const Differences& diffs,
                      std::ostream& out);

}  // namespace mrap

#endif  // MRAP_REPORT_H_

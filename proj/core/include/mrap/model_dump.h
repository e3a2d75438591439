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

#ifndef MRAP_MODEL_DUMP_H_
#define MRAP_MODEL_DUMP_H_

#include <istream>
#include <ostream>
#include <string>

#include "mrap/attributes.h"
#include "mrap/graph.h"
#include "mrap/model_registry.h"

namespace mrap {

// Round-trippable decimal form of a double (17 significant digits).
std::string FormatExact(double value);

// One model per line, tab-separated:
//   dep_attr indep_attr relation_or_INNER direction eta tau sigma2 weight
//   support r2 derived_reverse
// direction is forward/reverse, or '-' for inner models. A leading '#' line
// names the columns.
void WriteModelDump(const ModelRegistry& registry, const KnowledgeGraph& graph,
                    const AttributeTable& attrs, std::ostream& out);

// Inverse of WriteModelDump. Labels are resolved against graph and attrs;
// unknown labels raise DataError, malformed lines ParseError.
ModelRegistry ReadModelDump(std::istream& in, const KnowledgeGraph& graph,
                            const AttributeTable& attrs,
                            const AdmissionConfig& config);

}  // namespace mrap

#endif  // MRAP_MODEL_DUMP_H_

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

#include "mrap/model_dump.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string_view>
#include <vector>

#include "mrap/errors.h"

namespace mrap {
namespace {

std::vector<std::string> Fields(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, '\t')) fields.push_back(field);
  return fields;
}

double ToDouble(const std::string& text, std::size_t line_no) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(line_no, "bad number '" + text + "'");
  }
  return value;
}

std::size_t ToSize(const std::string& text, std::size_t line_no) {
  std::size_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(line_no, "bad count '" + text + "'");
  }
  return value;
}

}  // namespace

std::string FormatExact(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void WriteModelDump(const ModelRegistry& registry, const KnowledgeGraph& graph,
                    const AttributeTable& attrs, std::ostream& out) {
  out << "#dep_attr\tindep_attr\trelation_or_INNER\tdirection\teta\ttau\t"
         "sigma2\tweight\tsupport\tr2\tderived_reverse\n";
  for (const auto& [key, m] : registry.models()) {
    out << attrs.types().Label(key.dep) << '\t'
        << attrs.types().Label(key.indep) << '\t';
    if (key.is_inner()) {
      out << kInnerLabel << "\t-";
    } else {
      out << graph.relations().Label(key.link->relation) << '\t'
          << (key.link->direction == Direction::kForward ? "forward"
                                                         : "reverse");
    }
    out << '\t' << FormatExact(m.eta) << '\t' << FormatExact(m.tau) << '\t'
        << FormatExact(m.sigma2) << '\t' << FormatExact(m.weight) << '\t'
        << m.fit.support << '\t' << FormatExact(m.fit.r2) << '\t'
        << (m.fit.derived_reverse ? 1 : 0) << '\n';
  }
}

ModelRegistry ReadModelDump(std::istream& in, const KnowledgeGraph& graph,
                            const AttributeTable& attrs,
                            const AdmissionConfig& config) {
  ModelRegistry registry(config);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto f = Fields(line);
    if (f.size() != 11) {
      throw ParseError(line_no, "expected 11 fields, got " +
                                    std::to_string(f.size()));
    }
    const auto dep = attrs.types().Find(f[0]);
    const auto indep = attrs.types().Find(f[1]);
    if (!dep || !indep) {
      throw DataError("model dump line " + std::to_string(line_no) +
                      " names an unknown attribute type");
    }
    RegressionModel m;
    if (f[2] == kInnerLabel) {
      m.key = PathKey::Inner(*dep, *indep);
    } else {
      const auto relation = graph.relations().Find(f[2]);
      if (!relation) {
        throw DataError("model dump line " + std::to_string(line_no) +
                        " names an unknown relation '" + f[2] + "'");
      }
      Direction direction;
      if (f[3] == "forward") {
        direction = Direction::kForward;
      } else if (f[3] == "reverse") {
        direction = Direction::kReverse;
      } else {
        throw ParseError(line_no, "bad direction '" + f[3] + "'");
      }
      m.key = PathKey::Relational(*dep, *indep, {*relation, direction});
    }
    m.eta = ToDouble(f[4], line_no);
    m.tau = ToDouble(f[5], line_no);
    m.sigma2 = ToDouble(f[6], line_no);
    m.weight = ToDouble(f[7], line_no);
    m.fit.support = ToSize(f[8], line_no);
    m.fit.r2 = ToDouble(f[9], line_no);
    m.fit.mu_x = m.fit.mu_y = std::nan("");
    if (f[10] != "0" && f[10] != "1") {
      throw ParseError(line_no, "bad derived_reverse flag '" + f[10] + "'");
    }
    m.fit.derived_reverse = f[10] == "1";
    if (!(m.weight > 0.0) || !std::isfinite(m.weight)) {
      throw ParseError(line_no, "weight must be positive and finite");
    }
    registry.Insert(m);
  }
  return registry;
}

}  // namespace mrap

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

#include "mrap/report.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <vector>

#include "mrap/model_dump.h"

namespace mrap {
namespace {

std::string Short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

struct Column {
  std::string title;
  // attr label -> (mae, rmse) text
  std::map<std::string, std::pair<std::string, std::string>> cells;
};

const EvalRow* RowFor(const EvalReport& r, const std::string& attr) {
  for (const EvalRow& row : r.rows) {
    if (row.attr_label == attr) return &row;
  }
  return nullptr;
}

}  // namespace

std::string PathKeyLabel(const PathKey& key, const KnowledgeGraph& graph,
                         const AttributeTable& attrs) {
  std::string label =
      attrs.types().Label(key.dep) + "|" + attrs.types().Label(key.indep) + "|";
  if (key.is_inner()) return label + std::string(kInnerLabel);
  return label + graph.relations().Label(key.link->relation) + "|" +
         (key.link->direction == Direction::kForward ? "forward" : "reverse");
}

void WriteReportCsv(std::span<const EvalReport> reports, std::ostream& out) {
  out << "method,setup,attr_type,mae,rmse,n_test,n_unpredicted\n";
  for (const EvalReport& r : reports) {
    for (const EvalRow& row : r.rows) {
      out << r.method << ',' << r.setup << ',' << row.attr_label << ','
          << FormatExact(row.mae) << ',' << FormatExact(row.rmse) << ','
          << row.n_test << ',' << row.n_unpredicted << '\n';
    }
  }
}

void WriteReportTable(std::span<const EvalReport> reports, std::ostream& out,
                      bool merge_local_global) {
  std::vector<std::string> attrs;
  for (const EvalReport& r : reports) {
    for (const EvalRow& row : r.rows) {
      if (std::find(attrs.begin(), attrs.end(), row.attr_label) ==
          attrs.end()) {
        attrs.push_back(row.attr_label);
      }
    }
  }

  const EvalReport* local = nullptr;
  const EvalReport* global = nullptr;
  if (merge_local_global) {
    for (const EvalReport& r : reports) {
      if (r.method == "Local") local = &r;
      if (r.method == "Global") global = &r;
    }
    if (local == nullptr || global == nullptr) local = global = nullptr;
  }

  std::vector<Column> columns;
  bool merged_emitted = false;
  for (const EvalReport& r : reports) {
    const bool merged = local != nullptr && (&r == local || &r == global);
    if (merged) {
      if (merged_emitted) continue;
      merged_emitted = true;
      Column c{"Local/Global", {}};
      for (const std::string& a : attrs) {
        const EvalRow* l = RowFor(*local, a);
        const EvalRow* g = RowFor(*global, a);
        if (l == nullptr || g == nullptr) continue;
        if (g->mae < l->mae) {
          c.cells[a] = {"*" + Short(g->mae), "*" + Short(g->rmse)};
        } else {
          c.cells[a] = {Short(l->mae), Short(l->rmse)};
        }
      }
      columns.push_back(std::move(c));
      continue;
    }
    Column c{r.method, {}};
    for (const EvalRow& row : r.rows) {
      c.cells[row.attr_label] = {Short(row.mae), Short(row.rmse)};
    }
    columns.push_back(std::move(c));
  }

  std::size_t attr_width = 9;
  for (const std::string& a : attrs) attr_width = std::max(attr_width, a.size());
  std::vector<std::size_t> widths;
  for (const Column& c : columns) {
    std::size_t w = 8;
    for (const auto& [a, cell] : c.cells) {
      w = std::max({w, cell.first.size(), cell.second.size()});
    }
    w = std::max(w, (c.title.size() + 1) / 2);
    widths.push_back(w);
  }

  auto pad = [](const std::string& s, std::size_t w, bool left) {
    if (s.size() >= w) return s;
    return left ? s + std::string(w - s.size(), ' ')
                : std::string(w - s.size(), ' ') + s;
  };

  if (!reports.empty()) out << "setup: " << reports.front().setup << '\n';
  out << pad("", attr_width, true);
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out << "  " << pad(columns[i].title, 2 * widths[i] + 1, true);
  }
  out << '\n' << pad("Attribute", attr_width, true);
  for (std::size_t i = 0; i < columns.size(); ++i) {
    out << "  " << pad("MAE", widths[i], false) << ' '
        << pad("RMSE", widths[i], false);
  }
  out << '\n';
  for (const std::string& a : attrs) {
    out << pad(a, attr_width, true);
    for (std::size_t i = 0; i < columns.size(); ++i) {
      auto it = columns[i].cells.find(a);
      const std::string mae = it == columns[i].cells.end() ? "-" : it->second.first;
      const std::string rmse =
          it == columns[i].cells.end() ? "-" : it->second.second;
      out << "  " << pad(mae, widths[i], false) << ' '
          << pad(rmse, widths[i], false);
    }
    out << '\n';
  }
}

void WriteDifferences(const std::string& key_label, const Differences& diffs,
                      std::ostream& out) {
  out << "key,value\n";
  for (double d : diffs.values) {
    out << key_label << ',' << FormatExact(d) << '\n';
  }
  out << "# mean=" << FormatExact(diffs.mean)
      << ",std=" << FormatExact(diffs.stddev) << '\n';
}

}  // namespace mrap

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

#include "mrap/ingest.h"

#include <algorithm>
#include <charconv>
#include <limits>
#include <cmath>
#include <map>
#include <random>
#include <string_view>
#include <utility>

namespace mrap {
namespace {

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

// Reads the next record line, skipping blanks and comments. Returns false at
// end of input.
bool NextRecord(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    return true;
  }
  return false;
}

double ParseValue(std::string_view text, std::size_t line_no) {
  std::string_view s = text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() ||
      !std::isfinite(value)) {
    throw ParseError(line_no, "cannot parse value '" + std::string(text) + "'");
  }
  return value;
}

// Uniform draw from [0, n) using only the engine's standardized output.
std::size_t UniformIndex(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t bound = n;
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return static_cast<std::size_t>(draw % bound);
}

void Shuffle(std::vector<std::size_t>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[UniformIndex(rng, i)]);
  }
}

std::vector<std::vector<std::size_t>> IndicesByType(
    const AttributeTable& table) {
  std::vector<std::vector<std::size_t>> by_type(table.num_types());
  for (std::size_t i = 0; i < table.size(); ++i) {
    by_type[table.entry(i).attr.index()].push_back(i);
  }
  return by_type;
}

DatasetBundle WithSplits(const DatasetBundle& bundle, std::vector<Split> split,
                         std::vector<Status> statuses) {
  DatasetBundle out;
  out.graph = bundle.graph;
  out.attrs = bundle.attrs.WithStatuses(statuses, bundle.truth);
  out.truth = bundle.truth;
  out.split = std::move(split);
  return out;
}

std::vector<Status> StatusesFromSplit(std::span<const Split> split) {
  std::vector<Status> statuses(split.size());
  for (std::size_t i = 0; i < split.size(); ++i) {
    statuses[i] = split[i] == Split::kTrain ? Status::kObserved
                                            : Status::kMissing;
  }
  return statuses;
}

}  // namespace

std::vector<Triple> ParseTriples(std::istream& in) {
  std::vector<Triple> triples;
  std::string line;
  std::size_t line_no = 0;
  while (NextRecord(in, line, line_no)) {
    const auto fields = SplitTabs(line);
    if (fields.size() != 3) {
      throw ParseError(line_no, "expected 3 tab-separated fields, got " +
                                    std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty() || fields[2].empty()) {
      throw ParseError(line_no, "empty field");
    }
    triples.push_back(
        {std::string(fields[0]), std::string(fields[1]), std::string(fields[2])});
  }
  return triples;
}

AttributeParse ParseAttributes(std::istream& in) {
  AttributeParse result;
  std::map<std::pair<std::string, std::string>, std::size_t> position;
  std::string line;
  std::size_t line_no = 0;
  while (NextRecord(in, line, line_no)) {
    const auto fields = SplitTabs(line);
    if (fields.size() != 3) {
      throw ParseError(line_no, "expected 3 tab-separated fields, got " +
                                    std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw ParseError(line_no, "empty field");
    }
    AttributeRecord record{std::string(fields[0]), std::string(fields[1]),
                           ParseValue(fields[2], line_no)};
    auto [it, inserted] = position.try_emplace(
        {record.entity, record.attr}, result.records.size());
    if (inserted) {
      result.records.push_back(std::move(record));
    } else {
      result.records[it->second].value = record.value;
      ++result.duplicates;
    }
  }
  return result;
}

const char* SplitName(Split s) {
  switch (s) {
    case Split::kTrain:
      return "train";
    case Split::kDev:
      return "dev";
    case Split::kTest:
      return "test";
  }
  return "?";
}

void SplitSpec::Validate() const {
  if (!(train > 0.0) || !(dev > 0.0) || !(test > 0.0)) {
    throw InvalidArgument("split fractions must be positive");
  }
  if (std::abs(train + dev + test - 1.0) > 1e-9) {
    throw InvalidArgument("split fractions must sum to 1");
  }
}

DatasetBundle MakeBundle(std::span<const Triple> triples,
                         std::span<const AttributeRecord> records) {
  KnowledgeGraph::Builder builder;
  for (const Triple& t : triples) builder.AddTriple(t.head, t.relation, t.tail);
  for (const AttributeRecord& r : records) {
    if (r.entity.empty() || r.attr.empty()) {
      throw InvalidArgument("attribute record fields must be nonempty");
    }
    builder.AddEntity(r.entity);
  }

  DatasetBundle bundle;
  bundle.graph = std::move(builder).Build();

  LabelTable<AttrTypeId> types;
  std::vector<AttributeEntry> entries;
  entries.reserve(records.size());
  for (const AttributeRecord& r : records) {
    entries.push_back({*bundle.graph.entities().Find(r.entity),
                       types.Intern(r.attr), r.value, Status::kObserved});
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const AttributeEntry& a, const AttributeEntry& b) {
                     return a.key() < b.key();
                   });
  bundle.attrs = AttributeTable(std::move(types), bundle.graph.num_entities(),
                                std::move(entries));
  bundle.truth.reserve(bundle.attrs.size());
  for (const AttributeEntry& e : bundle.attrs.entries()) {
    bundle.truth.push_back(e.value);
  }
  bundle.split.assign(bundle.attrs.size(), Split::kTrain);
  return bundle;
}

std::vector<std::size_t> Apportion(std::size_t n,
                                   std::span<const double> fractions) {
  std::vector<std::size_t> counts(fractions.size(), 0);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    const double quota = fractions[i] * static_cast<double>(n);
    // Guard against quotas like 7.9999999999 that are integral in exact
    // arithmetic.
    double whole = std::floor(quota + 1e-9);
    counts[i] = static_cast<std::size_t>(whole);
    assigned += counts[i];
    remainders.push_back({std::max(0.0, quota - whole), i});
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t k = 0; assigned < n; ++k, ++assigned) {
    ++counts[remainders[k % remainders.size()].second];
  }
  return counts;
}

DatasetBundle SplitAttributes(const DatasetBundle& bundle,
                              const SplitSpec& spec) {
  spec.Validate();
  if (bundle.attrs.size() == 0) {
    throw InvalidArgument("cannot split an empty attribute set");
  }
  const double fractions[] = {spec.train, spec.dev, spec.test};
  std::mt19937_64 rng(spec.seed);
  std::vector<Split> split(bundle.attrs.size(), Split::kTrain);
  for (std::vector<std::size_t>& indices : IndicesByType(bundle.attrs)) {
    Shuffle(indices, rng);
    const auto counts = Apportion(indices.size(), fractions);
    for (std::size_t k = 0; k < indices.size(); ++k) {
      split[indices[k]] = k < counts[0]               ? Split::kTrain
                          : k < counts[0] + counts[1] ? Split::kDev
                                                      : Split::kTest;
    }
  }
  std::vector<Status> statuses = StatusesFromSplit(split);
  return WithSplits(bundle, std::move(split), std::move(statuses));
}

DatasetBundle SubsampleObserved(const DatasetBundle& bundle, double fraction,
                                std::uint64_t seed) {
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw InvalidArgument("observed fraction must lie in (0, 1]");
  }
  std::mt19937_64 rng(seed);
  std::vector<Status> statuses(bundle.attrs.size(), Status::kMissing);
  std::vector<std::vector<std::size_t>> train(bundle.attrs.num_types());
  for (std::size_t i = 0; i < bundle.attrs.size(); ++i) {
    if (bundle.split[i] == Split::kTrain) {
      train[bundle.attrs.entry(i).attr.index()].push_back(i);
    }
  }
  for (std::vector<std::size_t>& indices : train) {
    const double quota = fraction * static_cast<double>(indices.size());
    const double nearest = std::round(quota);
    const auto keep = static_cast<std::size_t>(
        std::abs(quota - nearest) < 1e-9 ? nearest : std::ceil(quota));
    Shuffle(indices, rng);
    for (std::size_t k = 0; k < keep && k < indices.size(); ++k) {
      statuses[indices[k]] = Status::kObserved;
    }
  }
  return WithSplits(bundle, bundle.split, std::move(statuses));
}

void WriteSplitManifest(const DatasetBundle& bundle, std::ostream& out) {
  const AttributeTable& attrs = bundle.attrs;
  for (std::size_t i = 0; i < attrs.size(); ++i) {
    const AttributeEntry& e = attrs.entry(i);
    out << bundle.graph.entities().Label(e.entity) << '\t'
        << attrs.types().Label(e.attr) << '\t' << SplitName(bundle.split[i])
        << '\n';
  }
}

DatasetBundle ApplySplitManifest(const DatasetBundle& bundle,
                                 std::istream& in) {
  std::vector<Split> split(bundle.attrs.size(), Split::kTrain);
  std::vector<bool> seen(bundle.attrs.size(), false);
  std::size_t covered = 0;
  std::string line;
  std::size_t line_no = 0;
  while (NextRecord(in, line, line_no)) {
    const auto fields = SplitTabs(line);
    if (fields.size() != 3) {
      throw ParseError(line_no, "expected 3 tab-separated fields, got " +
                                    std::to_string(fields.size()));
    }
    const auto entity = bundle.graph.entities().Find(fields[0]);
    const auto attr = bundle.attrs.types().Find(fields[1]);
    const auto index = entity && attr ? bundle.attrs.Find({*entity, *attr})
                                      : std::nullopt;
    if (!index) {
      throw DataError("split manifest line " + std::to_string(line_no) +
                      " names an unknown attribute entry");
    }
    if (fields[2] == "train") {
      split[*index] = Split::kTrain;
    } else if (fields[2] == "dev") {
      split[*index] = Split::kDev;
    } else if (fields[2] == "test") {
      split[*index] = Split::kTest;
    } else {
      throw ParseError(line_no, "unknown split '" + std::string(fields[2]) + "'");
    }
    if (seen[*index]) {
      throw DataError("split manifest line " + std::to_string(line_no) +
                      " repeats an attribute entry");
    }
    seen[*index] = true;
    ++covered;
  }
  if (covered != bundle.attrs.size()) {
    throw DataError("split manifest covers " + std::to_string(covered) +
                    " of " + std::to_string(bundle.attrs.size()) +
                    " attribute entries");
  }
  std::vector<Status> statuses = StatusesFromSplit(split);
  return WithSplits(bundle, std::move(split), std::move(statuses));
}

}  // namespace mrap

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

#include "mrap/attributes.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

namespace mrap {

AttributeTable::AttributeTable(LabelTable<AttrTypeId> types,
                               std::size_t num_entities,
                               std::vector<AttributeEntry> entries)
    : types_(std::move(types)), entries_(std::move(entries)) {
  for (const AttributeEntry& e : entries_) {
    if (e.entity.index() >= num_entities || e.attr.index() >= types_.size()) {
      throw InvalidArgument("attribute entry references an unknown id");
    }
  }
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const AttributeEntry& a, const AttributeEntry& b) {
                     return a.key() < b.key();
                   });
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i - 1].key() == entries_[i].key()) {
      throw InvalidArgument("duplicate attribute entry for entity " +
                            std::to_string(entries_[i].entity.value));
    }
  }
  offsets_.assign(num_entities + 1, 0);
  for (const AttributeEntry& e : entries_) ++offsets_[e.entity.index() + 1];
  for (std::size_t v = 0; v < num_entities; ++v) {
    offsets_[v + 1] += offsets_[v];
  }
  for (AttributeEntry& e : entries_) {
    if (e.status != Status::kObserved) {
      e.value = std::numeric_limits<double>::quiet_NaN();
    }
  }
  Summarize();
}

void AttributeTable::Summarize() {
  summaries_.assign(types_.size(), AttrTypeSummary{});
  std::vector<double> sums(types_.size(), 0.0);
  for (const AttributeEntry& e : entries_) {
    if (e.status != Status::kObserved) continue;
    AttrTypeSummary& s = summaries_[e.attr.index()];
    if (s.count == 0) {
      s.min = s.max = e.value;
    } else {
      s.min = std::min(s.min, e.value);
      s.max = std::max(s.max, e.value);
    }
    ++s.count;
    sums[e.attr.index()] += e.value;
  }
  for (std::size_t a = 0; a < summaries_.size(); ++a) {
    if (summaries_[a].count > 0) {
      summaries_[a].mean = sums[a] / static_cast<double>(summaries_[a].count);
    }
  }
}

std::optional<std::size_t> AttributeTable::Find(AttrKey key) const {
  if (key.entity.index() >= num_entities()) return std::nullopt;
  auto first = entries_.begin() + offsets_[key.entity.index()];
  auto last = entries_.begin() + offsets_[key.entity.index() + 1];
  auto it = std::lower_bound(
      first, last, key.attr,
      [](const AttributeEntry& e, AttrTypeId a) { return e.attr < a; });
  if (it == last || it->attr != key.attr) return std::nullopt;
  return static_cast<std::size_t>(it - entries_.begin());
}

std::span<const AttributeEntry> AttributeTable::EntriesOf(EntityId v) const {
  if (v.index() >= num_entities()) {
    throw InvalidArgument("entity id " + std::to_string(v.value) +
                          " out of range");
  }
  return std::span<const AttributeEntry>(entries_).subspan(
      offsets_[v.index()], offsets_[v.index() + 1] - offsets_[v.index()]);
}

const AttrTypeSummary& AttributeTable::summary(AttrTypeId a) const {
  if (a.index() >= summaries_.size()) {
    throw InvalidArgument("attribute type id " + std::to_string(a.value) +
                          " out of range");
  }
  return summaries_[a.index()];
}

AttributeTable AttributeTable::WithStatuses(
    std::span<const Status> statuses, std::span<const double> values) const {
  if (statuses.size() != entries_.size() || values.size() != entries_.size()) {
    throw InvalidArgument("status/value arrays do not match the table size");
  }
  AttributeTable copy = *this;
  for (std::size_t i = 0; i < copy.entries_.size(); ++i) {
    copy.entries_[i].status = statuses[i];
    copy.entries_[i].value = statuses[i] == Status::kObserved
                                 ? values[i]
                                 : std::numeric_limits<double>::quiet_NaN();
  }
  copy.Summarize();
  return copy;
}

double AttrRange(const AttributeTable& table, AttrTypeId a) {
  const AttrTypeSummary& s = table.summary(a);
  if (s.count == 0) {
    throw DataError("attribute type '" + table.types().Label(a) +
                    "' has no observed values");
  }
  return s.max - s.min;
}

}  // namespace mrap

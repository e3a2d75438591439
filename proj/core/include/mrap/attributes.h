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

#ifndef MRAP_ATTRIBUTES_H_
#define MRAP_ATTRIBUTES_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mrap/ids.h"

namespace mrap {

enum class Status : std::uint8_t { kObserved, kMissing, kImputed };

// Identifies one (entity, attribute type) slot.
struct AttrKey {
  EntityId entity;
  AttrTypeId attr;

  friend auto operator<=>(const AttrKey&, const AttrKey&) = default;
};

struct AttributeEntry {
  EntityId entity;
  AttrTypeId attr;
  // Native units. NaN for entries that are not Observed at load time.
  double value = 0.0;
  Status status = Status::kObserved;

  AttrKey key() const { return {entity, attr}; }
};

// Summary over the Observed entries of one attribute type.
struct AttrTypeSummary {
  std::size_t count = 0;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;

  double range() const { return count == 0 ? 0.0 : max - min; }
};

// Sparse (entity, attribute type) -> value table. Entries are kept sorted by
// (entity, attr); an entry's position is its stable index, which the rest of
// the library uses to address per-entry arrays.
class AttributeTable {
 public:
  AttributeTable() = default;
  // Throws InvalidArgument on duplicate keys or out-of-range ids.
  AttributeTable(LabelTable<AttrTypeId> types, std::size_t num_entities,
                 std::vector<AttributeEntry> entries);

  const LabelTable<AttrTypeId>& types() const { return types_; }
  std::size_t num_types() const { return types_.size(); }
  std::size_t num_entities() const { return offsets_.size() - 1; }
  std::size_t size() const { return entries_.size(); }

  std::span<const AttributeEntry> entries() const { return entries_; }
  const AttributeEntry& entry(std::size_t index) const {
    return entries_[index];
  }
  std::optional<std::size_t> Find(AttrKey key) const;

  // Indices of the entries held by entity v, in attribute-type order.
  std::span<const AttributeEntry> EntriesOf(EntityId v) const;
  std::size_t FirstIndexOf(EntityId v) const { return offsets_[v.index()]; }

  const AttrTypeSummary& summary(AttrTypeId a) const;

  // Copy of this table with new statuses. Observed entries take their value
  // from `values`; every other entry gets NaN.
  AttributeTable WithStatuses(std::span<const Status> statuses,
                              std::span<const double> values) const;

 private:
  void Summarize();

  LabelTable<AttrTypeId> types_;
  std::vector<AttributeEntry> entries_;
  std::vector<std::size_t> offsets_{0};
  std::vector<AttrTypeSummary> summaries_;
};

// max - min over the Observed values of type a. Throws DataError when the
// type has no Observed entry.
double AttrRange(const AttributeTable& table, AttrTypeId a);

}  // namespace mrap

#endif  // MRAP_ATTRIBUTES_H_

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

#ifndef MRAP_IDS_H_
#define MRAP_IDS_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mrap/errors.h"

namespace mrap {

// Dense integer id tagged by the kind of thing it indexes.
template <typename Tag>
struct StrongId {
  std::uint32_t value = 0;

  constexpr StrongId() = default;
  constexpr explicit StrongId(std::uint32_t v) : value(v) {}
  constexpr std::size_t index() const { return value; }

  friend constexpr auto operator<=>(StrongId, StrongId) = default;
};

struct EntityTag {};
struct RelationTag {};
struct AttrTypeTag {};

using EntityId = StrongId<EntityTag>;
using RelationId = StrongId<RelationTag>;
using AttrTypeId = StrongId<AttrTypeTag>;

// Bijection between string labels and dense ids 0..size()-1, in order of
// first insertion.
template <typename Id>
class LabelTable {
 public:
  Id Intern(std::string_view label) {
    auto it = index_.find(std::string(label));
    if (it != index_.end()) return it->second;
    Id id(static_cast<std::uint32_t>(labels_.size()));
    labels_.emplace_back(label);
    index_.emplace(labels_.back(), id);
    return id;
  }

  std::optional<Id> Find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::string& Label(Id id) const {
    if (id.index() >= labels_.size()) {
      throw InvalidArgument("id " + std::to_string(id.value) +
                            " out of range");
    }
    return labels_[id.index()];
  }

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Id> index_;
};

enum class Direction : std::uint8_t { kForward = 0, kReverse = 1 };

// A relation type plus the direction in which an edge of that type is
// traversed. For a stored edge (n, p, v), v sees n through p Forward and n
// sees v through p Reverse.
struct OrientedRelation {
  RelationId relation;
  Direction direction = Direction::kForward;

  constexpr OrientedRelation Reversed() const {
    return {relation, direction == Direction::kForward ? Direction::kReverse
                                                       : Direction::kForward};
  }

  friend constexpr auto operator<=>(const OrientedRelation&,
                                    const OrientedRelation&) = default;
};

}  // namespace mrap

template <typename Tag>
struct std::hash<mrap::StrongId<Tag>> {
  std::size_t operator()(mrap::StrongId<Tag> id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};

#endif  // MRAP_IDS_H_

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

#ifndef MRAP_GRAPH_H_
#define MRAP_GRAPH_H_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mrap/ids.h"

namespace mrap {

struct Triple {
  std::string head;
  std::string relation;
  std::string tail;

  friend bool operator==(const Triple&, const Triple&) = default;
};

struct Edge {
  EntityId head;
  RelationId relation;
  EntityId tail;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// One incidence of an edge as seen from a node.
struct Neighbor {
  EntityId node;
  OrientedRelation link;

  friend auto operator<=>(const Neighbor&, const Neighbor&) = default;
};

// Immutable multi-relational graph. Every stored edge (h, p, t) appears in
// the adjacency of t as (h, p Forward) and in the adjacency of h as
// (t, p Reverse). Adjacency lists are sorted by (node, relation, direction).
class KnowledgeGraph {
 public:
  class Builder {
   public:
    EntityId AddEntity(std::string_view label);
    RelationId AddRelation(std::string_view label);
    // Duplicate triples are stored once.
    void AddTriple(std::string_view head, std::string_view relation,
                   std::string_view tail);
    KnowledgeGraph Build() &&;

   private:
    LabelTable<EntityId> entities_;
    LabelTable<RelationId> relations_;
    std::vector<Edge> edges_;
  };

  KnowledgeGraph() = default;

  std::size_t num_entities() const { return entities_.size(); }
  std::size_t num_relations() const { return relations_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const LabelTable<EntityId>& entities() const { return entities_; }
  const LabelTable<RelationId>& relations() const { return relations_; }
  // Edges in order of first insertion.
  std::span<const Edge> edges() const { return edges_; }

  // Throws InvalidArgument for an unknown entity.
  std::span<const Neighbor> neighbors(EntityId v) const;

  std::size_t num_adjacency_entries() const { return adjacency_.size(); }

 private:
  LabelTable<EntityId> entities_;
  LabelTable<RelationId> relations_;
  std::vector<Edge> edges_;
  // CSR layout: neighbors of v live in adjacency_[offsets_[v], offsets_[v+1]).
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
};

KnowledgeGraph BuildGraph(std::span<const Triple> triples);

}  // namespace mrap

#endif  // MRAP_GRAPH_H_

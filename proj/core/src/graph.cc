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

#include "mrap/graph.h"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

namespace mrap {

EntityId KnowledgeGraph::Builder::AddEntity(std::string_view label) {
  return entities_.Intern(label);
}

RelationId KnowledgeGraph::Builder::AddRelation(std::string_view label) {
  return relations_.Intern(label);
}

void KnowledgeGraph::Builder::AddTriple(std::string_view head,
                                        std::string_view relation,
                                        std::string_view tail) {
  if (head.empty() || relation.empty() || tail.empty()) {
    throw InvalidArgument("triple fields must be nonempty");
  }
  const EntityId h = entities_.Intern(head);
  const RelationId p = relations_.Intern(relation);
  const EntityId t = entities_.Intern(tail);
  edges_.push_back({h, p, t});
}

KnowledgeGraph KnowledgeGraph::Builder::Build() && {
  KnowledgeGraph g;
  g.entities_ = std::move(entities_);
  g.relations_ = std::move(relations_);

  // Keep first occurrences, drop later duplicates.
  std::set<Edge> seen;
  g.edges_.reserve(edges_.size());
  for (const Edge& e : edges_) {
    if (seen.insert(e).second) g.edges_.push_back(e);
  }

  const std::size_t n = g.entities_.size();
  std::vector<std::size_t> degree(n, 0);
  for (const Edge& e : g.edges_) {
    ++degree[e.tail.index()];
    ++degree[e.head.index()];
  }
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) {
    g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  }
  g.adjacency_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const Edge& e : g.edges_) {
    g.adjacency_[cursor[e.tail.index()]++] =
        Neighbor{e.head, {e.relation, Direction::kForward}};
    g.adjacency_[cursor[e.head.index()]++] =
        Neighbor{e.tail, {e.relation, Direction::kReverse}};
  }
  for (std::size_t v = 0; v < n; ++v) {
    std::sort(g.adjacency_.begin() + g.offsets_[v],
              g.adjacency_.begin() + g.offsets_[v + 1]);
  }
  return g;
}

std::span<const Neighbor> KnowledgeGraph::neighbors(EntityId v) const {
  if (v.index() >= num_entities()) {
    throw InvalidArgument("entity id " + std::to_string(v.value) +
                          " out of range");
  }
  return std::span<const Neighbor>(adjacency_)
      .subspan(offsets_[v.index()],
               offsets_[v.index() + 1] - offsets_[v.index()]);
}

KnowledgeGraph BuildGraph(std::span<const Triple> triples) {
  KnowledgeGraph::Builder builder;
  for (const Triple& t : triples) {
    builder.AddTriple(t.head, t.relation, t.tail);
  }
  return std::move(builder).Build();
}

}  // namespace mrap

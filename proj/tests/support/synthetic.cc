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

#include "support/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <utility>

#include "mrap/errors.h"

namespace mrap::testing {
namespace {

std::string Name(const char* prefix, int i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%d", prefix, i);
  return buf;
}

int UniformInt(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double Uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

bool Coin(std::mt19937_64& rng, double p) {
  return std::bernoulli_distribution(p)(rng);
}

struct Latent {
  std::vector<Triple> triples;
  std::vector<double> t;
};

// Random tree over n nodes. Node i > 0 hangs off an earlier node through a
// random relation that shifts the latent coordinate by offset[r] + noise.
Latent RandomTree(std::mt19937_64& rng, int n, int relations, double noise) {
  std::vector<double> offset(relations);
  for (double& d : offset) d = Uniform(rng, -3.0, 3.0);
  std::normal_distribution<double> jitter(0.0, noise);
  Latent out;
  out.t.resize(n);
  out.t[0] = Uniform(rng, 0.0, 10.0);
  for (int i = 1; i < n; ++i) {
    const int parent = UniformInt(rng, 0, i - 1);
    const int r = UniformInt(rng, 0, relations - 1);
    const double step = offset[r] + (noise > 0 ? jitter(rng) : 0.0);
    // Alternate the stored direction so both orientations appear. A stored
    // edge (h, r, t) always means t = h + step.
    if (Coin(rng, 0.5)) {
      out.t[i] = out.t[parent] + step;
      out.triples.push_back({Name("e", parent), Name("r", r), Name("e", i)});
    } else {
      out.t[i] = out.t[parent] - step;
      out.triples.push_back({Name("e", i), Name("r", r), Name("e", parent)});
    }
  }
  return out;
}

}  // namespace

DatasetBundle Mask(const DatasetBundle& bundle,
                   const std::vector<bool>& observed) {
  if (observed.size() != bundle.attrs.size()) {
    throw InvalidArgument("mask does not match the attribute table");
  }
  std::vector<Status> statuses(observed.size());
  DatasetBundle out;
  out.graph = bundle.graph;
  out.truth = bundle.truth;
  out.split = bundle.split;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    statuses[i] = observed[i] ? Status::kObserved : Status::kMissing;
    out.split[i] = observed[i] ? Split::kTrain : Split::kTest;
  }
  out.attrs = bundle.attrs.WithStatuses(statuses, bundle.truth);
  return out;
}

DatasetBundle MaskedBundle(
    const std::vector<Triple>& triples,
    const std::vector<AttributeRecord>& records,
    const std::function<bool(const AttributeEntry&)>& observed) {
  DatasetBundle full = MakeBundle(triples, records);
  std::vector<bool> mask(full.attrs.size());
  for (std::size_t i = 0; i < mask.size(); ++i) {
    mask[i] = observed(full.attrs.entry(i));
  }
  return Mask(full, mask);
}

DatasetBundle RandomInstance(std::uint64_t seed,
                             const RandomInstanceOptions& options) {
  for (std::uint64_t attempt = 0;; ++attempt) {
    std::mt19937_64 rng(seed * 1000003 + attempt);
    const int n = UniformInt(rng, 5, options.max_nodes);
    const int relations = UniformInt(rng, 1, options.max_relations);
    const int types = UniformInt(rng, 1, options.max_attr_types);
    Latent latent = RandomTree(rng, n, relations, 0.5);
    for (int k = 0; k < n / 4; ++k) {
      const int u = UniformInt(rng, 0, n - 1);
      const int v = UniformInt(rng, 0, n - 1);
      if (u == v) continue;
      latent.triples.push_back({Name("e", u),
                                Name("r", UniformInt(rng, 0, relations - 1)),
                                Name("e", v)});
    }
    std::vector<double> alpha(types), beta(types);
    for (int a = 0; a < types; ++a) {
      alpha[a] = Uniform(rng, 0.5, 2.0) * (Coin(rng, 0.5) ? 1.0 : -1.0);
      beta[a] = Uniform(rng, -50.0, 50.0);
    }
    std::normal_distribution<double> noise(0.0, options.noise * 10.0);
    std::vector<AttributeRecord> records;
    for (int v = 0; v < n; ++v) {
      const int forced = UniformInt(rng, 0, types - 1);
      for (int a = 0; a < types; ++a) {
        if (a != forced && !Coin(rng, 0.75)) continue;
        records.push_back({Name("e", v), Name("a", a),
                           alpha[a] * latent.t[v] + beta[a] + noise(rng)});
      }
    }
    DatasetBundle full = MakeBundle(latent.triples, records);
    std::vector<bool> mask(full.attrs.size());
    for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = Coin(rng, 0.6);
    for (std::size_t v = 0; v < full.attrs.num_entities(); ++v) {
      const std::size_t first = full.attrs.FirstIndexOf(EntityId{
          static_cast<std::uint32_t>(v)});
      const auto entries = full.attrs.EntriesOf(
          EntityId{static_cast<std::uint32_t>(v)});
      bool any = false;
      for (std::size_t k = 0; k < entries.size(); ++k) any |= mask[first + k];
      if (!any && !entries.empty()) mask[first] = true;
    }
    std::size_t observed = 0;
    std::vector<int> per_type(full.attrs.num_types(), 0);
    for (std::size_t i = 0; i < mask.size(); ++i) {
      if (!mask[i]) continue;
      ++observed;
      ++per_type[full.attrs.entry(i).attr.index()];
    }
    const bool enough =
        observed >= options.min_observed * static_cast<double>(mask.size()) &&
        observed < mask.size() &&
        std::all_of(per_type.begin(), per_type.end(),
                    [](int c) { return c >= 2; });
    if (enough) return Mask(full, mask);
  }
}

DatasetBundle PlantedInstance(std::uint64_t seed, int nodes) {
  constexpr int kTypes = 3;
  constexpr int kRelations = 2;
  for (std::uint64_t attempt = 0;; ++attempt) {
    std::mt19937_64 rng(seed * 7919 + attempt);
    const Latent latent = RandomTree(rng, nodes, kRelations, 0.0);
    std::vector<double> alpha(kTypes), beta(kTypes);
    for (int a = 0; a < kTypes; ++a) {
      alpha[a] = Uniform(rng, 0.5, 3.0) * (Coin(rng, 0.5) ? 1.0 : -1.0);
      beta[a] = Uniform(rng, -100.0, 100.0);
    }
    std::vector<AttributeRecord> records;
    for (int v = 0; v < nodes; ++v) {
      const int forced = UniformInt(rng, 0, kTypes - 1);
      for (int a = 0; a < kTypes; ++a) {
        if (a != forced && !Coin(rng, 0.8)) continue;
        records.push_back({Name("e", v), Name("a", a),
                           alpha[a] * latent.t[v] + beta[a]});
      }
    }
    DatasetBundle full = MakeBundle(latent.triples, records);
    std::vector<bool> mask(full.attrs.size(), false);
    std::vector<int> per_type(kTypes, 0);
    std::size_t missing = 0;
    for (std::size_t v = 0; v < full.attrs.num_entities(); ++v) {
      const EntityId id{static_cast<std::uint32_t>(v)};
      const std::size_t first = full.attrs.FirstIndexOf(id);
      const std::size_t count = full.attrs.EntriesOf(id).size();
      const std::size_t keep = first + UniformInt(rng, 0, count - 1);
      for (std::size_t i = first; i < first + count; ++i) {
        mask[i] = i == keep || Coin(rng, 0.4);
        if (mask[i]) {
          ++per_type[full.attrs.entry(i).attr.index()];
        } else {
          ++missing;
        }
      }
    }
    if (missing > 0 && std::all_of(per_type.begin(), per_type.end(),
                                   [](int c) { return c >= 3; })) {
      return Mask(full, mask);
    }
  }
}

DatasetBundle GenealogyInstance(std::uint64_t seed, int people) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> generation(30.0, 5.0);
  std::normal_distribution<double> lifespan(70.0, 3.0);
  std::vector<double> birth(people);
  std::vector<Triple> triples;
  for (int i = 0; i < people; ++i) {
    if (i < 20 || Coin(rng, 0.1)) {
      birth[i] = Uniform(rng, 1700.0, 1900.0);
      continue;
    }
    const int parent = UniformInt(rng, std::max(0, i - 200), i - 1);
    birth[i] = birth[parent] + generation(rng);
    triples.push_back({Name("p", parent), "parent_of", Name("p", i)});
  }
  std::vector<AttributeRecord> records;
  for (int i = 0; i < people; ++i) {
    records.push_back({Name("p", i), "date_of_birth", birth[i]});
    if (Coin(rng, 0.6)) {
      records.push_back({Name("p", i), "date_of_death",
                         birth[i] + lifespan(rng)});
    }
  }
  const DatasetBundle full = MakeBundle(triples, records);
  SplitSpec spec;
  spec.seed = seed;
  return SubsampleObserved(SplitAttributes(full, spec), 0.5, seed + 1);
}

DatasetBundle LargeInstance(std::uint64_t seed, int nodes, int relations,
                            int attr_types, double observed) {
  std::mt19937_64 rng(seed);
  Latent latent = RandomTree(rng, nodes, relations, 1.0);
  for (int k = 0; k < 2 * nodes; ++k) {
    const int u = UniformInt(rng, 0, nodes - 1);
    const int v = std::clamp(u + UniformInt(rng, -5, 5), 0, nodes - 1);
    if (u == v) continue;
    latent.triples.push_back({Name("e", u),
                              Name("r", UniformInt(rng, 0, relations - 1)),
                              Name("e", v)});
  }
  std::vector<double> alpha(attr_types), beta(attr_types);
  for (int a = 0; a < attr_types; ++a) {
    alpha[a] = Uniform(rng, 0.5, 2.0);
    beta[a] = Uniform(rng, -100.0, 100.0);
  }
  std::normal_distribution<double> noise(0.0, 1.0);
  std::vector<AttributeRecord> records;
  for (int v = 0; v < nodes; ++v) {
    for (int a = 0; a < attr_types; ++a) {
      if (a > 0 && !Coin(rng, 0.5)) continue;
      records.push_back({Name("e", v), Name("a", a),
                         alpha[a] * latent.t[v] + beta[a] + noise(rng)});
    }
  }
  DatasetBundle full = MakeBundle(latent.triples, records);
  std::vector<bool> mask(full.attrs.size());
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = Coin(rng, observed);
  return Mask(full, mask);
}

void WriteDatasetFiles(const DatasetBundle& bundle, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const KnowledgeGraph& g = bundle.graph;
  std::ofstream triples(dir + "/triples.tsv");
  for (const Edge& e : g.edges()) {
    triples << g.entities().Label(e.head) << '\t'
            << g.relations().Label(e.relation) << '\t'
            << g.entities().Label(e.tail) << '\n';
  }
  std::ofstream attrs(dir + "/attrs.tsv");
  char buf[64];
  for (std::size_t i = 0; i < bundle.attrs.size(); ++i) {
    const AttributeEntry& entry = bundle.attrs.entry(i);
    std::snprintf(buf, sizeof(buf), "%.17g", bundle.truth[i]);
    attrs << g.entities().Label(entry.entity) << '\t'
          << bundle.attrs.types().Label(entry.attr) << '\t' << buf << '\n';
  }
}

}  // namespace mrap::testing

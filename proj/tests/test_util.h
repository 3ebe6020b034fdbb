//
// Copyright 2026 The Hyperbound Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef HYPERBOUND_TESTS_TEST_UTIL_H_
#define HYPERBOUND_TESTS_TEST_UTIL_H_

#include <algorithm>
#include <cstdint>
#include <map>
#include <ranges>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hyperbound/hypergraph.h"
#include "hyperbound/io.h"
#include "hyperbound/mix64.h"

namespace hyperbound::testing {

// gmock here cannot match std::span directly.
template <typename Range>
auto Vec(const Range& r) {
  return std::vector<std::ranges::range_value_t<Range>>(r.begin(), r.end());
}

inline EdgeRecord E(std::uint64_t id, std::vector<std::uint64_t> owners,
                    std::optional<double> weight = std::nullopt) {
  EdgeRecord r{EdgeId{id}, {}, weight};
  for (std::uint64_t u : owners) r.owners.push_back(VertexId{u});
  return r;
}

inline std::vector<EdgeId> Ids(std::vector<std::uint64_t> ids) {
  std::vector<EdgeId> out;
  for (std::uint64_t id : ids) out.push_back(EdgeId{id});
  return out;
}

inline Hypergraph BuildOrDie(std::vector<EdgeRecord> edges,
                             const CapacityMap& caps = {}) {
  return *Hypergraph::Build(std::move(edges), caps);
}

// Path a-b-c-d with users a=1, b=2, c=3, d=4: e1={a,b}, e2={b,c}, e3={c,d}.
inline Hypergraph PathGraph() {
  return BuildOrDie({E(1, {1, 2}), E(2, {2, 3}), E(3, {3, 4})});
}

// Triangle over users u=1, v=2, w=3: e1={u,v}, e2={v,w}, e3={u,w}.
inline Hypergraph TriangleGraph() {
  return BuildOrDie({E(1, {1, 2}), E(2, {2, 3}), E(3, {1, 3})});
}

struct RandomInstance {
  Hypergraph graph;
  CapacityMap caps;
  std::uint64_t seed = 0;
};

// Small random instance: up to `max_users` users and `max_edges` edges,
// fixed or Zipf edge sizes, uniform or Zipf popularity, uniform capacity in
// [0, max_capacity] with occasional per-user overrides.
inline RandomInstance MakeRandomInstance(std::uint64_t seed,
                                         std::size_t max_users,
                                         std::size_t max_edges,
                                         std::uint64_t max_capacity) {
  Mix64Stream rng(Mix64(seed, 0xC0FFEE));
  GeneratorSpec spec;
  spec.users = 1 + rng.NextBelow(max_users);
  spec.edges = rng.NextBelow(max_edges + 1);
  const std::size_t max_size = std::min<std::size_t>(spec.users, 5);
  if (rng.NextBelow(2) == 0) {
    spec.edge_size = FixedSize{1 + rng.NextBelow(max_size)};
  } else {
    spec.edge_size = ZipfSize{0.5 + rng.NextUnit() * 1.5, max_size};
  }
  if (rng.NextBelow(2) == 0) {
    spec.popularity = UniformPopularity{};
  } else {
    spec.popularity = ZipfPopularity{0.3 + rng.NextUnit() * 1.2};
  }
  spec.seed = rng.Next();

  CapacityMap caps(rng.NextBelow(max_capacity + 1));
  if (rng.NextBelow(3) == 0) {
    const std::size_t overrides = 1 + rng.NextBelow(spec.users);
    for (std::size_t i = 0; i < overrides; ++i) {
      caps.Set(VertexId{rng.NextBelow(spec.users)},
               rng.NextBelow(max_capacity + 1));
    }
  }
  Hypergraph generated = *Generate(spec);
  Hypergraph g = *Hypergraph::Build(generated.ToRecords(), caps);
  return {std::move(g), std::move(caps), seed};
}

// Degree of every vertex id in (V, selection), counted from owner lists.
inline std::map<VertexId, std::uint64_t> CountDegrees(
    const Hypergraph& g, const std::vector<EdgeId>& selection) {
  std::map<VertexId, std::uint64_t> degree;
  for (VertexId u : g.vertices()) degree[u] = 0;
  for (EdgeId id : selection) {
    for (VertexId u : g.owners(*g.FindEdge(id))) ++degree[u];
  }
  return degree;
}

inline bool IsFeasible(const Hypergraph& g, const CapacityMap& caps,
                       const std::vector<EdgeId>& selection) {
  for (const auto& [u, d] : CountDegrees(g, selection)) {
    if (d > caps.Lookup(u)) return false;
  }
  return true;
}

// Maximum feasible selection size by enumerating every subset of H.
inline std::size_t EnumerateOptimum(const Hypergraph& g,
                                    const CapacityMap& caps) {
  const std::size_t m = g.num_edges();
  std::size_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    const std::size_t size = static_cast<std::size_t>(std::popcount(mask));
    if (size <= best) continue;
    std::vector<EdgeId> selection;
    for (std::size_t e = 0; e < m; ++e) {
      if (mask >> e & 1) selection.push_back(g.edge_ids()[e]);
    }
    if (IsFeasible(g, caps, selection)) best = size;
  }
  return best;
}

// Straight transcription of the round loop over ordered containers, used to
// cross-check the engine. `rank(u, e)` gives user u's key for edge e; lower
// is preferred. Returns the accepted set of every round.
template <typename RankFn>
std::vector<std::set<EdgeId>> ReferenceRounds(const Hypergraph& g,
                                              const CapacityMap& caps,
                                              const RankFn& rank,
                                              std::size_t max_rounds) {
  std::map<VertexId, std::uint64_t> d;
  std::set<VertexId> saturated;
  std::set<EdgeId> eligible;
  std::map<EdgeId, std::set<VertexId>> owners;
  std::map<VertexId, std::set<EdgeId>> incident;
  for (VertexId u : g.vertices()) {
    d[u] = 0;
    if (caps.Lookup(u) == 0) saturated.insert(u);
  }
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    const EdgeId id = g.edge_ids()[e];
    for (VertexId u : g.owners(e)) {
      owners[id].insert(u);
      incident[u].insert(id);
    }
    bool blocked = false;
    for (VertexId u : g.owners(e)) blocked |= saturated.count(u) > 0;
    if (!blocked) eligible.insert(id);
  }

  std::vector<std::set<EdgeId>> rounds;
  for (std::size_t r = 0; r < max_rounds && !eligible.empty(); ++r) {
    std::map<EdgeId, std::set<VertexId>> proposers;
    for (VertexId u : g.vertices()) {
      if (saturated.count(u)) continue;
      std::vector<std::pair<decltype(rank(u, EdgeId{})), EdgeId>> mine;
      for (EdgeId id : incident[u]) {
        if (eligible.count(id)) mine.emplace_back(rank(u, id), id);
      }
      std::sort(mine.begin(), mine.end());
      const std::uint64_t slack = caps.Lookup(u) - d[u];
      for (std::size_t i = 0; i < mine.size() && i < slack; ++i) {
        proposers[mine[i].second].insert(u);
      }
    }
    std::set<EdgeId> accepted;
    for (const auto& [id, who] : proposers) {
      if (who == owners[id]) accepted.insert(id);
    }
    std::set<VertexId> newly;
    for (EdgeId id : accepted) {
      eligible.erase(id);
      for (VertexId u : owners[id]) {
        if (++d[u] == caps.Lookup(u)) newly.insert(u);
      }
    }
    for (VertexId u : newly) {
      saturated.insert(u);
      for (EdgeId id : incident[u]) eligible.erase(id);
    }
    rounds.push_back(accepted);
    if (accepted.empty()) break;
  }
  return rounds;
}

}  // namespace hyperbound::testing

#endif  // HYPERBOUND_TESTS_TEST_UTIL_H_

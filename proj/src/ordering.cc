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

#include "hyperbound/ordering.h"

#include <algorithm>
#include <bit>
#include <utility>

#include "src/strings.h"
#include "hyperbound/errors.h"
#include "hyperbound/mix64.h"

namespace hyperbound {

std::string_view OrderingKindName(OrderingKind kind) {
  switch (kind) {
    case OrderingKind::kUniversalRandom:
      return "hash";
    case OrderingKind::kWeightDescending:
      return "weight";
  }
  return "unknown";
}

absl::StatusOr<RankKey> Rank(const OrderingSpec& spec, const Hyperedge& h) {
  switch (spec.kind) {
    case OrderingKind::kUniversalRandom:
      return RankKey{Mix64(spec.seed, h.id.value), 0, h.id};
    case OrderingKind::kWeightDescending: {
      if (!h.weight.has_value()) {
        return MakeError(ErrorKind::kMissingWeight,
                         internal::StrCat("edge ", h.id.value, " has no weight"));
      }
      // +0.0 for -0.0 so both zeros share a key.
      const double w = *h.weight == 0.0 ? 0.0 : *h.weight;
      return RankKey{~std::bit_cast<std::uint64_t>(w),
                     Mix64(spec.seed, h.id.value), h.id};
    }
  }
  return MakeError(ErrorKind::kInvalidConfig, "unknown ordering kind");
}

absl::StatusOr<Order> Compare(const OrderingSpec& spec, const Hyperedge& a,
                              const Hyperedge& b) {
  absl::StatusOr<RankKey> ka = Rank(spec, a);
  if (!ka.ok()) return ka.status();
  absl::StatusOr<RankKey> kb = Rank(spec, b);
  if (!kb.ok()) return kb.status();
  return *ka < *kb ? Order::kLess : Order::kGreater;
}

absl::StatusOr<std::vector<EdgeIndex>> SortEdges(const Hypergraph& g,
                                                 const OrderingSpec& spec) {
  std::vector<std::pair<RankKey, EdgeIndex>> keyed;
  keyed.reserve(g.num_edges());
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    absl::StatusOr<RankKey> key = Rank(spec, g.edge(e));
    if (!key.ok()) return key.status();
    keyed.emplace_back(*key, e);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<EdgeIndex> order;
  order.reserve(keyed.size());
  for (const auto& [key, e] : keyed) order.push_back(e);
  return order;
}

absl::StatusOr<PreferenceIndex> PreferenceIndex::Build(
    const Hypergraph& g, const Preference& preference) {
  PreferenceIndex index;
  index.offsets_.assign(g.num_vertices() + 1, 0);
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    index.offsets_[v + 1] = index.offsets_[v] + g.incident(v).size();
  }
  index.ranked_.resize(index.offsets_.back());

  if (const auto* spec = std::get_if<OrderingSpec>(&preference)) {
    absl::StatusOr<std::vector<EdgeIndex>> order = SortEdges(g, *spec);
    if (!order.ok()) return order.status();
    // Walking the global order and appending to each owner keeps every
    // per-user list in global order.
    std::vector<std::size_t> cursor(index.offsets_.begin(),
                                    index.offsets_.end() - 1);
    for (EdgeIndex e : *order) {
      for (VertexIndex v : g.owner_indices(e)) index.ranked_[cursor[v]++] = e;
    }
    index.universal_ = true;
    return index;
  }

  const UserPreference& rank = std::get<UserPreference>(preference);
  std::vector<std::pair<RankKey, EdgeIndex>> keyed;
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    keyed.clear();
    for (EdgeIndex e : g.incident(v)) {
      keyed.emplace_back(rank(g.vertices()[v], g.edge(e)), e);
    }
    std::sort(keyed.begin(), keyed.end());
    for (std::size_t i = 0; i < keyed.size(); ++i) {
      index.ranked_[index.offsets_[v] + i] = keyed[i].second;
    }
  }
  index.universal_ = false;
  return index;
}

}  // namespace hyperbound

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

#ifndef HYPERBOUND_ORDERING_H_
#define HYPERBOUND_ORDERING_H_

#include <compare>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "hyperbound/hypergraph.h"

namespace hyperbound {

enum class OrderingKind {
  // One seeded hash order over edge ids, shared by every user.
  kUniversalRandom,
  // Heavier edges first; ties by the seeded hash, then by edge id.
  kWeightDescending,
};

struct OrderingSpec {
  OrderingKind kind = OrderingKind::kUniversalRandom;
  std::uint64_t seed = 0;

  static OrderingSpec UniversalRandom(std::uint64_t seed) {
    return {OrderingKind::kUniversalRandom, seed};
  }
  static OrderingSpec WeightDescending(std::uint64_t seed) {
    return {OrderingKind::kWeightDescending, seed};
  }

  friend bool operator==(const OrderingSpec&, const OrderingSpec&) = default;
};

std::string_view OrderingKindName(OrderingKind kind);

// Sort key of an edge. Lower keys are more preferred. `tie_break` is the edge
// id, so keys of distinct edges never compare equal.
//
// kUniversalRandom:  primary = Mix64(seed, id), secondary = 0.
// kWeightDescending: primary = ~bits(weight) (IEEE-754 bit patterns of
//                    non-negative doubles are monotone), secondary =
//                    Mix64(seed, id).
struct RankKey {
  std::uint64_t primary = 0;
  std::uint64_t secondary = 0;
  EdgeId tie_break;

  friend auto operator<=>(const RankKey&, const RankKey&) = default;
};

// MissingWeight when kWeightDescending meets an unweighted edge.
absl::StatusOr<RankKey> Rank(const OrderingSpec& spec, const Hyperedge& h);

enum class Order { kLess, kGreater };

// Strict total order on edges with distinct ids; kLess means `a` is preferred.
absl::StatusOr<Order> Compare(const OrderingSpec& spec, const Hyperedge& a,
                              const Hyperedge& b);

// A user-specific order: called as (user, edge) and must induce a strict
// total order on the edges of each user.
using UserPreference =
    std::function<RankKey(VertexId user, const Hyperedge& edge)>;

using Preference = std::variant<OrderingSpec, UserPreference>;

// Every edge index of `g` sorted from most to least preferred.
absl::StatusOr<std::vector<EdgeIndex>> SortEdges(const Hypergraph& g,
                                                 const OrderingSpec& spec);

// Each user's incident edges, most preferred first.
class PreferenceIndex {
 public:
  static absl::StatusOr<PreferenceIndex> Build(const Hypergraph& g,
                                               const Preference& preference);

  std::span<const EdgeIndex> ranked(VertexIndex v) const {
    return {ranked_.data() + offsets_[v], ranked_.data() + offsets_[v + 1]};
  }
  bool universal() const { return universal_; }

 private:
  bool universal_ = true;
  std::vector<std::size_t> offsets_{0};
  std::vector<EdgeIndex> ranked_;
};

}  // namespace hyperbound

#endif  // HYPERBOUND_ORDERING_H_

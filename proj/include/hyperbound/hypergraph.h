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

#ifndef HYPERBOUND_HYPERGRAPH_H_
#define HYPERBOUND_HYPERGRAPH_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"

namespace hyperbound {

template <typename Tag>
struct StrongId {
  std::uint64_t value = 0;

  friend auto operator<=>(const StrongId&, const StrongId&) = default;
};

// A user. Ids need not be contiguous.
using VertexId = StrongId<struct VertexTag>;
// A record. Unique within one hypergraph.
using EdgeId = StrongId<struct EdgeTag>;

// Position of a vertex or edge inside a Hypergraph. Vertices and edges are
// stored in ascending id order, so dense order and id order coincide.
using VertexIndex = std::uint32_t;
using EdgeIndex = std::uint32_t;

// Input form of one record: its id, owners (duplicates allowed, collapsed on
// build) and an optional non-negative preference weight.
struct EdgeRecord {
  EdgeId id;
  std::vector<VertexId> owners;
  std::optional<double> weight;

  friend bool operator==(const EdgeRecord&, const EdgeRecord&) = default;
};

// Read-only view of one stored hyperedge. Owners are sorted and distinct.
struct Hyperedge {
  EdgeId id;
  std::span<const VertexId> owners;
  std::optional<double> weight;
};

// Per-user budgets: `overrides[u]` when present, else `default_capacity`.
class CapacityMap {
 public:
  CapacityMap() = default;
  explicit CapacityMap(std::uint64_t default_capacity)
      : default_(default_capacity) {}
  CapacityMap(std::uint64_t default_capacity,
              std::map<VertexId, std::uint64_t> overrides)
      : default_(default_capacity), overrides_(std::move(overrides)) {}

  std::uint64_t Lookup(VertexId u) const {
    if (overrides_.empty()) return default_;
    auto it = overrides_.find(u);
    return it == overrides_.end() ? default_ : it->second;
  }

  void Set(VertexId u, std::uint64_t capacity) { overrides_[u] = capacity; }

  std::uint64_t default_capacity() const { return default_; }
  const std::map<VertexId, std::uint64_t>& overrides() const {
    return overrides_;
  }
  std::uint64_t MaxCapacity() const;

 private:
  std::uint64_t default_ = 1;
  std::map<VertexId, std::uint64_t> overrides_;
};

// Ownership hypergraph G = (V, H). Immutable once built; concurrent reads are
// safe.
//
// Storage is CSR in both directions: edge -> owners and vertex -> incident
// edges. Parallel edges (identical owner sets, distinct ids) are kept apart.
class Hypergraph {
 public:
  // Fails with DuplicateEdgeId or EmptyOwnerList. The vertex set is the union
  // of all owners plus every vertex named in `capacities.overrides()`.
  static absl::StatusOr<Hypergraph> Build(std::vector<EdgeRecord> edges,
                                          const CapacityMap& capacities = {});

  Hypergraph() = default;

  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edge_ids_.size(); }

  std::span<const VertexId> vertices() const { return vertices_; }
  std::span<const EdgeId> edge_ids() const { return edge_ids_; }

  Hyperedge edge(EdgeIndex e) const {
    return {edge_ids_[e], owners(e), weights_[e]};
  }
  std::span<const VertexId> owners(EdgeIndex e) const {
    return {owner_ids_.data() + owner_offsets_[e],
            owner_ids_.data() + owner_offsets_[e + 1]};
  }
  std::span<const VertexIndex> owner_indices(EdgeIndex e) const {
    return {owner_index_.data() + owner_offsets_[e],
            owner_index_.data() + owner_offsets_[e + 1]};
  }
  std::span<const EdgeIndex> incident(VertexIndex v) const {
    return {incidence_.data() + incidence_offsets_[v],
            incidence_.data() + incidence_offsets_[v + 1]};
  }

  std::optional<VertexIndex> FindVertex(VertexId u) const;
  std::optional<EdgeIndex> FindEdge(EdgeId e) const;

  // Number of edges owned by `u`; UnknownVertex when u is not in V.
  absl::StatusOr<std::size_t> Degree(VertexId u) const;

  // Canonical edge list: ascending ids, sorted owners.
  std::vector<EdgeRecord> ToRecords() const;

  // Order-independent digest of (edge id, owners) used to detect comparisons
  // across different instances.
  std::uint64_t Fingerprint() const;

  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;

 private:
  std::vector<VertexId> vertices_;
  std::vector<EdgeId> edge_ids_;
  std::vector<std::optional<double>> weights_;
  std::vector<std::size_t> owner_offsets_{0};
  std::vector<VertexId> owner_ids_;
  std::vector<VertexIndex> owner_index_;
  std::vector<std::size_t> incidence_offsets_{0};
  std::vector<EdgeIndex> incidence_;
};

enum class Severity { kInfo, kWarning, kError };

struct Diagnostic {
  Severity severity;
  std::string message;
};

// Reports edges made unmatchable by zero-capacity owners, capacity overrides
// for users that own nothing, and any disagreement between the incidence index
// and the owner lists. An empty result means the instance is clean.
std::vector<Diagnostic> Validate(const Hypergraph& g, const CapacityMap& caps);

}  // namespace hyperbound

template <typename Tag>
struct std::hash<hyperbound::StrongId<Tag>> {
  std::size_t operator()(hyperbound::StrongId<Tag> id) const noexcept {
    return std::hash<std::uint64_t>{}(id.value);
  }
};

#endif  // HYPERBOUND_HYPERGRAPH_H_

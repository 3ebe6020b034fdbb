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

#include "hyperbound/hypergraph.h"

#include <algorithm>
#include <limits>
#include <numeric>
#include <utility>

#include "src/strings.h"
#include "hyperbound/errors.h"
#include "hyperbound/mix64.h"

namespace hyperbound {

std::uint64_t CapacityMap::MaxCapacity() const {
  std::uint64_t result = default_;
  for (const auto& [vertex, capacity] : overrides_) {
    result = std::max(result, capacity);
  }
  return result;
}

absl::StatusOr<Hypergraph> Hypergraph::Build(std::vector<EdgeRecord> edges,
                                             const CapacityMap& capacities) {
  if (edges.size() >= std::numeric_limits<EdgeIndex>::max()) {
    return MakeError(ErrorKind::kTooLarge,
                     internal::StrCat(edges.size(), " edges exceed index range"));
  }
  std::sort(edges.begin(), edges.end(),
            [](const EdgeRecord& a, const EdgeRecord& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (i > 0 && edges[i].id == edges[i - 1].id) {
      return MakeError(ErrorKind::kDuplicateEdgeId,
                       internal::StrCat("edge ", edges[i].id.value));
    }
    if (edges[i].owners.empty()) {
      return MakeError(ErrorKind::kEmptyOwnerList,
                       internal::StrCat("edge ", edges[i].id.value));
    }
  }

  Hypergraph g;
  g.edge_ids_.reserve(edges.size());
  g.weights_.reserve(edges.size());
  g.owner_offsets_.reserve(edges.size() + 1);
  for (EdgeRecord& record : edges) {
    std::vector<VertexId>& owners = record.owners;
    std::sort(owners.begin(), owners.end());
    owners.erase(std::unique(owners.begin(), owners.end()), owners.end());
    g.edge_ids_.push_back(record.id);
    g.weights_.push_back(record.weight);
    g.owner_ids_.insert(g.owner_ids_.end(), owners.begin(), owners.end());
    g.owner_offsets_.push_back(g.owner_ids_.size());
  }

  g.vertices_ = g.owner_ids_;
  for (const auto& [vertex, capacity] : capacities.overrides()) {
    g.vertices_.push_back(vertex);
  }
  std::sort(g.vertices_.begin(), g.vertices_.end());
  g.vertices_.erase(std::unique(g.vertices_.begin(), g.vertices_.end()),
                    g.vertices_.end());
  if (g.vertices_.size() >= std::numeric_limits<VertexIndex>::max()) {
    return MakeError(ErrorKind::kTooLarge, "vertex count exceeds index range");
  }

  g.owner_index_.resize(g.owner_ids_.size());
  std::vector<std::size_t> degree(g.vertices_.size() + 1, 0);
  for (std::size_t i = 0; i < g.owner_ids_.size(); ++i) {
    auto it = std::lower_bound(g.vertices_.begin(), g.vertices_.end(),
                               g.owner_ids_[i]);
    const auto v = static_cast<VertexIndex>(it - g.vertices_.begin());
    g.owner_index_[i] = v;
    ++degree[v + 1];
  }
  std::partial_sum(degree.begin(), degree.end(), degree.begin());
  g.incidence_offsets_ = degree;
  g.incidence_.resize(g.owner_ids_.size());
  std::vector<std::size_t> cursor(degree.begin(), degree.end() - 1);
  // Edges are visited in ascending order, so each incidence list is sorted.
  for (EdgeIndex e = 0; e < g.edge_ids_.size(); ++e) {
    for (VertexIndex v : g.owner_indices(e)) g.incidence_[cursor[v]++] = e;
  }
  return g;
}

std::optional<VertexIndex> Hypergraph::FindVertex(VertexId u) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), u);
  if (it == vertices_.end() || *it != u) return std::nullopt;
  return static_cast<VertexIndex>(it - vertices_.begin());
}

std::optional<EdgeIndex> Hypergraph::FindEdge(EdgeId e) const {
  auto it = std::lower_bound(edge_ids_.begin(), edge_ids_.end(), e);
  if (it == edge_ids_.end() || *it != e) return std::nullopt;
  return static_cast<EdgeIndex>(it - edge_ids_.begin());
}

absl::StatusOr<std::size_t> Hypergraph::Degree(VertexId u) const {
  std::optional<VertexIndex> v = FindVertex(u);
  if (!v.has_value()) {
    return MakeError(ErrorKind::kUnknownVertex,
                     internal::StrCat("vertex ", u.value));
  }
  return incident(*v).size();
}

std::vector<EdgeRecord> Hypergraph::ToRecords() const {
  std::vector<EdgeRecord> records;
  records.reserve(num_edges());
  for (EdgeIndex e = 0; e < num_edges(); ++e) {
    std::span<const VertexId> o = owners(e);
    records.push_back({edge_ids_[e], {o.begin(), o.end()}, weights_[e]});
  }
  return records;
}

std::uint64_t Hypergraph::Fingerprint() const {
  std::uint64_t h = Mix64(0x68797065726267ULL, num_edges());
  for (EdgeIndex e = 0; e < num_edges(); ++e) {
    h = Mix64(h, edge_ids_[e].value);
    for (VertexId u : owners(e)) h = Mix64(h ^ 0x5555, u.value);
  }
  return h;
}

std::vector<Diagnostic> Validate(const Hypergraph& g, const CapacityMap& caps) {
  std::vector<Diagnostic> out;
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    for (VertexId u : g.owners(e)) {
      if (caps.Lookup(u) == 0) {
        out.push_back({Severity::kWarning,
                       internal::StrCat("edge ", g.edge_ids()[e].value,
                                    " unmatchable via ", u.value)});
      }
    }
  }
  for (const auto& [u, capacity] : caps.overrides()) {
    std::optional<VertexIndex> v = g.FindVertex(u);
    if (!v.has_value() || g.incident(*v).empty()) {
      out.push_back({Severity::kInfo,
                     internal::StrCat("capacity override for vertex ", u.value,
                                  " which owns no edges")});
    }
  }

  // Full cross-scan: every (edge, owner) pair must appear exactly once in the
  // owner's incidence list and vice versa.
  std::size_t pairs = 0;
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    for (EdgeIndex e : g.incident(v)) {
      ++pairs;
      std::span<const VertexId> o = g.owners(e);
      if (!std::binary_search(o.begin(), o.end(), g.vertices()[v])) {
        out.push_back({Severity::kError,
                       internal::StrCat("incidence of vertex ", g.vertices()[v].value,
                                    " lists edge ", g.edge_ids()[e].value,
                                    " which it does not own")});
      }
    }
  }
  std::size_t owner_pairs = 0;
  for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
    for (VertexId u : g.owners(e)) {
      ++owner_pairs;
      std::optional<VertexIndex> v = g.FindVertex(u);
      std::span<const EdgeIndex> inc =
          v.has_value() ? g.incident(*v) : std::span<const EdgeIndex>{};
      if (!std::binary_search(inc.begin(), inc.end(), e)) {
        out.push_back({Severity::kError,
                       internal::StrCat("edge ", g.edge_ids()[e].value,
                                    " missing from incidence of vertex ",
                                    u.value)});
      }
    }
  }
  if (pairs != owner_pairs) {
    out.push_back({Severity::kError,
                   internal::StrCat("incidence holds ", pairs,
                                " entries but owner lists hold ", owner_pairs)});
  }
  return out;
}

}  // namespace hyperbound

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

#include "hyperbound/baselines.h"

#include <algorithm>

#include "src/strings.h"
#include "hyperbound/errors.h"

namespace hyperbound {
namespace {

std::vector<std::uint64_t> ResolveCapacities(const Hypergraph& g,
                                             const CapacityMap& caps) {
  std::vector<std::uint64_t> out(g.num_vertices());
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    out[v] = caps.Lookup(g.vertices()[v]);
  }
  return out;
}

bool Fits(const Hypergraph& g, EdgeIndex e,
          const std::vector<std::uint64_t>& remaining) {
  for (VertexIndex v : g.owner_indices(e)) {
    if (remaining[v] == 0) return false;
  }
  return true;
}

class BranchAndBound {
 public:
  BranchAndBound(const Hypergraph& g, std::vector<std::uint64_t> remaining)
      : g_(g), remaining_(std::move(remaining)) {}

  std::vector<EdgeIndex> Solve() {
    Visit(0);
    return best_;
  }

 private:
  void Visit(EdgeIndex e) {
    if (current_.size() > best_.size()) best_ = current_;
    if (e == g_.num_edges()) return;
    // Upper bound: every later edge that still fits on its own.
    std::size_t bound = current_.size();
    for (EdgeIndex f = e; f < g_.num_edges(); ++f) {
      if (Fits(g_, f, remaining_)) ++bound;
    }
    if (bound <= best_.size()) return;

    if (Fits(g_, e, remaining_)) {
      for (VertexIndex v : g_.owner_indices(e)) --remaining_[v];
      current_.push_back(e);
      Visit(e + 1);
      current_.pop_back();
      for (VertexIndex v : g_.owner_indices(e)) ++remaining_[v];
    }
    Visit(e + 1);
  }

  const Hypergraph& g_;
  std::vector<std::uint64_t> remaining_;
  std::vector<EdgeIndex> current_;
  std::vector<EdgeIndex> best_;
};

}  // namespace

std::string_view BaselineMethodName(BaselineMethod method) {
  return method == BaselineMethod::kGreedy ? "greedy" : "exact";
}

absl::StatusOr<BaselineResult> Greedy(const Hypergraph& g,
                                      const CapacityMap& caps,
                                      const OrderingSpec& ordering) {
  absl::StatusOr<std::vector<EdgeIndex>> order = SortEdges(g, ordering);
  if (!order.ok()) return order.status();
  return GreedyInOrder(g, caps, *order);
}

BaselineResult GreedyInOrder(const Hypergraph& g, const CapacityMap& caps,
                             std::span<const EdgeIndex> scan_order) {
  std::vector<std::uint64_t> remaining = ResolveCapacities(g, caps);
  std::vector<EdgeIndex> kept;
  for (EdgeIndex e : scan_order) {
    if (!Fits(g, e, remaining)) continue;
    for (VertexIndex v : g.owner_indices(e)) --remaining[v];
    kept.push_back(e);
  }
  std::sort(kept.begin(), kept.end());
  BaselineResult result;
  result.method = BaselineMethod::kGreedy;
  result.instance_fingerprint = g.Fingerprint();
  for (EdgeIndex e : kept) result.matching.push_back(g.edge_ids()[e]);
  return result;
}

absl::StatusOr<BaselineResult> ExactOptimal(const Hypergraph& g,
                                            const CapacityMap& caps,
                                            std::size_t limit) {
  if (g.num_edges() > limit) {
    return MakeError(ErrorKind::kTooLarge,
                     internal::StrCat(g.num_edges(), " edges exceed the limit of ",
                                  limit));
  }
  std::vector<EdgeIndex> best =
      BranchAndBound(g, ResolveCapacities(g, caps)).Solve();
  BaselineResult result;
  result.method = BaselineMethod::kExact;
  result.instance_fingerprint = g.Fingerprint();
  for (EdgeIndex e : best) result.matching.push_back(g.edge_ids()[e]);
  result.optimum = result.matching.size();
  return result;
}

}  // namespace hyperbound

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

#ifndef HYPERBOUND_ENGINE_H_
#define HYPERBOUND_ENGINE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "hyperbound/hypergraph.h"
#include "hyperbound/ordering.h"

namespace hyperbound {

// Round-synchronous contribution bounding.
//
// Each round, every unsaturated user proposes its `b(u) - d(u)` most preferred
// eligible edges. An edge is accepted when all of its owners proposed it in
// that round. Accepted edges join the matching M; users that reach their
// capacity become saturated and all their remaining edges leave the eligible
// set E. Because a user proposes at most its slack and only proposed edges are
// accepted, d(u) <= b(u) holds after every round.
//
// Under a universal ordering the globally most preferred eligible edge is the
// top proposal of each of its owners, so every round accepts at least one
// edge and the result equals the sequential greedy scan in the same order.

// Full engine state, indexed by dense vertex / edge position in the graph.
struct RoundState {
  std::vector<std::uint64_t> matched;   // d(u)
  std::vector<std::uint8_t> saturated;  // S(u)
  std::vector<std::uint8_t> eligible;   // h in E
  std::vector<std::uint8_t> selected;   // h in M
  std::size_t eligible_count = 0;
  std::size_t selected_count = 0;
  std::size_t round = 0;

  // M in ascending id order.
  std::vector<EdgeId> Matching(const Hypergraph& g) const;
  // E in ascending id order.
  std::vector<EdgeId> Eligible(const Hypergraph& g) const;

  friend bool operator==(const RoundState&, const RoundState&) = default;
};

struct EngineConfig {
  // nullopt = unbounded, which requires early_stop.
  std::optional<std::size_t> max_rounds;
  Preference ordering = OrderingSpec{};
  // Stop after a round that accepts nothing; the state is a fixed point.
  bool early_stop = true;
};

absl::Status ValidateConfig(const EngineConfig& config);

struct RoundRecord {
  std::size_t round = 0;  // 1-based
  std::size_t proposal_count = 0;
  std::vector<EdgeId> accepted;          // ascending
  std::vector<VertexId> newly_saturated;  // ascending

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

using RoundTrace = std::vector<RoundRecord>;

// One round's proposals in CSR form: `users` ascending, each followed by its
// proposed edges in preference order.
struct Proposals {
  std::vector<VertexIndex> users;
  std::vector<std::size_t> offsets{0};
  std::vector<EdgeIndex> edges;

  std::size_t message_count() const { return edges.size(); }
  std::span<const EdgeIndex> of(std::size_t i) const {
    return {edges.data() + offsets[i], edges.data() + offsets[i + 1]};
  }
  std::map<VertexId, std::vector<EdgeId>> ToMap(const Hypergraph& g) const;
};

// d = 0, M = {}, round = 0. Users with b(u) = 0 start saturated and their
// edges start outside E.
RoundState InitState(const Hypergraph& g, const CapacityMap& caps);

// Every unsaturated user with eligible incident edges proposes
// min(b(u) - d(u), #eligible incident) of them, most preferred first.
Proposals ComputeProposals(const Hypergraph& g, const CapacityMap& caps,
                           const RoundState& state,
                           const PreferenceIndex& preferences);

// Edges proposed by every owner, ascending by id.
std::vector<EdgeId> Arbitrate(const Hypergraph& g, const RoundState& state,
                              const Proposals& proposals);

struct CommitResult {
  std::vector<VertexId> newly_saturated;
};

// Commits one round: adds `accepted` to M, updates d and S, prunes the edges
// of newly saturated users from E and advances the round counter. Acceptances
// are applied in ascending id order, pruning in ascending vertex order.
// FailedPrecondition if an edge is not eligible; CapacityViolation if a user
// would exceed its budget (unreachable from Arbitrate output).
absl::StatusOr<CommitResult> ApplyAccepted(const Hypergraph& g,
                                           const CapacityMap& caps,
                                           std::span<const EdgeId> accepted,
                                           RoundState& state);

struct RunResult {
  std::vector<EdgeId> matching;  // ascending
  RoundTrace trace;
  RoundState final_state;
};

// Runs rounds until max_rounds, until E is empty, or (with early_stop) until
// a round accepts nothing. Deterministic in (g, caps, config).
absl::StatusOr<RunResult> Run(const Hypergraph& g, const CapacityMap& caps,
                              const EngineConfig& config);

}  // namespace hyperbound

#endif  // HYPERBOUND_ENGINE_H_

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

#include "hyperbound/engine.h"

#include <algorithm>
#include <utility>

#include "src/strings.h"
#include "hyperbound/errors.h"
#include "src/engine_internal.h"

namespace hyperbound {

namespace internal {

std::size_t ProposeFor(const Hypergraph& g, const CapacityMap& caps,
                       const RoundState& state,
                       const PreferenceIndex& preferences, VertexIndex v,
                       std::uint32_t* cursor, std::vector<EdgeIndex>& out) {
  if (state.saturated[v]) return 0;
  const std::uint64_t capacity = caps.Lookup(g.vertices()[v]);
  const std::uint64_t slack = capacity - state.matched[v];
  std::span<const EdgeIndex> ranked = preferences.ranked(v);
  std::size_t i = cursor != nullptr ? *cursor : 0;
  while (i < ranked.size() && !state.eligible[ranked[i]]) ++i;
  if (cursor != nullptr) *cursor = static_cast<std::uint32_t>(i);
  std::size_t made = 0;
  for (; i < ranked.size() && made < slack; ++i) {
    if (state.eligible[ranked[i]]) {
      out.push_back(ranked[i]);
      ++made;
    }
  }
  return made;
}

}  // namespace internal

std::vector<EdgeId> RoundState::Matching(const Hypergraph& g) const {
  std::vector<EdgeId> out;
  out.reserve(selected_count);
  for (EdgeIndex e = 0; e < selected.size(); ++e) {
    if (selected[e]) out.push_back(g.edge_ids()[e]);
  }
  return out;
}

std::vector<EdgeId> RoundState::Eligible(const Hypergraph& g) const {
  std::vector<EdgeId> out;
  out.reserve(eligible_count);
  for (EdgeIndex e = 0; e < eligible.size(); ++e) {
    if (eligible[e]) out.push_back(g.edge_ids()[e]);
  }
  return out;
}

absl::Status ValidateConfig(const EngineConfig& config) {
  if (!config.max_rounds.has_value() && !config.early_stop) {
    return MakeError(ErrorKind::kInvalidConfig,
                     "unbounded rounds require early stop");
  }
  if (config.max_rounds.has_value() && *config.max_rounds == 0) {
    return MakeError(ErrorKind::kInvalidConfig, "max rounds must be positive");
  }
  if (const auto* fn = std::get_if<UserPreference>(&config.ordering);
      fn != nullptr && !*fn) {
    return MakeError(ErrorKind::kInvalidConfig, "empty user preference");
  }
  return absl::OkStatus();
}

std::map<VertexId, std::vector<EdgeId>> Proposals::ToMap(
    const Hypergraph& g) const {
  std::map<VertexId, std::vector<EdgeId>> out;
  for (std::size_t i = 0; i < users.size(); ++i) {
    std::vector<EdgeId>& list = out[g.vertices()[users[i]]];
    for (EdgeIndex e : of(i)) list.push_back(g.edge_ids()[e]);
  }
  return out;
}

RoundState InitState(const Hypergraph& g, const CapacityMap& caps) {
  RoundState state;
  state.matched.assign(g.num_vertices(), 0);
  state.saturated.assign(g.num_vertices(), 0);
  state.eligible.assign(g.num_edges(), 1);
  state.selected.assign(g.num_edges(), 0);
  state.eligible_count = g.num_edges();
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    if (caps.Lookup(g.vertices()[v]) != 0) continue;
    state.saturated[v] = 1;
    for (EdgeIndex e : g.incident(v)) {
      if (state.eligible[e]) {
        state.eligible[e] = 0;
        --state.eligible_count;
      }
    }
  }
  return state;
}

Proposals ComputeProposals(const Hypergraph& g, const CapacityMap& caps,
                           const RoundState& state,
                           const PreferenceIndex& preferences) {
  Proposals proposals;
  for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
    if (internal::ProposeFor(g, caps, state, preferences, v, nullptr,
                             proposals.edges) > 0) {
      proposals.users.push_back(v);
      proposals.offsets.push_back(proposals.edges.size());
    }
  }
  return proposals;
}

std::vector<EdgeId> Arbitrate(const Hypergraph& g, const RoundState& state,
                              const Proposals& proposals) {
  std::vector<std::uint32_t> tally(g.num_edges(), 0);
  std::vector<EdgeIndex> accepted;
  for (EdgeIndex e : proposals.edges) {
    if (state.eligible[e] && internal::Tally(g, e, tally)) {
      accepted.push_back(e);
    }
  }
  std::sort(accepted.begin(), accepted.end());
  std::vector<EdgeId> out;
  out.reserve(accepted.size());
  for (EdgeIndex e : accepted) out.push_back(g.edge_ids()[e]);
  return out;
}

absl::StatusOr<CommitResult> ApplyAccepted(const Hypergraph& g,
                                           const CapacityMap& caps,
                                           std::span<const EdgeId> accepted,
                                           RoundState& state) {
  std::vector<EdgeIndex> edges;
  edges.reserve(accepted.size());
  for (EdgeId id : accepted) {
    std::optional<EdgeIndex> e = g.FindEdge(id);
    if (!e.has_value() || !state.eligible[*e]) {
      return absl::FailedPreconditionError(
          internal::StrCat("accepted edge ", id.value, " is not eligible"));
    }
    edges.push_back(*e);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    return absl::FailedPreconditionError("accepted set has duplicates");
  }

  // Validate the whole batch before touching the state.
  std::vector<std::pair<VertexIndex, std::uint64_t>> increments;
  for (EdgeIndex e : edges) {
    for (VertexIndex v : g.owner_indices(e)) increments.emplace_back(v, 1);
  }
  std::sort(increments.begin(), increments.end());
  std::vector<VertexIndex> touched;
  for (std::size_t i = 0; i < increments.size();) {
    const VertexIndex v = increments[i].first;
    std::size_t j = i;
    while (j < increments.size() && increments[j].first == v) ++j;
    const std::uint64_t capacity = caps.Lookup(g.vertices()[v]);
    if (state.matched[v] + (j - i) > capacity) {
      return MakeError(
          ErrorKind::kCapacityViolation,
          internal::StrCat("vertex ", g.vertices()[v].value, " would reach ",
                       state.matched[v] + (j - i), " > ", capacity));
    }
    touched.push_back(v);
    i = j;
  }

  for (EdgeIndex e : edges) {
    state.eligible[e] = 0;
    state.selected[e] = 1;
    for (VertexIndex v : g.owner_indices(e)) ++state.matched[v];
  }
  state.eligible_count -= edges.size();
  state.selected_count += edges.size();

  CommitResult result;
  for (VertexIndex v : touched) {
    if (state.saturated[v] ||
        state.matched[v] != caps.Lookup(g.vertices()[v])) {
      continue;
    }
    state.saturated[v] = 1;
    result.newly_saturated.push_back(g.vertices()[v]);
    for (EdgeIndex e : g.incident(v)) {
      if (state.eligible[e]) {
        state.eligible[e] = 0;
        --state.eligible_count;
      }
    }
  }
  ++state.round;
  return result;
}

absl::StatusOr<RunResult> Run(const Hypergraph& g, const CapacityMap& caps,
                              const EngineConfig& config) {
  if (absl::Status s = ValidateConfig(config); !s.ok()) return s;
  absl::StatusOr<PreferenceIndex> preferences =
      PreferenceIndex::Build(g, config.ordering);
  if (!preferences.ok()) return preferences.status();

  RunResult result;
  RoundState& state = result.final_state;
  state = InitState(g, caps);
  std::vector<std::uint32_t> cursor(g.num_vertices(), 0);
  std::vector<std::uint32_t> tally(g.num_edges(), 0);
  std::vector<EdgeIndex> proposed;
  std::vector<EdgeIndex> unanimous;

  while (state.eligible_count > 0 &&
         (!config.max_rounds.has_value() || state.round < *config.max_rounds)) {
    proposed.clear();
    for (VertexIndex v = 0; v < g.num_vertices(); ++v) {
      internal::ProposeFor(g, caps, state, *preferences, v, &cursor[v],
                           proposed);
    }
    unanimous.clear();
    for (EdgeIndex e : proposed) {
      if (internal::Tally(g, e, tally)) unanimous.push_back(e);
    }
    for (EdgeIndex e : proposed) tally[e] = 0;
    std::sort(unanimous.begin(), unanimous.end());

    RoundRecord record;
    record.round = state.round + 1;
    record.proposal_count = proposed.size();
    record.accepted.reserve(unanimous.size());
    for (EdgeIndex e : unanimous) record.accepted.push_back(g.edge_ids()[e]);
    absl::StatusOr<CommitResult> commit =
        ApplyAccepted(g, caps, record.accepted, state);
    if (!commit.ok()) return commit.status();
    record.newly_saturated = std::move(commit->newly_saturated);
    const bool idle = record.accepted.empty();
    result.trace.push_back(std::move(record));
    if (idle && config.early_stop) break;
  }
  result.matching = state.Matching(g);
  return result;
}

}  // namespace hyperbound

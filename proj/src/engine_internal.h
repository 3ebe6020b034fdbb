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

#ifndef HYPERBOUND_SRC_ENGINE_INTERNAL_H_
#define HYPERBOUND_SRC_ENGINE_INTERNAL_H_

#include <cstdint>
#include <span>
#include <vector>

#include "hyperbound/engine.h"

namespace hyperbound::internal {

// Appends the proposals of user `v` to `out` and returns how many were made.
// `cursor`, when non-null, marks a prefix of v's ranked list known to be
// ineligible; it only moves forward since E only shrinks.
std::size_t ProposeFor(const Hypergraph& g, const CapacityMap& caps,
                       const RoundState& state,
                       const PreferenceIndex& preferences, VertexIndex v,
                       std::uint32_t* cursor, std::vector<EdgeIndex>& out);

// Counts one proposal message for edge `e`; returns true when the count now
// equals the owner count, i.e. the edge is unanimously proposed.
inline bool Tally(const Hypergraph& g, EdgeIndex e,
                  std::vector<std::uint32_t>& tally) {
  return ++tally[e] == g.owner_indices(e).size();
}

}  // namespace hyperbound::internal

#endif  // HYPERBOUND_SRC_ENGINE_INTERNAL_H_

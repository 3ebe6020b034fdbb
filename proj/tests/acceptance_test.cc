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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "hyperbound/baselines.h"
#include "hyperbound/bsp_executor.h"
#include "hyperbound/cli.h"
#include "hyperbound/engine.h"
#include "hyperbound/hypergraph.h"
#include "hyperbound/io.h"
#include "hyperbound/mix64.h"
#include "hyperbound/ordering.h"
#include "tests/test_util.h"

namespace hyperbound {
namespace {

using testing::CountDegrees;
using testing::EnumerateOptimum;
using testing::IsFeasible;
using testing::MakeRandomInstance;

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;

  void Fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string Fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

EngineConfig HashConfig(std::uint64_t seed) {
  EngineConfig config;
  config.ordering = OrderingSpec::UniversalRandom(seed);
  return config;
}

// Degree of u in M never exceeds b(u), checked against the committed state
// and against a recount from owner lists after every round.
Verdict Feasibility() {
  constexpr int kInstances = 1000;
  const auto start = Clock::now();
  Verdict v;
  std::size_t rounds = 0;
  for (int i = 0; i < kInstances && v.pass; ++i) {
    auto inst = MakeRandomInstance(1000 + i, 200, 500, 5);
    const Hypergraph& g = inst.graph;
    absl::StatusOr<PreferenceIndex> prefs =
        PreferenceIndex::Build(g, OrderingSpec::UniversalRandom(i));
    if (!prefs.ok()) {
      v.Fail(std::string(prefs.status().message()));
      break;
    }
    RoundState state = InitState(g, inst.caps);
    while (state.eligible_count > 0) {
      Proposals p = ComputeProposals(g, inst.caps, state, *prefs);
      // Each unsaturated user proposes exactly min(slack, eligible) edges.
      std::vector<std::size_t> proposed(g.num_vertices(), 0);
      for (std::size_t k = 0; k < p.users.size(); ++k) {
        proposed[p.users[k]] = p.of(k).size();
      }
      std::vector<std::uint64_t> slack(g.num_vertices(), 0);
      for (VertexIndex u = 0; u < g.num_vertices(); ++u) {
        slack[u] = inst.caps.Lookup(g.vertices()[u]) - state.matched[u];
        std::size_t eligible = 0;
        for (EdgeIndex e : g.incident(u)) eligible += state.eligible[e];
        const std::size_t want =
            state.saturated[u] ? 0 : std::min<std::uint64_t>(slack[u], eligible);
        if (proposed[u] != want) {
          v.Fail(Fmt("instance %d round %zu: user proposed %zu, want %zu", i,
                     state.round + 1, proposed[u], want));
        }
      }
      const std::vector<std::uint64_t> before = state.matched;
      std::vector<EdgeId> accepted = Arbitrate(g, state, p);
      if (accepted.empty()) break;
      if (!ApplyAccepted(g, inst.caps, accepted, state).ok()) {
        v.Fail(Fmt("instance %d: commit rejected", i));
        break;
      }
      ++rounds;
      for (VertexIndex u = 0; u < g.num_vertices(); ++u) {
        if (state.matched[u] > inst.caps.Lookup(g.vertices()[u])) {
          v.Fail(Fmt("instance %d round %zu: d > b", i, state.round));
        }
        if (state.matched[u] - before[u] > slack[u]) {
          v.Fail(Fmt("instance %d round %zu: increment exceeds slack", i,
                     state.round));
        }
      }
      if (!IsFeasible(g, inst.caps, state.Matching(g))) {
        v.Fail(Fmt("instance %d round %zu: recount exceeds b", i,
                   state.round));
      }
    }
    absl::StatusOr<RunResult> run =
        hyperbound::Run(g, inst.caps, HashConfig(i));
    if (!run.ok() || run->final_state != state) {
      v.Fail(Fmt("instance %d: Run disagrees with stepped rounds", i));
    }
  }
  const double secs = Seconds(start);
  if (v.pass) {
    v.detail = Fmt("%d instances, %zu rounds checked (degree and proposal slack), "
                   "0 violations, %.2fs",
                   kInstances, rounds, secs);
  }
  if (secs >= 60) v.Fail(Fmt("took %.2fs", secs));
  return v;
}

Verdict GreedyEquivalence() {
  constexpr int kInstances = 1000;
  const auto start = Clock::now();
  Verdict v;
  for (int i = 0; i < kInstances; ++i) {
    auto inst = MakeRandomInstance(5000 + i, 200, 500, 5);
    const std::uint64_t seed = Mix64(i, 77);
    absl::StatusOr<RunResult> run =
        hyperbound::Run(inst.graph, inst.caps, HashConfig(seed));
    absl::StatusOr<BaselineResult> greedy =
        Greedy(inst.graph, inst.caps, OrderingSpec::UniversalRandom(seed));
    if (!run.ok() || !greedy.ok() || run->matching != greedy->matching) {
      v.Fail(Fmt("instance %d differs", i));
    }
  }
  const double secs = Seconds(start);
  if (v.pass) {
    v.detail = Fmt("%d/%d identical, %.2fs", kInstances, kInstances, secs);
  }
  if (secs >= 60) v.Fail(Fmt("took %.2fs", secs));
  return v;
}

Verdict ExactDominance() {
  constexpr int kInstances = 500;
  Verdict v;
  double ratio_sum = 0;
  int ratio_count = 0;
  int enumerated = 0;
  for (int i = 0; i < kInstances; ++i) {
    auto inst = MakeRandomInstance(9000 + i, 16, 20, 3);
    const Hypergraph& g = inst.graph;
    absl::StatusOr<RunResult> run =
        hyperbound::Run(g, inst.caps, HashConfig(i));
    absl::StatusOr<BaselineResult> exact = ExactOptimal(g, inst.caps);
    if (!run.ok() || !exact.ok()) {
      v.Fail(Fmt("instance %d: run or exact failed", i));
      continue;
    }
    const std::size_t opt = *exact->optimum;
    if (opt < run->matching.size()) {
      v.Fail(Fmt("instance %d: optimum %zu < engine %zu", i, opt,
                 run->matching.size()));
    }
    if (g.num_edges() <= 12) {
      ++enumerated;
      if (EnumerateOptimum(g, inst.caps) != opt) {
        v.Fail(Fmt("instance %d: branch and bound disagrees with enumeration",
                   i));
      }
    }
    // Maximality: every edge left out has a saturated owner.
    std::map<VertexId, std::uint64_t> degree =
        CountDegrees(g, run->matching);
    std::set<EdgeId> in_m(run->matching.begin(), run->matching.end());
    for (EdgeIndex e = 0; e < g.num_edges(); ++e) {
      if (in_m.count(g.edge_ids()[e])) continue;
      bool blocked = false;
      for (VertexId u : g.owners(e)) {
        blocked |= degree[u] >= inst.caps.Lookup(u);
      }
      if (!blocked) {
        v.Fail(Fmt("instance %d: edge %llu could be added", i,
                   static_cast<unsigned long long>(g.edge_ids()[e].value)));
      }
    }
    if (opt > 0) {
      ratio_sum += static_cast<double>(run->matching.size()) /
                   static_cast<double>(opt);
      ++ratio_count;
    }
  }
  if (v.pass) {
    v.detail = Fmt(
        "%d instances, maximal, optimum >= engine; mean |M|/opt = %.4f over "
        "%d non-empty optima (%d cross-checked by enumeration)",
        kInstances, ratio_sum / std::max(ratio_count, 1), ratio_count,
        enumerated);
  }
  return v;
}

Verdict SingleOwner() {
  constexpr int kInstances = 300;
  Verdict v;
  for (int i = 0; i < kInstances; ++i) {
    Mix64Stream rng(Mix64(i, 0x51));
    GeneratorSpec spec;
    spec.users = 1 + rng.NextBelow(100);
    spec.edges = rng.NextBelow(400);
    spec.edge_size = FixedSize{1};
    if (rng.NextBelow(2)) spec.popularity = ZipfPopularity{1.1};
    spec.seed = rng.Next();
    CapacityMap caps(rng.NextBelow(6));
    for (int k = 0; k < 5; ++k) {
      caps.Set(VertexId{rng.NextBelow(spec.users)}, rng.NextBelow(6));
    }
    Hypergraph g = *Hypergraph::Build(Generate(spec)->ToRecords(), caps);
    absl::StatusOr<RunResult> run = hyperbound::Run(g, caps, HashConfig(i));
    if (!run.ok()) {
      v.Fail(Fmt("instance %d: run failed", i));
      continue;
    }
    std::map<VertexId, std::uint64_t> degree = CountDegrees(g, run->matching);
    for (VertexIndex u = 0; u < g.num_vertices(); ++u) {
      const VertexId id = g.vertices()[u];
      const std::uint64_t want =
          std::min<std::uint64_t>(g.incident(u).size(), caps.Lookup(id));
      if (degree[id] != want) {
        v.Fail(Fmt("instance %d: user %llu kept %llu, want %llu", i,
                   static_cast<unsigned long long>(id.value),
                   static_cast<unsigned long long>(degree[id]),
                   static_cast<unsigned long long>(want)));
      }
    }
    std::size_t accepting = 0;
    for (const RoundRecord& r : run->trace) accepting += !r.accepted.empty();
    const std::size_t expected = run->matching.empty() ? 0 : 1;
    if (accepting != expected) {
      v.Fail(Fmt("instance %d: %zu accepting rounds", i, accepting));
    }
  }
  if (v.pass) {
    v.detail = Fmt("%d instances, exact min(deg, b), one accepting round",
                   kInstances);
  }
  return v;
}

Verdict Progress() {
  constexpr int kInstances = 1000;
  Verdict v;
  std::size_t max_rounds = 0;
  for (int i = 0; i < kInstances; ++i) {
    auto inst = MakeRandomInstance(20000 + i, 200, 500, 5);
    const Hypergraph& g = inst.graph;
    for (bool early_stop : {true, false}) {
      EngineConfig config = HashConfig(i);
      config.early_stop = early_stop;
      if (!early_stop) config.max_rounds = g.num_edges() + 1;
      absl::StatusOr<RunResult> run = hyperbound::Run(g, inst.caps, config);
      if (!run.ok()) {
        v.Fail(Fmt("instance %d: run failed", i));
        continue;
      }
      for (const RoundRecord& r : run->trace) {
        if (r.accepted.empty() && run->final_state.eligible_count > 0) {
          v.Fail(Fmt("instance %d: round %zu accepted nothing", i, r.round));
        }
        if (r.accepted.empty() && !early_stop) {
          v.Fail(Fmt("instance %d: idle round %zu ran", i, r.round));
        }
      }
      if (run->trace.size() > g.num_edges()) {
        v.Fail(Fmt("instance %d: %zu rounds > |H| = %zu", i,
                   run->trace.size(), g.num_edges()));
      }
      if (run->final_state.eligible_count != 0) {
        v.Fail(Fmt("instance %d: stopped with eligible edges", i));
      }
      max_rounds = std::max(max_rounds, run->trace.size());
    }
  }
  if (v.pass) {
    v.detail = Fmt("%d instances x {early stop, round cap}, every round "
                   "accepts, max %zu rounds",
                   kInstances, max_rounds);
  }
  return v;
}

struct Sandbox {
  Sandbox() {
    dir = std::filesystem::temp_directory_path() /
          Fmt("hyperbound_acceptance_%llu",
              static_cast<unsigned long long>(
                  Clock::now().time_since_epoch().count()));
    std::filesystem::create_directories(dir);
  }
  ~Sandbox() { std::filesystem::remove_all(dir); }

  std::string Path(const std::string& name) const { return dir / name; }

  std::filesystem::path dir;
};

int Cli(const std::vector<std::string>& args, std::string* error) {
  std::ostringstream out, err;
  const int code = RunCli(args, out, err);
  *error = err.str();
  return code;
}

Verdict Determinism() {
  Verdict v;
  Sandbox box;
  std::string error;
  if (Cli({"gen", "--users", "20000", "--num-edges", "100000", "--edge-size",
           "zipf:1.2:6", "--popularity", "zipf:0.8", "--seed", "6", "--out",
           box.Path("edges.tsv")},
          &error) != kExitOk) {
    v.Fail("gen failed: " + error);
    return v;
  }
  std::string reference_sel, reference_sum;
  int runs = 0;
  for (int workers : {1, 2, 4, 8}) {
    for (int repeat = 0; repeat < 5; ++repeat) {
      const std::string sel = box.Path("sel.txt");
      const std::string sum = box.Path("sum.json");
      if (Cli({"run", "--edges", box.Path("edges.tsv"), "--capacity", "3",
               "--seed", "99", "--workers", std::to_string(workers), "--out",
               sel, "--summary", sum},
              &error) != kExitOk) {
        v.Fail("run failed: " + error);
        return v;
      }
      std::string got_sel = *ReadFile(sel);
      std::string got_sum = *ReadFile(sum);
      if (runs++ == 0) {
        reference_sel = std::move(got_sel);
        reference_sum = std::move(got_sum);
      } else if (got_sel != reference_sel || got_sum != reference_sum) {
        v.Fail(Fmt("workers=%d repeat %d differs", workers, repeat));
      }
    }
  }
  if (v.pass) {
    v.detail = Fmt("%d runs over workers {1,2,4,8} byte-identical "
                   "(%zu selection bytes, %zu summary bytes)",
                   runs, reference_sel.size(), reference_sum.size());
  }
  return v;
}

Verdict Scale() {
  Verdict v;
  Sandbox box;
  std::string error;
  const auto gen_start = Clock::now();
  if (Cli({"gen", "--users", "100000", "--num-edges", "1000000",
           "--edge-size", "fixed:3", "--seed", "7", "--out",
           box.Path("edges.tsv")},
          &error) != kExitOk) {
    v.Fail("gen failed: " + error);
    return v;
  }
  const double gen_secs = Seconds(gen_start);
  const auto start = Clock::now();
  if (Cli({"run", "--edges", box.Path("edges.tsv"), "--capacity", "8",
           "--workers", "8", "--out", box.Path("sel.txt"), "--summary",
           box.Path("sum.json")},
          &error) != kExitOk) {
    v.Fail("run failed: " + error);
    return v;
  }
  const double secs = Seconds(start);
  const nlohmann::json summary =
      nlohmann::json::parse(*ReadFile(box.Path("sum.json")));
  v.detail = Fmt("parse+run+write %.2fs (gen %.2fs), |M| = %llu, %llu rounds, "
                 "%u hardware threads",
                 secs, gen_secs,
                 static_cast<unsigned long long>(
                     summary["report"]["matched_count"].get<std::uint64_t>()),
                 static_cast<unsigned long long>(
                     summary["report"]["rounds_executed"].get<std::uint64_t>()),
                 std::thread::hardware_concurrency());
  if (secs >= 120) v.Fail("over 120s: " + v.detail);
  return v;
}

Verdict Formats() {
  Verdict v;
  struct Golden {
    std::uint64_t seed, id, value;
  };
  constexpr Golden kMix64[] = {
      {0, 0, 0x0ULL},
      {0, 1, 0xe220a8397b1dcdafULL},
      {0, 2, 0x6e789e6aa1b965f4ULL},
      {42, 7, 0x53ad348af3ddaf4bULL},
      {42, 1, 0xbdd732262feb6e95ULL},
      {~0ULL, ~0ULL, 0xe4d971771b652c20ULL},
      {1, 0, 0x5692161d100b05e5ULL},
      {12345, 67890, 0x78af2d9c2e6cfd10ULL},
  };
  for (const Golden& golden : kMix64) {
    if (Mix64(golden.seed, golden.id) != golden.value) {
      v.Fail(Fmt("Mix64(%llu, %llu) changed",
                 static_cast<unsigned long long>(golden.seed),
                 static_cast<unsigned long long>(golden.id)));
    }
  }

  // Random weighted instances survive text round trips unchanged.
  constexpr int kRoundTrips = 200;
  for (int i = 0; i < kRoundTrips; ++i) {
    auto inst = MakeRandomInstance(40000 + i, 50, 100, 4);
    std::vector<EdgeRecord> records = inst.graph.ToRecords();
    Mix64Stream rng(i);
    for (EdgeRecord& r : records) {
      if (rng.NextBelow(4) != 0) r.weight = rng.NextUnit() * 1e3;
    }
    Hypergraph g = *Hypergraph::Build(records, inst.caps);
    const std::string text = SerializeEdgeList(g);
    absl::StatusOr<Hypergraph> back = ParseEdgeList(text, inst.caps);
    if (!back.ok() || !(*back == g) || SerializeEdgeList(*back) != text) {
      v.Fail(Fmt("edge list round trip %d", i));
    }
    const std::string caps_text = SerializeCapacities(inst.caps);
    absl::StatusOr<CapacityMap> caps =
        ParseCapacities(caps_text, inst.caps.default_capacity());
    if (!caps.ok() || SerializeCapacities(*caps) != caps_text) {
      v.Fail(Fmt("capacity round trip %d", i));
    }
    std::vector<EdgeId> m = hyperbound::Run(g, inst.caps, HashConfig(i))->matching;
    absl::StatusOr<std::vector<EdgeId>> sel =
        ParseSelection(SerializeSelection(m));
    if (!sel.ok() || *sel != m) v.Fail(Fmt("selection round trip %d", i));
  }

  // Frozen bundle for the four-user path a-b-c-d with b = 1. Under seed 42
  // the order is e3 < e1 < e2, so e1 and e3 are both accepted in round 1.
  Sandbox box;
  if (!WriteFile(box.Path("path.tsv"), "1\t1,2\t\n2\t2,3\t\n3\t3,4\t\n")
           .ok()) {
    v.Fail("cannot write path fixture");
    return v;
  }
  std::string error;
  Cli({"run", "--edges", box.Path("path.tsv"), "--seed", "42", "--out",
       box.Path("sel.txt"), "--summary", box.Path("sum.json")},
      &error);
  constexpr char kGoldenSummary[] = R"({
  "config": {
    "capacity_overrides": 0,
    "default_capacity": 1,
    "early_stop": true,
    "max_rounds": "unbounded",
    "ordering": "hash",
    "seed": 42
  },
  "format_version": "hyperbound/1",
  "method": "distributed",
  "report": {
    "degree_histogram": [
      {
        "degree": 1,
        "users": 4
      }
    ],
    "matched_count": 2,
    "per_round_accepted": [
      2
    ],
    "retention": 0.6666666666666666,
    "rounds_executed": 1,
    "saturated_users": 4,
    "total_edges": 3
  }
}
)";
  if (ReadFile(box.Path("sel.txt")).value_or("") != "1\n3\n") {
    v.Fail("golden selection changed");
  }
  if (ReadFile(box.Path("sum.json")).value_or("") != kGoldenSummary) {
    v.Fail("golden summary changed");
  }
  if (v.pass) {
    v.detail = Fmt("%zu Mix64 goldens, %d round trips, golden bundle intact",
                   std::size(kMix64), kRoundTrips);
  }
  return v;
}

}  // namespace
}  // namespace hyperbound

int main() {
  using hyperbound::Verdict;
  struct Criterion {
    const char* name;
    std::function<Verdict()> check;
  };
  const Criterion criteria[] = {
      {"feasibility", hyperbound::Feasibility},
      {"greedy-equivalence", hyperbound::GreedyEquivalence},
      {"exact-dominance-and-maximality", hyperbound::ExactDominance},
      {"single-owner-reduction", hyperbound::SingleOwner},
      {"progress-bound", hyperbound::Progress},
      {"determinism-and-schedule-independence", hyperbound::Determinism},
      {"scale", hyperbound::Scale},
      {"format-goldens", hyperbound::Formats},
  };
  int failures = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    Verdict v = c.check();
    failures += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << index << "] " << c.name
              << ": " << v.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}

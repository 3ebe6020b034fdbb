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

#include "hyperbound/cli.h"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>

#include "CLI11.hpp"
#include "absl/status/statusor.h"
#include "src/strings.h"
#include "hyperbound/baselines.h"
#include "hyperbound/bsp_executor.h"
#include "hyperbound/engine.h"
#include "hyperbound/errors.h"
#include "hyperbound/io.h"
#include "hyperbound/metrics.h"

namespace hyperbound {
namespace {

struct Options {
  std::string edges;
  std::string capacities;
  std::string out;
  std::string summary;
  std::uint64_t capacity = 1;
  std::string ordering = "hash";
  std::uint64_t seed = 0;
  std::string max_rounds = "unbounded";
  bool no_early_stop = false;
  std::size_t workers = 1;
  std::size_t limit = kDefaultExactLimit;
  std::size_t users = 1;
  std::size_t num_edges = 0;
  std::string edge_size = "fixed:1";
  std::string popularity = "uniform";
};

struct UsageError {
  std::string message;
};

struct Instance {
  Hypergraph graph;
  CapacityMap caps;
};

void AddInstanceFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--edges", o.edges, "Edge list file")->required();
  cmd->add_option("--capacity", o.capacity, "Default per-user capacity b");
  cmd->add_option("--capacities", o.capacities,
                  "Per-user capacity overrides file");
}

void AddOrderingFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--ordering", o.ordering, "Preference order")
      ->check(CLI::IsMember({"hash", "weight"}));
  cmd->add_option("--seed", o.seed, "Ordering seed");
}

void AddEngineFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--max-rounds", o.max_rounds,
                  "Round limit R, or 'unbounded'");
  cmd->add_flag("--no-early-stop", o.no_early_stop,
                "Keep running rounds that accept nothing");
  cmd->add_option("--workers", o.workers, "Worker threads")
      ->check(CLI::PositiveNumber);
}

void AddOutputFlags(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "Selected-edges file (default: stdout)");
  cmd->add_option("--summary", o.summary, "JSON summary file");
}

std::optional<std::uint64_t> ParseU64(std::string_view text) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

std::optional<double> ParseDouble(std::string_view text) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    return std::nullopt;
  }
  return value;
}

// Validates engine flags before any file is touched.
std::variant<EngineConfig, UsageError> EngineConfigFrom(const Options& o) {
  EngineConfig config;
  if (o.max_rounds != "unbounded") {
    std::optional<std::uint64_t> r = ParseU64(o.max_rounds);
    if (!r.has_value() || *r == 0) {
      return UsageError{"--max-rounds must be a positive integer or "
                        "'unbounded'"};
    }
    config.max_rounds = *r;
  }
  config.early_stop = !o.no_early_stop;
  if (!config.max_rounds.has_value() && !config.early_stop) {
    return UsageError{"--no-early-stop requires a finite --max-rounds"};
  }
  config.ordering = o.ordering == "weight"
                        ? OrderingSpec::WeightDescending(o.seed)
                        : OrderingSpec::UniversalRandom(o.seed);
  return config;
}

SummaryConfig SummaryFrom(const Options& o, const CapacityMap& caps,
                          const EngineConfig* engine) {
  SummaryConfig s;
  s.ordering = o.ordering;
  s.seed = o.seed;
  if (engine != nullptr) {
    s.max_rounds = engine->max_rounds;
    s.early_stop = engine->early_stop;
  }
  s.default_capacity = caps.default_capacity();
  s.capacity_overrides = caps.overrides().size();
  return s;
}

absl::StatusOr<Instance> LoadInstance(const Options& o) {
  CapacityMap caps(o.capacity);
  if (!o.capacities.empty()) {
    absl::StatusOr<std::string> text = ReadFile(o.capacities);
    if (!text.ok()) return text.status();
    absl::StatusOr<CapacityMap> parsed = ParseCapacities(*text, o.capacity);
    if (!parsed.ok()) {
      return absl::Status(parsed.status().code(),
                          internal::StrCat(o.capacities, ": ",
                                       parsed.status().message()));
    }
    caps = *std::move(parsed);
  }
  absl::StatusOr<std::string> text = ReadFile(o.edges);
  if (!text.ok()) return text.status();
  absl::StatusOr<Hypergraph> g = ParseEdgeList(*text, caps);
  if (!g.ok()) {
    return absl::Status(g.status().code(),
                        internal::StrCat(o.edges, ": ", g.status().message()));
  }
  return Instance{*std::move(g), std::move(caps)};
}

// Selection goes to --out (or stdout). The summary goes to --summary, or to
// stdout when the selection went to a file.
absl::Status Emit(const Options& o, const ResultBundle& bundle,
                  std::ostream& out) {
  if (o.out.empty()) {
    out << bundle.selected_edges;
  } else if (absl::Status s = WriteFile(o.out, bundle.selected_edges);
             !s.ok()) {
    return s;
  }
  if (!o.summary.empty()) return WriteFile(o.summary, bundle.summary);
  if (!o.out.empty()) out << bundle.summary;
  return absl::OkStatus();
}

int DataError(const absl::Status& status, std::ostream& err) {
  err << "error: " << status.message() << "\n";
  return kExitData;
}

int UsageFailure(std::string_view message, std::ostream& err) {
  err << "usage error: " << message << "\n";
  return kExitUsage;
}

int DoRun(const Options& o, std::ostream& out, std::ostream& err) {
  auto config = EngineConfigFrom(o);
  if (auto* u = std::get_if<UsageError>(&config)) {
    return UsageFailure(u->message, err);
  }
  const EngineConfig& engine = std::get<EngineConfig>(config);
  absl::StatusOr<Instance> inst = LoadInstance(o);
  if (!inst.ok()) return DataError(inst.status(), err);
  absl::StatusOr<RunResult> result =
      ParallelRun(inst->graph, inst->caps, engine, o.workers);
  if (!result.ok()) return DataError(result.status(), err);
  absl::StatusOr<RunReport> report =
      Report(inst->graph, inst->caps, result->matching, result->trace);
  if (!report.ok()) return DataError(report.status(), err);
  absl::StatusOr<ResultBundle> bundle =
      MakeResultBundle("distributed", SummaryFrom(o, inst->caps, &engine),
                       *report, result->matching);
  if (!bundle.ok()) return DataError(bundle.status(), err);
  if (absl::Status s = Emit(o, *bundle, out); !s.ok()) {
    return DataError(s, err);
  }
  return kExitOk;
}

int DoGreedy(const Options& o, std::ostream& out, std::ostream& err) {
  absl::StatusOr<Instance> inst = LoadInstance(o);
  if (!inst.ok()) return DataError(inst.status(), err);
  const OrderingSpec spec = o.ordering == "weight"
                                ? OrderingSpec::WeightDescending(o.seed)
                                : OrderingSpec::UniversalRandom(o.seed);
  absl::StatusOr<BaselineResult> result = Greedy(inst->graph, inst->caps, spec);
  if (!result.ok()) return DataError(result.status(), err);
  absl::StatusOr<RunReport> report =
      Report(inst->graph, inst->caps, result->matching);
  if (!report.ok()) return DataError(report.status(), err);
  absl::StatusOr<ResultBundle> bundle = MakeResultBundle(
      "greedy", SummaryFrom(o, inst->caps, nullptr), *report, result->matching);
  if (!bundle.ok()) return DataError(bundle.status(), err);
  if (absl::Status s = Emit(o, *bundle, out); !s.ok()) {
    return DataError(s, err);
  }
  return kExitOk;
}

int DoOptimal(const Options& o, std::ostream& out, std::ostream& err) {
  absl::StatusOr<Instance> inst = LoadInstance(o);
  if (!inst.ok()) return DataError(inst.status(), err);
  absl::StatusOr<BaselineResult> result =
      ExactOptimal(inst->graph, inst->caps, o.limit);
  if (!result.ok()) return DataError(result.status(), err);
  absl::StatusOr<RunReport> report =
      Report(inst->graph, inst->caps, result->matching);
  if (!report.ok()) return DataError(report.status(), err);
  SummaryConfig summary = SummaryFrom(o, inst->caps, nullptr);
  absl::StatusOr<ResultBundle> bundle = MakeResultBundle(
      "exact", summary, *report, result->matching, result->optimum);
  if (!bundle.ok()) return DataError(bundle.status(), err);
  if (absl::Status s = Emit(o, *bundle, out); !s.ok()) {
    return DataError(s, err);
  }
  return kExitOk;
}

nlohmann::json ComparisonToJson(const Comparison& c) {
  nlohmann::json ratio = nullptr;
  if (c.ratio.has_value()) ratio = *c.ratio;
  return {{"numerator", c.numerator_label},
          {"denominator", c.denominator_label},
          {"numerator_count", c.numerator},
          {"denominator_count", c.denominator},
          {"ratio", std::move(ratio)},
          {"undefined", !c.ratio.has_value()}};
}

int DoCompare(const Options& o, std::ostream& out, std::ostream& err) {
  auto config = EngineConfigFrom(o);
  if (auto* u = std::get_if<UsageError>(&config)) {
    return UsageFailure(u->message, err);
  }
  const EngineConfig& engine = std::get<EngineConfig>(config);
  absl::StatusOr<Instance> inst = LoadInstance(o);
  if (!inst.ok()) return DataError(inst.status(), err);
  const Hypergraph& g = inst->graph;
  const CapacityMap& caps = inst->caps;

  absl::StatusOr<RunResult> run = ParallelRun(g, caps, engine, o.workers);
  if (!run.ok()) return DataError(run.status(), err);
  absl::StatusOr<RunReport> run_report =
      Report(g, caps, run->matching, run->trace);
  if (!run_report.ok()) return DataError(run_report.status(), err);

  absl::StatusOr<BaselineResult> greedy =
      Greedy(g, caps, std::get<OrderingSpec>(engine.ordering));
  if (!greedy.ok()) return DataError(greedy.status(), err);
  absl::StatusOr<RunReport> greedy_report = Report(g, caps, greedy->matching);
  if (!greedy_report.ok()) return DataError(greedy_report.status(), err);

  std::vector<Outcome> outcomes = {
      Outcome::From("distributed", *run_report),
      Outcome::From("greedy", *greedy)};
  nlohmann::json results = {
      {"distributed", ReportToJson(*run_report)},
      {"greedy", ReportToJson(*greedy_report)},
      {"exact", nullptr},
  };
  const bool exact_skipped = g.num_edges() > o.limit;
  if (!exact_skipped) {
    absl::StatusOr<BaselineResult> exact = ExactOptimal(g, caps, o.limit);
    if (!exact.ok()) return DataError(exact.status(), err);
    absl::StatusOr<RunReport> exact_report = Report(g, caps, exact->matching);
    if (!exact_report.ok()) return DataError(exact_report.status(), err);
    nlohmann::json exact_json = ReportToJson(*exact_report);
    exact_json["optimum"] = *exact->optimum;
    results["exact"] = std::move(exact_json);
    outcomes.push_back(Outcome::From("exact", *exact));
  }

  nlohmann::json comparisons = nlohmann::json::array();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    for (std::size_t j = i + 1; j < outcomes.size(); ++j) {
      absl::StatusOr<Comparison> c = Compare(outcomes[i], outcomes[j]);
      if (!c.ok()) return DataError(c.status(), err);
      comparisons.push_back(ComparisonToJson(*c));
    }
  }
  nlohmann::json summary = {
      {"format_version", kFormatVersion},
      {"method", "compare"},
      {"config", ConfigToJson(SummaryFrom(o, caps, &engine))},
      {"exact_limit", o.limit},
      {"exact_skipped", exact_skipped},
      {"results", std::move(results)},
      {"comparisons", std::move(comparisons)},
  };
  const std::string text = summary.dump(2) + "\n";
  if (o.summary.empty()) {
    out << text;
  } else if (absl::Status s = WriteFile(o.summary, text); !s.ok()) {
    return DataError(s, err);
  }
  return kExitOk;
}

std::variant<EdgeSizeSpec, UsageError> ParseEdgeSize(std::string_view text) {
  std::vector<std::string_view> parts = internal::Split(text, ':');
  if (parts.size() == 2 && parts[0] == "fixed") {
    if (std::optional<std::uint64_t> k = ParseU64(parts[1]); k && *k > 0) {
      return FixedSize{*k};
    }
  } else if (parts.size() == 3 && parts[0] == "zipf") {
    std::optional<double> s = ParseDouble(parts[1]);
    std::optional<std::uint64_t> max = ParseU64(parts[2]);
    if (s && *s >= 0 && max && *max > 0) return ZipfSize{*s, *max};
  }
  return UsageError{"--edge-size must be fixed:K or zipf:S:MAX"};
}

std::variant<PopularitySpec, UsageError> ParsePopularity(
    std::string_view text) {
  if (text == "uniform") return UniformPopularity{};
  std::vector<std::string_view> parts = internal::Split(text, ':');
  if (parts.size() == 2 && parts[0] == "zipf") {
    if (std::optional<double> a = ParseDouble(parts[1]); a && *a >= 0) {
      return ZipfPopularity{*a};
    }
  }
  return UsageError{"--popularity must be uniform or zipf:ALPHA"};
}

int DoGen(const Options& o, std::ostream& out, std::ostream& err) {
  auto size = ParseEdgeSize(o.edge_size);
  if (auto* u = std::get_if<UsageError>(&size)) {
    return UsageFailure(u->message, err);
  }
  auto popularity = ParsePopularity(o.popularity);
  if (auto* u = std::get_if<UsageError>(&popularity)) {
    return UsageFailure(u->message, err);
  }
  if (o.users == 0) return UsageFailure("--users must be >= 1", err);
  GeneratorSpec spec{o.users, o.num_edges, std::get<EdgeSizeSpec>(size),
                     std::get<PopularitySpec>(popularity), o.seed};
  absl::StatusOr<Hypergraph> g = Generate(spec);
  if (!g.ok()) return DataError(g.status(), err);
  const std::string text = SerializeEdgeList(*g);
  if (o.out.empty()) {
    out << text;
  } else if (absl::Status s = WriteFile(o.out, text); !s.ok()) {
    return DataError(s, err);
  }
  return kExitOk;
}

int DoValidate(const Options& o, std::ostream& out, std::ostream& err) {
  absl::StatusOr<Instance> inst = LoadInstance(o);
  if (!inst.ok()) return DataError(inst.status(), err);
  std::vector<Diagnostic> diagnostics = Validate(inst->graph, inst->caps);
  for (const Diagnostic& d : diagnostics) {
    std::string_view level = d.severity == Severity::kInfo      ? "info"
                             : d.severity == Severity::kWarning ? "warning"
                                                                : "error";
    out << level << ": " << d.message << "\n";
  }
  if (diagnostics.empty()) out << "clean\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Hypergraph contribution bounding", "hyperbound"};
  app.require_subcommand(1);
  Options o;

  CLI::App* run = app.add_subcommand("run", "Round-based distributed bounding");
  AddInstanceFlags(run, o);
  AddOrderingFlags(run, o);
  AddEngineFlags(run, o);
  AddOutputFlags(run, o);

  CLI::App* greedy = app.add_subcommand("greedy", "Sequential greedy baseline");
  AddInstanceFlags(greedy, o);
  AddOrderingFlags(greedy, o);
  AddOutputFlags(greedy, o);

  CLI::App* optimal =
      app.add_subcommand("optimal", "Exact optimum by exhaustive search");
  AddInstanceFlags(optimal, o);
  AddOutputFlags(optimal, o);
  optimal->add_option("--limit", o.limit, "Maximum edge count");

  CLI::App* compare =
      app.add_subcommand("compare", "Distributed vs greedy vs exact");
  AddInstanceFlags(compare, o);
  AddOrderingFlags(compare, o);
  AddEngineFlags(compare, o);
  compare->add_option("--summary", o.summary, "Joint JSON summary file");
  compare->add_option("--limit", o.limit,
                      "Skip the exact optimum above this edge count");

  CLI::App* gen = app.add_subcommand("gen", "Generate a synthetic instance");
  gen->add_option("--users", o.users, "Number of users n")->required();
  gen->add_option("--num-edges", o.num_edges, "Number of edges m")->required();
  gen->add_option("--edge-size", o.edge_size, "fixed:K or zipf:S:MAX");
  gen->add_option("--popularity", o.popularity, "uniform or zipf:ALPHA");
  gen->add_option("--seed", o.seed, "Generator seed");
  gen->add_option("--out", o.out, "Edge list file (default: stdout)");

  CLI::App* validate =
      app.add_subcommand("validate", "Report instance diagnostics");
  AddInstanceFlags(validate, o);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  if (run->parsed()) return DoRun(o, out, err);
  if (greedy->parsed()) return DoGreedy(o, out, err);
  if (optimal->parsed()) return DoOptimal(o, out, err);
  if (compare->parsed()) return DoCompare(o, out, err);
  if (gen->parsed()) return DoGen(o, out, err);
  if (validate->parsed()) return DoValidate(o, out, err);
  return kExitUsage;
}

}  // namespace hyperbound

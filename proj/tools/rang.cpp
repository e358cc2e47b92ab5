// Copyright 2026 The RANG Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// rang: generate synthetic ensembles of a covert network and analyze them.
//
//   rang validate  <dir>
//   rang summarize <dir> --out summary.json
//   rang generate  <dir|summary.json> --model bwrn|wrg|sbm --count N
//                  --pb F --seed S --out <dir>
//   rang detect    <dir> --out <dir>
//   rang analyze   <original-dir> <ensemble-dir> [--m COUNT]
//   rang stability <original-dir> <ensemble-dir> --matching exact|flexible
//
// Exit codes: 0 ok, 1 I/O or configuration error, 2 invalid input data.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rang/rang.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInvalid = 2;

int ExitCodeFor(const rang::Error& e) {
  switch (e.kind()) {
    case rang::ErrorKind::kValidation:
    case rang::ErrorKind::kFormat:
      return kExitInvalid;
    default:
      return kExitConfig;
  }
}

struct GlobalFlags {
  bool json = false;
  int threads = 0;
};

void PrintFindings(const char* label, const std::vector<rang::Violation>& vs,
                   std::ostream& os) {
  for (const rang::Violation& v : vs) {
    os << label << " [" << v.rule << "] " << v.detail << "\n";
  }
}

ordered_json FindingsJson(const std::vector<rang::Violation>& vs) {
  ordered_json arr = ordered_json::array();
  for (const rang::Violation& v : vs) {
    arr.push_back({{"rule", v.rule}, {"detail", v.detail}});
  }
  return arr;
}

std::optional<rang::PathLength> ParsePathLength(const std::string& s) {
  if (s == "inverse-weight") return rang::PathLength::kInverseWeight;
  if (s == "unit") return rang::PathLength::kUnit;
  return std::nullopt;
}

int RunValidate(const GlobalFlags& g, const std::string& dir) {
  std::vector<rang::Violation> anon;
  if (fs::is_regular_file(fs::path(dir) / rang::kNodesFile)) {
    anon = rang::AnonymizeCheckDirectory(dir);
  }
  try {
    rang::Dataset ds = rang::LoadDataset(dir);
    auto found = rang::DetectIndependent(ds.partition, ds.network);
    std::vector<rang::Violation> advisories;
    for (const auto& f : found) {
      if (f.flagged && !f.from_input) {
        advisories.push_back(
            {"independent-candidate",
             "group " + std::to_string(f.gid) + " has no incoming edges from "
             "outside; reciprocity " + rang::io::FormatDouble(f.reciprocity)});
      }
    }
    if (g.json) {
      ordered_json doc;
      doc["status"] = "ok";
      doc["nodes"] = ds.network.nodes.size();
      doc["edges"] = ds.network.edges.size();
      doc["groups"] = ds.partition.groups.size();
      doc["warnings"] = FindingsJson(ds.warnings);
      doc["anonymity"] = FindingsJson(anon);
      doc["advisories"] = FindingsJson(advisories);
      std::cout << doc.dump(2) << "\n";
    } else {
      std::cout << "ok: " << ds.network.nodes.size() << " nodes, "
                << ds.network.edges.size() << " edges, "
                << ds.partition.groups.size() << " groups\n";
      PrintFindings("warning", ds.warnings, std::cout);
      PrintFindings("anonymity", anon, std::cout);
      PrintFindings("advisory", advisories, std::cout);
    }
    return kExitOk;
  } catch (const rang::Error& e) {
    if (e.kind() != rang::ErrorKind::kValidation &&
        e.kind() != rang::ErrorKind::kFormat) {
      throw;
    }
    std::vector<rang::Violation> violations;
    if (const auto* ve = dynamic_cast<const rang::ValidationError*>(&e)) {
      violations = ve->violations();
    } else {
      violations.push_back({"format", e.what()});
    }
    if (g.json) {
      ordered_json doc;
      doc["status"] = "invalid";
      doc["violations"] = FindingsJson(violations);
      doc["anonymity"] = FindingsJson(anon);
      std::cout << doc.dump(2) << "\n";
    } else {
      PrintFindings("violation", violations, std::cout);
      PrintFindings("anonymity", anon, std::cout);
    }
    return kExitInvalid;
  }
}

rang::Dataset LoadWithIndependence(const std::string& dir, bool auto_independent,
                                   std::size_t cap) {
  rang::Dataset ds = rang::LoadDataset(dir);
  auto found = rang::DetectIndependent(ds.partition, ds.network, cap);
  if (auto_independent) {
    rang::ApplyIndependence(ds.partition, found);
  } else {
    for (const auto& f : found) {
      if (f.flagged && !f.from_input) {
        std::cerr << "advisory: group " << f.gid
                  << " looks independent (no incoming edges from outside)\n";
      }
    }
  }
  return ds;
}

int RunSummarize(const GlobalFlags& g, const std::string& dir,
                 const std::string& out, bool auto_independent,
                 std::size_t cap) {
  rang::Dataset ds = LoadWithIndependence(dir, auto_independent, cap);
  rang::EdgeClassSummary s = rang::Summarize(ds.network, ds.partition);
  rang::io::WriteTextFile(out, rang::SummaryToJson(s).dump(2) + "\n");
  if (g.json) {
    std::cout << ordered_json{{"classes", s.classes.size()},
                              {"total_weight", s.total_weight},
                              {"residual_weight", s.residual_weight},
                              {"out", out}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << s.classes.size() << " classes, total weight "
              << s.total_weight << " (residual " << s.residual_weight
              << ") -> " << out << "\n";
  }
  return kExitOk;
}

struct GenerateArgs {
  std::string input;
  std::string model = "bwrn";
  int count = 1;
  double p_b = rang::kDefaultBernoulliProbability;
  std::uint64_t seed = 0;
  std::string out;
  bool no_shuffle = false;
  bool sbm_weighted_pick = false;
  bool auto_independent = false;
  std::size_t independence_cap = 6;
};

int RunGenerate(const GlobalFlags& g, const GenerateArgs& a) {
  auto model = rang::ModelFromName(a.model);
  if (!model) throw rang::ConfigError("unknown model '" + a.model + "'");
  rang::GenConfig cfg;
  cfg.model = *model;
  cfg.p_b = a.p_b;
  cfg.seed = a.seed;
  cfg.count = a.count;
  cfg.shuffle_ids = !a.no_shuffle;
  cfg.sbm_weighted_pick = a.sbm_weighted_pick;
  cfg.threads = rang::ResolveThreads(g.threads);
  rang::ValidateConfig(cfg);

  rang::GeneratorInput input;
  if (fs::is_regular_file(a.input)) {
    if (cfg.model == rang::GenModel::kSbm) {
      throw rang::ConfigError("the SBM baseline needs a dataset directory");
    }
    input = rang::GeneratorInput::FromSummary(rang::SummaryFromJson(
        nlohmann::json::parse(rang::io::ReadTextFile(a.input))));
  } else {
    rang::Dataset ds =
        LoadWithIndependence(a.input, a.auto_independent, a.independence_cap);
    input = rang::GeneratorInput::FromDataset(ds.network, ds.partition);
  }
  rang::GeneratedEnsemble ens = rang::GenerateEnsemble(input, cfg);
  rang::WriteEnsemble(ens, a.out, cfg.threads);
  if (g.json) {
    std::cout << ordered_json{{"model", a.model},
                              {"count", a.count},
                              {"seed", a.seed},
                              {"out", a.out}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "wrote " << a.count << " " << a.model << " networks to "
              << a.out << "\n";
  }
  return kExitOk;
}

int RunDetect(const GlobalFlags& g, const std::string& dir,
              const std::string& out, rang::PathLength mode) {
  rang::Dataset ds = rang::LoadDataset(dir);
  const rang::UndirectedGraph graph = rang::ToUndirected(ds.network);
  rang::LouvainResult lr = rang::Louvain(graph);
  const auto rows = rang::CentralityTable(graph, mode);
  fs::create_directories(out);
  rang::io::WriteTextFile(fs::path(out) / rang::kGroupsFile,
                          rang::GroupsJson(lr.partition));
  rang::io::WriteTextFile(fs::path(out) / "centrality.csv",
                          rang::CentralityCsv(rows));
  if (g.json) {
    std::cout << ordered_json{{"groups", lr.partition.groups.size()},
                              {"modularity", lr.modularity}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << lr.partition.groups.size() << " groups, modularity "
              << rang::io::FormatDouble(lr.modularity) << "\n";
  }
  return kExitOk;
}

struct AnalyzeArgs {
  std::string original;
  std::string ensemble;
  std::string out;
  int m = 0;
  std::string path_length = "inverse-weight";
  std::string reference = "detected";
  std::optional<std::uint64_t> louvain_seed;
};

rang::AnalysisOptions ToAnalysisOptions(const GlobalFlags& g,
                                        const AnalyzeArgs& a) {
  rang::AnalysisOptions opts;
  auto mode = ParsePathLength(a.path_length);
  if (!mode) throw rang::ConfigError("unknown path length '" + a.path_length + "'");
  opts.path_length = *mode;
  if (a.reference == "detected") {
    opts.reference = rang::Reference::kDetected;
  } else if (a.reference == "input") {
    opts.reference = rang::Reference::kInput;
  } else {
    throw rang::ConfigError("unknown reference '" + a.reference + "'");
  }
  opts.management_count = a.m;
  opts.louvain.shuffle_seed = a.louvain_seed;
  opts.threads = rang::ResolveThreads(g.threads);
  return opts;
}

int RunAnalyze(const GlobalFlags& g, const AnalyzeArgs& a) {
  const std::string out = a.out.empty() ? a.ensemble : a.out;
  auto result = rang::RunAnalyze(a.original, a.ensemble, out,
                                 ToAnalysisOptions(g, a));
  if (g.json) {
    std::cout << rang::ReportJson(result.report)["aggregate"].dump(2) << "\n";
  } else {
    using rang::io::FormatDouble;
    const auto& r = result.report;
    std::cout << "members " << r.members.size() << "\n"
              << "metric    mean      median    min       max\n";
    auto row = [](const char* name, const rang::Aggregate& x) {
      std::printf("%-9s %-9.3f %-9.3f %-9.3f %-9.3f\n", name, x.mean, x.median,
                  x.min, x.max);
    };
    row("nmi", r.nmi);
    row("jaccard", r.jaccard);
    row("combined", r.combined);
    std::cout << "reports written to " << out << "\n";
  }
  return kExitOk;
}

int RunStabilityCmd(const GlobalFlags& g, const AnalyzeArgs& a,
                    const std::string& matching, double threshold) {
  auto mode = rang::MatchModeFromName(matching);
  if (!mode) throw rang::ConfigError("unknown matching mode '" + matching + "'");
  rang::StabilityOptions opts;
  opts.mode = *mode;
  opts.threshold = threshold;
  opts.analysis = ToAnalysisOptions(g, a);
  const std::string out = a.out.empty() ? a.ensemble : a.out;
  auto result = rang::RunStability(a.original, a.ensemble, out, opts);
  const auto& v = result.verdict;
  if (g.json) {
    std::cout << ordered_json{{"mode", matching},
                              {"members", v.members},
                              {"original_count", v.original_count},
                              {"original_share", v.original_share},
                              {"stable", v.stable},
                              {"top_counts", v.top_counts}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "original structure: " << v.original_count << "/" << v.members
              << " (" << rang::io::FormatDouble(100.0 * v.original_share)
              << "%) -> " << (v.stable ? "stable" : "not stable") << "\n"
              << "distinct structures: " << result.census.size() << "\n"
              << "top frequencies:";
    for (int c : v.top_counts) std::cout << " " << c;
    std::cout << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic covert network generator and ensemble analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rang::kVersion));
  GlobalFlags g;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--threads", g.threads,
                 "Worker threads (default: RANG_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);

  std::string dir;
  std::string out;

  auto* validate = app.add_subcommand("validate", "Validate a dataset directory");
  validate->add_option("dir", dir)->required();

  bool auto_independent = false;
  std::size_t independence_cap = 6;
  auto* summarize =
      app.add_subcommand("summarize", "Export the edge-class summary");
  summarize->add_option("dir", dir)->required();
  summarize->add_option("--out", out, "summary.json path")->required();
  summarize->add_flag("--auto-independent", auto_independent,
                      "Mark detected independent groups");
  summarize->add_option("--independence-cap", independence_cap,
                        "Largest group size considered independent");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Generate an ensemble");
  generate->add_option("input", gen.input, "Dataset directory or summary.json")
      ->required();
  generate->add_option("--model", gen.model, "bwrn, wrg or sbm")
      ->check(CLI::IsMember({"bwrn", "wrg", "sbm"}));
  generate->add_option("--count", gen.count, "Number of networks")
      ->check(CLI::PositiveNumber);
  generate->add_option("--pb", gen.p_b, "BWRN trial probability in (0,1]");
  generate->add_option("--seed", gen.seed, "Master seed");
  generate->add_option("--out", gen.out, "Output directory")->required();
  generate->add_flag("--no-shuffle", gen.no_shuffle,
                     "Keep original node ids in the output");
  generate->add_flag("--sbm-weighted-pick", gen.sbm_weighted_pick,
                     "SBM: pick block pairs by weight share");
  generate->add_flag("--auto-independent", gen.auto_independent,
                     "Mark detected independent groups");
  generate->add_option("--independence-cap", gen.independence_cap,
                       "Largest group size considered independent");

  std::string path_length = "inverse-weight";
  auto* detect =
      app.add_subcommand("detect", "Detect groups and centrality of a dataset");
  detect->add_option("dir", dir)->required();
  detect->add_option("--out", out, "Output directory")->required();
  detect->add_option("--path-length", path_length, "inverse-weight or unit");

  AnalyzeArgs an;
  auto add_analysis_flags = [&](CLI::App* cmd) {
    cmd->add_option("original", an.original)->required();
    cmd->add_option("ensemble", an.ensemble)->required();
    cmd->add_option("--out", an.out, "Output directory (default: ensemble)");
    cmd->add_option("--m", an.m, "Management node count for leader detection")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--path-length", an.path_length, "inverse-weight or unit");
    cmd->add_option("--reference", an.reference,
                    "Original groups: detected or input");
    cmd->add_option("--louvain-seed", an.louvain_seed,
                    "Shuffle Louvain node order with this seed");
  };
  auto* analyze = app.add_subcommand("analyze", "Score an ensemble");
  add_analysis_flags(analyze);

  std::string matching = "exact";
  double threshold = rang::kDefaultStabilityThreshold;
  auto* stability =
      app.add_subcommand("stability", "Meta-graph stability analysis");
  add_analysis_flags(stability);
  stability->add_option("--matching", matching, "exact or flexible");
  stability->add_option("--threshold", threshold,
                        "Share of members needed to call the original stable");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*validate) return RunValidate(g, dir);
    if (*summarize) {
      return RunSummarize(g, dir, out, auto_independent, independence_cap);
    }
    if (*generate) return RunGenerate(g, gen);
    if (*detect) {
      auto mode = ParsePathLength(path_length);
      if (!mode) throw rang::ConfigError("unknown path length");
      return RunDetect(g, dir, out, *mode);
    }
    if (*analyze) return RunAnalyze(g, an);
    if (*stability) return RunStabilityCmd(g, an, matching, threshold);
  } catch (const rang::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const rang::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ExitCodeFor(e);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}

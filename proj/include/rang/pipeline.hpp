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

// End-to-end drivers behind the command-line tool: ensemble directories,
// their manifest, and the analyze / stability passes over an ensemble.

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rang/centrality.hpp"
#include "rang/community.hpp"
#include "rang/compare.hpp"
#include "rang/error.hpp"
#include "rang/generate.hpp"
#include "rang/ingest.hpp"
#include "rang/io_util.hpp"
#include "rang/model.hpp"
#include "rang/parallel.hpp"
#include "rang/stability.hpp"

namespace rang {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kManifestFile = "manifest.json";

struct Manifest {
  GenModel model = GenModel::kBwrn;
  double p_b = kDefaultBernoulliProbability;
  std::uint64_t seed = 0;
  int count = 0;
  bool shuffle_ids = true;
  bool sbm_weighted_pick = false;
  std::string version{kVersion};
};

inline std::string ManifestJson(const Manifest& m) {
  nlohmann::ordered_json doc;
  doc["model"] = ModelName(m.model);
  doc["p_b"] = m.p_b;
  doc["seed"] = m.seed;
  doc["count"] = m.count;
  doc["shuffle_ids"] = m.shuffle_ids;
  doc["sbm_weighted_pick"] = m.sbm_weighted_pick;
  doc["version"] = m.version;
  return doc.dump(2) + "\n";
}

inline Manifest ParseManifest(std::string_view text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    Manifest m;
    auto model = ModelFromName(doc.at("model").get<std::string>());
    if (!model) throw ConfigError("manifest: unknown model");
    m.model = *model;
    m.p_b = doc.at("p_b").get<double>();
    m.seed = doc.at("seed").get<std::uint64_t>();
    m.count = doc.at("count").get<int>();
    m.shuffle_ids = doc.value("shuffle_ids", true);
    m.sbm_weighted_pick = doc.value("sbm_weighted_pick", false);
    m.version = doc.value("version", std::string(kVersion));
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kFormat, std::string("manifest: ") + e.what());
  }
}

inline Manifest ManifestFor(const GenConfig& cfg) {
  Manifest m;
  m.model = cfg.model;
  m.p_b = cfg.p_b;
  m.seed = cfg.seed;
  m.count = cfg.count;
  m.shuffle_ids = cfg.shuffle_ids;
  m.sbm_weighted_pick = cfg.sbm_weighted_pick;
  return m;
}

namespace pipeline_internal {

inline std::optional<std::int64_t> MemberIndex(const std::filesystem::path& p) {
  const std::string name = p.filename().string();
  if (name.empty() ||
      !std::all_of(name.begin(), name.end(),
                   [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  return io::ParseInt(name);
}

// Numeric member directories of an ensemble, by index.
inline std::vector<std::pair<std::int64_t, std::filesystem::path>> MemberDirs(
    const std::filesystem::path& dir) {
  std::vector<std::pair<std::int64_t, std::filesystem::path>> out;
  std::error_code ec;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec)) {
    if (!entry.is_directory()) continue;
    if (auto k = MemberIndex(entry.path())) out.emplace_back(*k, entry.path());
  }
  if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace pipeline_internal

// Writes members to <dir>/<k>/ and the manifest. Member directories left over
// from an earlier, larger ensemble are removed.
inline void WriteEnsemble(const GeneratedEnsemble& ens,
                          const std::filesystem::path& dir, int threads = 1) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  for (const auto& [k, path] : pipeline_internal::MemberDirs(dir)) {
    if (k >= static_cast<std::int64_t>(ens.members.size()) &&
        std::filesystem::exists(path / kNodesFile)) {
      std::filesystem::remove_all(path, ec);
    }
  }
  ParallelFor(ens.members.size(), threads, [&](std::size_t k) {
    SaveDataset(ens.members[k].network, ens.members[k].partition,
                dir / std::to_string(k));
  });
  io::WriteTextFile(dir / kManifestFile, ManifestJson(ManifestFor(ens.config)));
}

struct LoadedEnsemble {
  std::optional<Manifest> manifest;
  std::vector<std::int64_t> indices;
  std::vector<Dataset> members;
};

inline LoadedEnsemble LoadEnsemble(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("ensemble directory " + dir.string() + " does not exist");
  }
  LoadedEnsemble ens;
  if (std::filesystem::is_regular_file(dir / kManifestFile)) {
    ens.manifest = ParseManifest(io::ReadTextFile(dir / kManifestFile));
  }
  for (const auto& [k, path] : pipeline_internal::MemberDirs(dir)) {
    ens.indices.push_back(k);
    ens.members.push_back(LoadDataset(path));
  }
  if (ens.members.empty()) {
    throw IoError("ensemble directory " + dir.string() + " has no members");
  }
  return ens;
}

// Relabels member `index` back into the original id space when the
// generator shuffled ids.
inline Network ToOriginalIds(const Network& member,
                             const std::optional<Manifest>& manifest,
                             std::int64_t index,
                             const std::vector<NodeId>& original_ids) {
  std::vector<NodeId> a = member.NodeIds();
  std::vector<NodeId> b = original_ids;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) {
    throw Error(ErrorKind::kValidation,
                "ensemble member " + std::to_string(index) +
                    " does not share the original's node ids");
  }
  if (!manifest.has_value() || !manifest->shuffle_ids) return member;
  const auto forward = IdPermutation(original_ids, manifest->seed,
                                     static_cast<std::uint64_t>(index));
  return RelabelNetwork(member, InvertIdMap(forward));
}

enum class Reference {
  // Groups detected by Louvain on the original network.
  kDetected,
  // Groups listed in the original dataset, unassigned nodes as singletons.
  kInput,
};

struct AnalysisOptions {
  PathLength path_length = PathLength::kInverseWeight;
  int management_count = 0;  // 0: number of level >= 2 nodes in the original
  Reference reference = Reference::kDetected;
  LouvainOptions louvain;
  int threads = 1;
};

inline int ManagementCount(const Network& original, const AnalysisOptions& o) {
  const int m = o.management_count > 0 ? o.management_count
                                       : original.ManagementCount();
  return std::max(1, m);
}

// Louvain groups and RBC leaders of one network.
inline NetworkFindings AnalyzeNetwork(const Network& net, int management_count,
                                      const AnalysisOptions& opts) {
  const UndirectedGraph g = ToUndirected(net);
  NetworkFindings f;
  f.groups = Louvain(g, opts.louvain).partition;
  f.leaders = DetectLeaders(g, management_count, opts.path_length);
  return f;
}

inline NetworkFindings AnalyzeOriginal(const Dataset& original,
                                       const AnalysisOptions& opts) {
  const int m = ManagementCount(original.network, opts);
  NetworkFindings f = AnalyzeNetwork(original.network, m, opts);
  if (opts.reference == Reference::kInput) {
    GroupPartition input = original.partition;
    for (Group& g : input.groups) {
      g.leader.reset();
      g.independent = false;
    }
    f.groups = CompleteWithSingletons(std::move(input),
                                      original.network.NodeIds());
  }
  return f;
}

// Findings for every member, in the original id space.
inline std::vector<NetworkFindings> AnalyzeMembers(
    const Dataset& original, const std::vector<Network>& members,
    const AnalysisOptions& opts) {
  const int m = ManagementCount(original.network, opts);
  std::vector<NetworkFindings> out(members.size());
  ParallelFor(members.size(), opts.threads, [&](std::size_t k) {
    out[k] = AnalyzeNetwork(members[k], m, opts);
  });
  return out;
}

inline std::vector<Network> MembersInOriginalIds(const Dataset& original,
                                                 const LoadedEnsemble& ens) {
  const std::vector<NodeId> ids = original.network.NodeIds();
  std::vector<Network> out;
  out.reserve(ens.members.size());
  for (std::size_t i = 0; i < ens.members.size(); ++i) {
    out.push_back(ToOriginalIds(ens.members[i].network, ens.manifest,
                                ens.indices[i], ids));
  }
  return out;
}

struct AnalyzeOutput {
  EnsembleReport report;
  std::vector<CentralityRow> original_centrality;
  NetworkFindings original;
};

// Scores an ensemble against its original and writes report.json,
// report.csv and centrality.csv (original network) into `out_dir`.
inline AnalyzeOutput RunAnalyze(const std::filesystem::path& original_dir,
                                const std::filesystem::path& ensemble_dir,
                                const std::filesystem::path& out_dir,
                                const AnalysisOptions& opts) {
  const Dataset original = LoadDataset(original_dir);
  const LoadedEnsemble ens = LoadEnsemble(ensemble_dir);
  AnalyzeOutput out;
  out.original = AnalyzeOriginal(original, opts);
  out.original_centrality =
      CentralityTable(ToUndirected(original.network), opts.path_length);
  const auto members = MembersInOriginalIds(original, ens);
  out.report = BuildEnsembleReport(out.original,
                                   AnalyzeMembers(original, members, opts));
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string());
  io::WriteTextFile(out_dir / "report.json", ReportJson(out.report).dump(2) + "\n");
  io::WriteTextFile(out_dir / "report.csv", ReportCsv(out.report));
  io::WriteTextFile(out_dir / "centrality.csv",
                    CentralityCsv(out.original_centrality));
  return out;
}

struct StabilityOptions {
  MatchMode mode = MatchMode::kExact;
  double threshold = kDefaultStabilityThreshold;
  AnalysisOptions analysis;
};

struct StabilityOutput {
  MetaGraph metagraph;
  std::vector<CensusEntry> census;
  StabilityVerdict verdict;
};

// Builds the meta-graph over the ensemble's detected partitions and writes
// metagraph_degrees.csv and census.json into `out_dir`.
inline StabilityOutput RunStability(const std::filesystem::path& original_dir,
                                    const std::filesystem::path& ensemble_dir,
                                    const std::filesystem::path& out_dir,
                                    const StabilityOptions& opts) {
  const Dataset original = LoadDataset(original_dir);
  const LoadedEnsemble ens = LoadEnsemble(ensemble_dir);
  const auto members = MembersInOriginalIds(original, ens);
  std::vector<CanonicalPartition> forms(members.size());
  ParallelFor(members.size(), opts.analysis.threads, [&](std::size_t k) {
    forms[k] = Canonical(Louvain(ToUndirected(members[k]),
                                 opts.analysis.louvain).partition);
  });
  const CanonicalPartition original_form =
      Canonical(AnalyzeOriginal(original, opts.analysis).groups);
  StabilityOutput out;
  out.metagraph = BuildMetaGraph(forms, opts.mode, original_form,
                                 opts.analysis.threads);
  out.census = StructureCensus(forms, out.metagraph);
  out.verdict = Verdict(forms, original_form, out.census, opts.mode,
                        opts.threshold);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create " + out_dir.string());
  io::WriteTextFile(out_dir / "metagraph_degrees.csv",
                    DegreeHistogramCsv(out.metagraph));
  io::WriteTextFile(out_dir / "census.json",
                    CensusJson(out.census, out.verdict).dump(2) + "\n");
  return out;
}

}  // namespace rang

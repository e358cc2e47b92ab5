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

#include "rang/pipeline.hpp"

#include <gtest/gtest.h>

#include <string>

#include "test_util.hpp"

namespace rang {
namespace {

namespace fs = std::filesystem;

const fs::path kCell = fs::path(RANG_FIXTURE_DIR) / "cell";

TEST(ManifestTest, RoundTrip) {
  GenConfig cfg;
  cfg.model = GenModel::kWrg;
  cfg.seed = 0xFFFFFFFFFFFFFFFFull;
  cfg.count = 12;
  cfg.shuffle_ids = false;
  const Manifest m = ParseManifest(ManifestJson(ManifestFor(cfg)));
  EXPECT_EQ(m.model, GenModel::kWrg);
  EXPECT_EQ(m.seed, cfg.seed);
  EXPECT_EQ(m.count, 12);
  EXPECT_FALSE(m.shuffle_ids);
  EXPECT_EQ(m.version, kVersion);
  EXPECT_THROW(ParseManifest("{}"), Error);
  EXPECT_THROW(ParseManifest(R"({"model":"x","p_b":1,"seed":1,"count":1})"),
               Error);
}

TEST(EnsembleIoTest, WriteLoadAndStaleMembers) {
  const Dataset ds = LoadDataset(kCell);
  testing::ScratchDir dir("ens_io");
  GenConfig cfg;
  cfg.seed = 5;
  cfg.count = 4;
  WriteEnsemble(GenerateEnsemble(ds.network, ds.partition, cfg), dir.path());
  EXPECT_TRUE(fs::exists(dir / "3" / "edges.csv"));
  cfg.count = 2;
  const auto ens = GenerateEnsemble(ds.network, ds.partition, cfg);
  WriteEnsemble(ens, dir.path(), 2);
  EXPECT_FALSE(fs::exists(dir / "3"));
  const LoadedEnsemble back = LoadEnsemble(dir.path());
  ASSERT_EQ(back.members.size(), 2u);
  EXPECT_EQ(back.indices, (std::vector<std::int64_t>{0, 1}));
  EXPECT_EQ(back.manifest->count, 2);
  EXPECT_EQ(back.members[1].network, ens.members[1].network);
}

TEST(EnsembleIoTest, EmptyOrMissing) {
  testing::ScratchDir dir("ens_empty");
  EXPECT_THROW(LoadEnsemble(dir.path()), Error);
  EXPECT_THROW(LoadEnsemble(dir / "nope"), Error);
}

TEST(ToOriginalIdsTest, UndoesShuffle) {
  const Dataset ds = LoadDataset(kCell);
  GenConfig cfg;
  cfg.seed = 77;
  cfg.count = 3;
  const auto shuffled = GenerateEnsemble(ds.network, ds.partition, cfg);
  cfg.shuffle_ids = false;
  const auto plain = GenerateEnsemble(ds.network, ds.partition, cfg);
  cfg.shuffle_ids = true;
  const Manifest m = ManifestFor(cfg);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_NE(shuffled.members[k].network, plain.members[k].network);
    EXPECT_EQ(ToOriginalIds(shuffled.members[k].network, m, k,
                            ds.network.NodeIds()),
              plain.members[k].network);
  }
  Network other = ds.network;
  other.nodes.pop_back();
  EXPECT_THROW(ToOriginalIds(other, m, 0, ds.network.NodeIds()), Error);
}

// An ensemble made of verbatim copies of the original, without a manifest.
void WriteCopies(const Dataset& ds, const fs::path& dir, int count) {
  for (int k = 0; k < count; ++k) {
    SaveDataset(ds.network, ds.partition, dir / std::to_string(k));
  }
}

TEST(RunAnalyzeTest, CopiesScoreOne) {
  const Dataset ds = LoadDataset(kCell);
  testing::ScratchDir dir("analyze_copies");
  WriteCopies(ds, dir / "ens", 3);
  for (Reference ref : {Reference::kDetected, Reference::kInput}) {
    AnalysisOptions opts;
    opts.reference = ref;
    const auto out = RunAnalyze(kCell, dir / "ens", dir / "out", opts);
    EXPECT_EQ(out.report.members.size(), 3u);
    EXPECT_DOUBLE_EQ(out.report.jaccard.mean, 1.0);
    if (ref == Reference::kDetected) {
      EXPECT_DOUBLE_EQ(out.report.nmi.mean, 1.0);
    } else {
      EXPECT_LT(out.report.nmi.mean, 1.0);
    }
  }
  EXPECT_TRUE(fs::exists(dir / "out" / "report.json"));
  EXPECT_TRUE(fs::exists(dir / "out" / "report.csv"));
  EXPECT_TRUE(fs::exists(dir / "out" / "centrality.csv"));
}

TEST(RunAnalyzeTest, LeadersOfTheCell) {
  // Boss and the three group leaders carry the shortest paths.
  const Dataset ds = LoadDataset(kCell);
  const auto f = AnalyzeOriginal(ds, {});
  EXPECT_EQ(f.leaders, (std::vector<NodeId>{1, 2, 3, 4}));
}

TEST(RunAnalyzeTest, MissingOriginal) {
  testing::ScratchDir dir("analyze_missing");
  try {
    RunAnalyze(dir / "nothing", dir / "ens", dir / "out", {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
  }
}

TEST(RunAnalyzeTest, GeneratedEnsembleIsScoredInOriginalIds) {
  const Dataset ds = LoadDataset(kCell);
  testing::ScratchDir dir("analyze_gen");
  GenConfig cfg;
  cfg.seed = 1;
  cfg.count = 10;
  cfg.p_b = 1.0;
  WriteEnsemble(GenerateEnsemble(ds.network, ds.partition, cfg), dir / "ens");
  const auto out = RunAnalyze(kCell, dir / "ens", dir / "ens", {});
  // With p_B = 1 the class weights survive, so the structure mostly does.
  EXPECT_GT(out.report.nmi.median, 0.5);
}

TEST(RunStabilityTest, IdenticalEnsemble) {
  const Dataset ds = LoadDataset(kCell);
  testing::ScratchDir dir("stab_copies");
  WriteCopies(ds, dir / "ens", 4);
  for (MatchMode mode : {MatchMode::kExact, MatchMode::kFlexible}) {
    StabilityOptions opts;
    opts.mode = mode;
    const auto out = RunStability(kCell, dir / "ens", dir / "out", opts);
    ASSERT_EQ(out.census.size(), 1u);
    EXPECT_EQ(out.census[0].count, 4);
    EXPECT_TRUE(out.verdict.stable);
    EXPECT_DOUBLE_EQ(out.verdict.original_share, 1.0);
    EXPECT_EQ(io::ReadTextFile(dir / "out" / "metagraph_degrees.csv"),
              "degree,count\n3,4\n");
  }
}

TEST(PipelineTest, ByteIdenticalAcrossRunsAndThreads) {
  testing::ScratchDir dir("determinism");
  const Dataset ds = LoadDataset(kCell);
  auto run = [&](const fs::path& out, int threads) {
    GenConfig cfg;
    cfg.seed = 2024;
    cfg.count = 12;
    cfg.threads = threads;
    WriteEnsemble(GenerateEnsemble(ds.network, ds.partition, cfg), out,
                  threads);
    AnalysisOptions a;
    a.threads = threads;
    RunAnalyze(kCell, out, out, a);
    StabilityOptions s;
    s.mode = MatchMode::kFlexible;
    s.analysis = a;
    RunStability(kCell, out, out, s);
    return testing::TreeSnapshot(out);
  };
  const auto a = run(dir / "a", 1);
  EXPECT_EQ(run(dir / "b", 1), a);
  EXPECT_EQ(run(dir / "c", 4), a);
  EXPECT_GT(a.size(), 12u * 3);
}

}  // namespace
}  // namespace rang

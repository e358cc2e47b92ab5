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

#include "rang/compare.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "test_util.hpp"

namespace rang {
namespace {

GroupPartition Blocks(const std::vector<std::vector<NodeId>>& blocks) {
  GroupPartition p;
  GroupId gid = 0;
  for (const auto& b : blocks) p.groups.push_back({gid++, b, {}, false});
  return p;
}

// Contingency-table NMI over a dense label vector, log base 2. The ratio
// is base independent.
double NmiOracle(const std::vector<int>& a, const std::vector<int>& b) {
  const int n = static_cast<int>(a.size());
  const int ka = *std::max_element(a.begin(), a.end()) + 1;
  const int kb = *std::max_element(b.begin(), b.end()) + 1;
  std::vector<std::vector<double>> table(ka, std::vector<double>(kb, 0.0));
  for (int i = 0; i < n; ++i) table[a[i]][b[i]] += 1;
  std::vector<double> ra(ka, 0.0), rb(kb, 0.0);
  for (int i = 0; i < ka; ++i) {
    for (int j = 0; j < kb; ++j) {
      ra[i] += table[i][j];
      rb[j] += table[i][j];
    }
  }
  double num = 0.0;
  for (int i = 0; i < ka; ++i) {
    for (int j = 0; j < kb; ++j) {
      if (table[i][j] > 0) {
        num += table[i][j] * std::log2(table[i][j] * n / (ra[i] * rb[j]));
      }
    }
  }
  double den = 0.0;
  for (double x : ra) if (x > 0) den += x * std::log2(x / n);
  for (double x : rb) if (x > 0) den += x * std::log2(x / n);
  if (den == 0.0) return 1.0;
  return -2.0 * num / den;
}

GroupPartition FromLabels(const std::vector<int>& labels) {
  std::vector<std::vector<NodeId>> blocks(
      *std::max_element(labels.begin(), labels.end()) + 1);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    blocks[labels[i]].push_back(static_cast<NodeId>(i));
  }
  std::vector<std::vector<NodeId>> nonempty;
  for (auto& b : blocks) {
    if (!b.empty()) nonempty.push_back(b);
  }
  return Blocks(nonempty);
}

TEST(NmiTest, Examples) {
  const auto p = Blocks({{1, 2}, {3, 4}});
  EXPECT_DOUBLE_EQ(Nmi(p, p), 1.0);
  EXPECT_DOUBLE_EQ(Nmi(Blocks({{1, 2, 3, 4}}), Blocks({{1}, {2}, {3}, {4}})),
                   0.0);
  EXPECT_NEAR(Nmi(p, Blocks({{1, 3}, {2, 4}})), 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(Nmi(Blocks({{1, 2, 3}}), Blocks({{3, 2, 1}})), 1.0);
  EXPECT_DOUBLE_EQ(Nmi(GroupPartition{}, GroupPartition{}), 1.0);
}

TEST(NmiTest, DifferentUniversesFail) {
  EXPECT_THROW(Nmi(Blocks({{1, 2}}), Blocks({{1, 3}})), Error);
  EXPECT_THROW(Nmi(Blocks({{1, 2}}), Blocks({{1}, {2}, {3}})), Error);
}

TEST(NmiTest, MatchesContingencyOracle) {
  Rng rng(1);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + trial % 30;
    std::uniform_int_distribution<int> ka(1, n), kb(1, n);
    const int ca = ka(rng), cb = kb(rng);
    std::vector<int> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = std::uniform_int_distribution<int>(0, ca - 1)(rng);
      b[i] = std::uniform_int_distribution<int>(0, cb - 1)(rng);
    }
    const auto pa = FromLabels(a), pb = FromLabels(b);
    const double v = Nmi(pa, pb);
    EXPECT_NEAR(v, NmiOracle(a, b), 1e-12);
    EXPECT_GE(v, 0.0);
    EXPECT_LE(v, 1.0);
    EXPECT_DOUBLE_EQ(v, Nmi(pb, pa));
    // Relabel and reorder groups.
    GroupPartition shuffled = pa;
    std::shuffle(shuffled.groups.begin(), shuffled.groups.end(), rng);
    for (Group& g : shuffled.groups) {
      g.gid += 100;
      std::reverse(g.members.begin(), g.members.end());
    }
    EXPECT_NEAR(Nmi(shuffled, pb), v, 1e-12);
    EXPECT_NEAR(Nmi(pa, pa), 1.0, 1e-12);
  }
}

TEST(CompleteWithSingletonsTest, AddsMissingNodes) {
  const auto p = CompleteWithSingletons(Blocks({{1, 2}}), {1, 2, 3, 4});
  ASSERT_EQ(p.groups.size(), 3u);
  EXPECT_EQ(p.groups[1].members, (std::vector<NodeId>{3}));
  EXPECT_EQ(p.groups[2].gid, 2);
}

TEST(JaccardTest, Examples) {
  const std::vector<NodeId> caviar = {1, 3, 12, 76};
  EXPECT_DOUBLE_EQ(JaccardLeadership(caviar, caviar), 1.0);
  EXPECT_DOUBLE_EQ(JaccardLeadership({1, 12}, caviar), 0.5);
  EXPECT_DOUBLE_EQ(JaccardLeadership({1, 2}, {3, 4}), 0.0);
  EXPECT_DOUBLE_EQ(JaccardLeadership({}, {}), 1.0);
  EXPECT_DOUBLE_EQ(JaccardLeadership({}, {3}), 0.0);
}

TEST(JaccardTest, SymmetryAndCommonElement) {
  Rng rng(2);
  std::uniform_int_distribution<NodeId> id(0, 12);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<NodeId> a, b;
    for (int i = 0; i < 5; ++i) a.push_back(id(rng));
    for (int i = 0; i < 4; ++i) b.push_back(id(rng));
    const double j = JaccardLeadership(a, b);
    EXPECT_DOUBLE_EQ(j, JaccardLeadership(b, a));
    a.push_back(100);
    b.push_back(100);
    EXPECT_GE(JaccardLeadership(a, b), j);
  }
}

TEST(CombinedScoreTest, Examples) {
  EXPECT_NEAR(CombinedScore(0.839, 0.681), 0.571, 5e-4);
  EXPECT_DOUBLE_EQ(CombinedScore(1, 1), 1.0);
  EXPECT_DOUBLE_EQ(CombinedScore(0.4, 0), 0.0);
  EXPECT_THROW(CombinedScore(1.2, 0.5), Error);
  EXPECT_THROW(CombinedScore(0.5, -0.1), Error);
  for (double x = 0; x <= 1.0; x += 0.1) {
    for (double y = 0; y + 0.1 <= 1.0; y += 0.1) {
      EXPECT_LE(CombinedScore(x, y), CombinedScore(x, y + 0.1));
      EXPECT_LE(CombinedScore(y, x), CombinedScore(y + 0.1, x));
    }
  }
}

TEST(AggregateTest, LowerMedian) {
  const Aggregate a = AggregateOf({4, 1, 3, 2});
  EXPECT_DOUBLE_EQ(a.mean, 2.5);
  EXPECT_DOUBLE_EQ(a.median, 2.0);
  EXPECT_DOUBLE_EQ(a.min, 1.0);
  EXPECT_DOUBLE_EQ(a.max, 4.0);
  const Aggregate b = AggregateOf({0.7});
  EXPECT_EQ(b.mean, b.median);
  EXPECT_EQ(b.min, b.max);
  EXPECT_EQ(b.mean, b.min);
  EXPECT_THROW(AggregateOf({}), Error);
}

TEST(EnsembleReportTest, CopiesScorePerfectly) {
  NetworkFindings orig{Blocks({{1, 2, 3}, {4, 5}}), {1, 4}};
  const auto r = BuildEnsembleReport(orig, {orig, orig, orig});
  EXPECT_DOUBLE_EQ(r.nmi.mean, 1.0);
  EXPECT_DOUBLE_EQ(r.jaccard.min, 1.0);
  EXPECT_DOUBLE_EQ(r.combined.median, 1.0);
  const std::string csv = ReportCsv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "row,nmi,jaccard,combined");
  EXPECT_NE(csv.find("\nmedian,1,1,1\n"), std::string::npos);
  EXPECT_EQ(ReportJson(r)["count"], 3);
  EXPECT_THROW(BuildEnsembleReport(orig, {}), Error);
}

}  // namespace
}  // namespace rang

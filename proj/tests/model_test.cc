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

#include "rang/model.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "test_util.hpp"

namespace rang {
namespace {

bool HasRule(const std::vector<Violation>& vs, const std::string& rule) {
  return std::any_of(vs.begin(), vs.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

Network PathNetwork() {
  Network net;
  net.nodes = {{1, 1}, {2, 1}, {3, 1}};
  net.edges = {{1, 2, 1}, {2, 3, 1}};
  return net;
}

TEST(ValidateNetworkTest, PathIsValid) {
  EXPECT_TRUE(ValidateNetwork(PathNetwork()).empty());
}

TEST(ValidateNetworkTest, SelfLoopNamesNode) {
  Network net = PathNetwork();
  net.edges.push_back({2, 2, 2});
  auto vs = ValidateNetwork(net);
  ASSERT_EQ(vs.size(), 1u);
  EXPECT_EQ(vs[0].rule, "self-loop");
  EXPECT_NE(vs[0].detail.find("self-loop at 2"), std::string::npos);
}

TEST(ValidateNetworkTest, DuplicateId) {
  Network net = PathNetwork();
  net.nodes.push_back({3, 2});
  EXPECT_TRUE(HasRule(ValidateNetwork(net), "duplicate-id"));
}

TEST(ValidateNetworkTest, OtherViolations) {
  Network net = PathNetwork();
  net.nodes.push_back({4, 0});
  net.edges.push_back({1, 9, 1});
  net.edges.push_back({3, 1, 0});
  net.edges.push_back({1, 2, 4});
  const auto vs = ValidateNetwork(net);
  EXPECT_TRUE(HasRule(vs, "bad-level"));
  EXPECT_TRUE(HasRule(vs, "dangling-endpoint"));
  EXPECT_TRUE(HasRule(vs, "nonpositive-weight"));
  EXPECT_TRUE(HasRule(vs, "duplicate-edge"));
}

TEST(ValidateNetworkTest, WeightOverflow) {
  Network net = PathNetwork();
  net.edges[0].weight = std::numeric_limits<Weight>::max();
  net.edges[1].weight = 5;
  EXPECT_TRUE(HasRule(ValidateNetwork(net), "weight-overflow"));
}

TEST(ValidateNetworkTest, ReversedPairIsNotDuplicate) {
  Network net = PathNetwork();
  net.edges.push_back({2, 1, 3});
  EXPECT_TRUE(ValidateNetwork(net).empty());
}

Network Hierarchy() {
  Network net;
  net.nodes = {{1, 3}, {2, 2}, {3, 2}, {10, 1}, {11, 1}, {12, 1}, {13, 1}};
  return net;
}

TEST(ValidatePartitionTest, ValidWithUnassignedWarning) {
  GroupPartition part;
  part.groups = {{1, {10, 11}, 2, false}, {2, {12}, std::nullopt, true}};
  const auto check = ValidatePartition(Hierarchy(), part);
  EXPECT_TRUE(check.violations.empty());
  // 3 leads nothing and 13 is in no group.
  ASSERT_EQ(check.warnings.size(), 2u);
  EXPECT_EQ(check.warnings[0].rule, "uncovered-node");
}

TEST(ValidatePartitionTest, Violations) {
  struct Case {
    const char* rule;
    GroupPartition part;
  };
  const std::vector<Case> cases = {
      {"duplicate-gid", {{{1, {10}, {}, false}, {1, {11}, {}, false}}}},
      {"empty-group", {{{1, {}, {}, false}}}},
      {"unknown-node", {{{1, {99}, {}, false}}}},
      {"member-level", {{{1, {2}, {}, false}}}},
      {"overlapping-groups", {{{1, {10}, {}, false}, {2, {10}, {}, false}}}},
      {"independent-with-leader", {{{1, {10}, 2, true}}}},
      {"leader-level", {{{1, {10}, 11, false}}}},
      {"multiple-leadership", {{{1, {10}, 2, false}, {2, {11}, 2, false}}}},
  };
  for (const Case& c : cases) {
    EXPECT_TRUE(HasRule(ValidatePartition(Hierarchy(), c.part).violations,
                        c.rule))
        << c.rule;
  }
}

TEST(ValidatePartitionTest, BossMayLead) {
  GroupPartition part;
  part.groups = {{1, {10}, 1, false}};
  EXPECT_TRUE(ValidatePartition(Hierarchy(), part).violations.empty());
}

TEST(PartitionFromLabelsTest, NumbersBySmallestMember) {
  const GroupPartition p =
      PartitionFromLabels({5, 3, 9, 1}, {7, 2, 7, 4});
  ASSERT_EQ(p.groups.size(), 3u);
  EXPECT_EQ(p.groups[0].members, (std::vector<NodeId>{1}));
  EXPECT_EQ(p.groups[1].members, (std::vector<NodeId>{3}));
  EXPECT_EQ(p.groups[2].members, (std::vector<NodeId>{5, 9}));
  EXPECT_EQ(p.groups[2].gid, 2);
}

TEST(RandomDatasetTest, GeneratorProducesValidData) {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto ds = testing::RandomDataset(rng);
    EXPECT_TRUE(ValidateNetwork(ds.network).empty());
    EXPECT_TRUE(ValidatePartition(ds.network, ds.partition).violations.empty());
  }
}

}  // namespace
}  // namespace rang

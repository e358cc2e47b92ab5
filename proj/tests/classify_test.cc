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

#include "rang/classify.hpp"

#include <gtest/gtest.h>

#include <map>
#include <set>
#include <vector>

#include "test_util.hpp"

namespace rang {
namespace {

// Independent census: walk every ordered pair of distinct nodes and decide
// its class from first principles.
std::map<ClassKey, std::int64_t> BruteForceCapacities(
    const std::vector<NodeRecord>& roster, const GroupPartition& part) {
  std::map<NodeId, GroupId> group_of;
  std::map<NodeId, GroupId> leads;
  for (const Group& g : part.groups) {
    for (NodeId m : g.members) group_of[m] = g.gid;
    if (g.leader) leads[*g.leader] = g.gid;
  }
  auto role = [&](const NodeRecord& n) {
    if (leads.contains(n.id)) return NodeRole::kLeader;
    if (group_of.contains(n.id)) return NodeRole::kMember;
    if (n.level == 3) return NodeRole::kBoss;
    if (n.level == 2) return NodeRole::kManager;
    return NodeRole::kUnassigned;
  };
  std::map<ClassKey, std::int64_t> out;
  for (const NodeRecord& a : roster) {
    for (const NodeRecord& b : roster) {
      if (a.id == b.id) continue;
      const bool a_member = group_of.contains(a.id);
      const bool b_member = group_of.contains(b.id);
      const bool a_leader = leads.contains(a.id);
      const bool b_leader = leads.contains(b.id);
      ClassKey key;
      if (a_member && b_member) {
        key = group_of[a.id] == group_of[b.id]
                  ? ClassKey::Intra(group_of[a.id])
                  : ClassKey::Inter(group_of[a.id], group_of[b.id]);
      } else if (a_leader && b.level == 1) {
        key = b_member && group_of[b.id] == leads[a.id]
                  ? ClassKey::LeaderToGroup(leads[a.id])
                  : ClassKey::LeaderToOutside(leads[a.id]);
      } else if (b_leader && a.level == 1) {
        key = a_member && group_of[a.id] == leads[b.id]
                  ? ClassKey::GroupToLeader(leads[b.id])
                  : ClassKey::OutsideToLeader(leads[b.id]);
      } else {
        key = ClassKey::Residual(role(a), role(b));
      }
      ++out[key];
    }
  }
  return out;
}

const EdgeClass& Get(const EdgeClassSummary& s, const ClassKey& key) {
  const EdgeClass* c = s.Find(key);
  EXPECT_NE(c, nullptr) << key.ToString();
  static const EdgeClass kEmpty;
  return c ? *c : kEmpty;
}

TEST(SummarizeTest, TwoGroupsNoLeaders) {
  Network net;
  net.nodes = {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}};
  net.edges = {{1, 2, 2}, {2, 1, 3}};
  GroupPartition part;
  part.groups = {{1, {1, 2}, {}, false}, {2, {3, 4, 5}, {}, false}};
  const auto s = Summarize(net, part);
  EXPECT_EQ(Get(s, ClassKey::Intra(1)).capacity, 2);
  EXPECT_EQ(Get(s, ClassKey::Intra(1)).weight, 5);
  EXPECT_EQ(Get(s, ClassKey::Intra(1)).weights, (std::vector<Weight>{3, 2}));
  EXPECT_EQ(Get(s, ClassKey::Intra(2)).capacity, 6);
  EXPECT_EQ(Get(s, ClassKey::Intra(2)).weight, 0);
  EXPECT_EQ(Get(s, ClassKey::Inter(1, 2)).capacity, 6);
  EXPECT_EQ(Get(s, ClassKey::Inter(2, 1)).capacity, 6);
  EXPECT_EQ(Get(s, ClassKey::Inter(2, 1)).weight, 0);
  EXPECT_EQ(s.total_weight, 5);
}

TEST(SummarizeTest, LeaderClasses) {
  Network net;
  net.nodes = {{9, 2}, {1, 1}, {2, 1}, {3, 1}, {4, 1}};
  for (NodeId m : {1, 2, 3, 4}) net.edges.push_back({9, m, 1});
  GroupPartition part;
  part.groups = {{1, {1, 2, 3, 4}, 9, false}};
  const auto s = Summarize(net, part);
  EXPECT_EQ(Get(s, ClassKey::LeaderToGroup(1)).capacity, 4);
  EXPECT_EQ(Get(s, ClassKey::LeaderToGroup(1)).weight, 4);
  EXPECT_EQ(Get(s, ClassKey::GroupToLeader(1)).capacity, 4);
  EXPECT_EQ(Get(s, ClassKey::GroupToLeader(1)).weight, 0);
  EXPECT_EQ(Get(s, ClassKey::LeaderToOutside(1)).capacity, 0);
}

TEST(ClassifyPairTest, Kinds) {
  std::vector<NodeRecord> roster = {{1, 3}, {2, 2}, {3, 2}, {10, 1},
                                    {11, 1}, {12, 1}, {13, 1}, {4, 3}};
  GroupPartition part;
  part.groups = {{1, {10, 11}, 2, false}, {2, {12}, 3, false}};
  const RoleMap roles(roster, part);
  EXPECT_EQ(ClassifyPair(10, 11, roles), ClassKey::Intra(1));
  EXPECT_EQ(ClassifyPair(10, 12, roles), ClassKey::Inter(1, 2));
  EXPECT_EQ(ClassifyPair(2, 12, roles), ClassKey::LeaderToOutside(1));
  EXPECT_EQ(ClassifyPair(2, 13, roles), ClassKey::LeaderToOutside(1));
  EXPECT_EQ(ClassifyPair(13, 2, roles), ClassKey::OutsideToLeader(1));
  EXPECT_EQ(ClassifyPair(11, 2, roles), ClassKey::GroupToLeader(1));
  EXPECT_EQ(ClassifyPair(1, 4, roles),
            ClassKey::Residual(NodeRole::kBoss, NodeRole::kBoss));
  EXPECT_EQ(ClassifyPair(2, 3, roles),
            ClassKey::Residual(NodeRole::kLeader, NodeRole::kLeader));
  EXPECT_EQ(ClassifyPair(10, 1, roles),
            ClassKey::Residual(NodeRole::kMember, NodeRole::kBoss));
  EXPECT_EQ(ClassifyPair(13, 10, roles),
            ClassKey::Residual(NodeRole::kUnassigned, NodeRole::kMember));
}

TEST(EnumerateClassesTest, CapacitiesMatchBruteForce) {
  Rng rng(3);
  testing::RandomDatasetOptions opts;
  opts.min_nodes = 2;
  opts.max_nodes = 20;
  opts.edge_density = 0.0;
  for (int i = 0; i < 300; ++i) {
    const auto ds = testing::RandomDataset(rng, opts);
    const auto oracle = BruteForceCapacities(ds.network.nodes, ds.partition);
    std::map<ClassKey, std::int64_t> got;
    for (const EdgeClass& c : EnumerateClasses(ds.network.nodes, ds.partition)) {
      EXPECT_TRUE(got.emplace(c.key, c.capacity).second) << c.key.ToString();
    }
    for (const auto& [key, cap] : oracle) {
      ASSERT_TRUE(got.contains(key)) << key.ToString();
      EXPECT_EQ(got[key], cap) << key.ToString();
    }
    for (const auto& [key, cap] : got) {
      if (!oracle.contains(key)) {
        EXPECT_EQ(cap, 0) << key.ToString();
      }
    }
    const auto pairs = ClassPairs(ds.network.nodes, ds.partition);
    const RoleMap roles(ds.network.nodes, ds.partition);
    for (const auto& [key, list] : pairs) {
      EXPECT_EQ(static_cast<std::int64_t>(list.size()), got[key])
          << key.ToString();
      for (const auto& [u, v] : list) {
        ASSERT_EQ(ClassifyPair(u, v, roles), key);
      }
    }
  }
}

TEST(EnumerateClassesTest, LargeGroupsClosedForm) {
  Rng rng(8);
  std::uniform_int_distribution<int> size(1, 50);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<NodeRecord> roster;
    GroupPartition part;
    NodeId next = 1;
    const int groups = 1 + trial % 4;
    std::vector<std::int64_t> sizes;
    for (int g = 0; g < groups; ++g) {
      Group grp{g, {}, next++, false};
      roster.push_back({*grp.leader, 2});
      sizes.push_back(size(rng));
      for (int k = 0; k < sizes.back(); ++k) {
        roster.push_back({next, 1});
        grp.members.push_back(next++);
      }
      part.groups.push_back(grp);
    }
    std::int64_t level_one = 0;
    for (auto s : sizes) level_one += s;
    std::map<ClassKey, std::int64_t> got;
    for (const EdgeClass& c : EnumerateClasses(roster, part)) {
      got[c.key] = c.capacity;
    }
    for (int g = 0; g < groups; ++g) {
      EXPECT_EQ(got[ClassKey::Intra(g)], sizes[g] * (sizes[g] - 1));
      EXPECT_EQ(got[ClassKey::LeaderToGroup(g)], sizes[g]);
      EXPECT_EQ(got[ClassKey::OutsideToLeader(g)], level_one - sizes[g]);
      for (int h = 0; h < groups; ++h) {
        if (h != g) {
          EXPECT_EQ(got[ClassKey::Inter(g, h)], sizes[g] * sizes[h]);
        }
      }
    }
  }
}

TEST(SummarizeTest, ClassWeightsPartitionTotal) {
  Rng rng(17);
  testing::RandomDatasetOptions opts;
  opts.min_nodes = 30;
  opts.max_nodes = 30;
  for (int i = 0; i < 100; ++i) {
    const auto ds = testing::RandomDataset(rng, opts);
    const auto s = Summarize(ds.network, ds.partition);
    Weight sum = 0;
    std::size_t edges = 0;
    for (const EdgeClass& c : s.classes) {
      sum += c.weight;
      edges += c.weights.size();
      Weight w = 0;
      for (Weight x : c.weights) w += x;
      EXPECT_EQ(w, c.weight);
      EXPECT_LE(static_cast<std::int64_t>(c.weights.size()), c.capacity);
    }
    EXPECT_EQ(sum, ds.network.TotalWeight());
    EXPECT_EQ(s.total_weight, ds.network.TotalWeight());
    EXPECT_EQ(edges, ds.network.edges.size());
  }
}

TEST(SummaryJsonTest, RoundTrip) {
  Rng rng(23);
  for (int i = 0; i < 50; ++i) {
    const auto ds = testing::RandomDataset(rng);
    const auto s = Summarize(ds.network, ds.partition);
    const auto text = SummaryToJson(s).dump();
    EXPECT_EQ(SummaryFromJson(nlohmann::json::parse(text)), s);
  }
}

GroupPartition OneGroup(bool independent) {
  GroupPartition part;
  part.groups = {{1, {1, 2, 3}, {}, independent}};
  return part;
}

Network Launderers() {
  Network net;
  net.nodes = {{1, 1}, {2, 1}, {3, 1}, {4, 1}, {5, 1}};
  net.edges = {{1, 4, 1}, {2, 5, 1}, {1, 2, 1}, {2, 1, 1}, {3, 4, 2}};
  return net;
}

TEST(DetectIndependentTest, OnlyOutgoing) {
  const auto f = DetectIndependent(OneGroup(false), Launderers());
  ASSERT_EQ(f.size(), 1u);
  EXPECT_TRUE(f[0].flagged);
  EXPECT_FALSE(f[0].from_input);
  EXPECT_EQ(f[0].incoming_from_outside, 0);
  // Edges touching the group: 5; the 1<->2 pair is reciprocated.
  EXPECT_DOUBLE_EQ(f[0].reciprocity, 2.0 / 5.0);
}

TEST(DetectIndependentTest, OneIncomingEdge) {
  Network net = Launderers();
  net.edges.push_back({4, 3, 1});
  EXPECT_FALSE(DetectIndependent(OneGroup(false), net)[0].flagged);
}

TEST(DetectIndependentTest, SizeCap) {
  EXPECT_FALSE(DetectIndependent(OneGroup(false), Launderers(), 2)[0].flagged);
}

TEST(DetectIndependentTest, InputFlagWins) {
  Network net = Launderers();
  net.edges.push_back({4, 3, 1});
  const auto f = DetectIndependent(OneGroup(true), net);
  EXPECT_TRUE(f[0].flagged);
  EXPECT_TRUE(f[0].from_input);
}

TEST(ApplyIndependenceTest, LeaderlessOnly) {
  GroupPartition part;
  part.groups = {{1, {1, 2}, {}, false}, {2, {3}, 9, false}};
  ApplyIndependence(part, {{1, true, false, 0, 0.0}, {2, true, false, 0, 0.0}});
  EXPECT_TRUE(part.groups[0].independent);
  EXPECT_FALSE(part.groups[1].independent);
}

}  // namespace
}  // namespace rang

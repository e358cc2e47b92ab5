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

// Core value types shared by every stage of the pipeline: a directed weighted
// network whose nodes carry a hierarchy level, and a partition of its
// member-level nodes into groups with optional leaders.

#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rang/error.hpp"

namespace rang {

using NodeId = std::int64_t;
using GroupId = std::int64_t;
using Weight = std::int64_t;

inline constexpr int kMemberLevel = 1;
inline constexpr int kManagerLevel = 2;
inline constexpr int kBossLevel = 3;

struct NodeRecord {
  NodeId id = 0;
  int level = kMemberLevel;

  friend bool operator==(const NodeRecord&, const NodeRecord&) = default;
  friend auto operator<=>(const NodeRecord&, const NodeRecord&) = default;
};

struct Edge {
  NodeId source = 0;
  NodeId target = 0;
  Weight weight = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Network {
  std::vector<NodeRecord> nodes;
  std::vector<Edge> edges;

  Weight TotalWeight() const {
    Weight total = 0;
    for (const Edge& e : edges) total += e.weight;
    return total;
  }

  std::vector<NodeId> NodeIds() const {
    std::vector<NodeId> ids;
    ids.reserve(nodes.size());
    for (const NodeRecord& n : nodes) ids.push_back(n.id);
    return ids;
  }

  std::unordered_map<NodeId, int> LevelById() const {
    std::unordered_map<NodeId, int> levels;
    for (const NodeRecord& n : nodes) levels.emplace(n.id, n.level);
    return levels;
  }

  // Count of nodes above member level (managers and the boss).
  int ManagementCount() const {
    return static_cast<int>(std::count_if(
        nodes.begin(), nodes.end(),
        [](const NodeRecord& n) { return n.level >= kManagerLevel; }));
  }

  friend bool operator==(const Network&, const Network&) = default;
};

struct Group {
  GroupId gid = 0;
  std::vector<NodeId> members;
  std::optional<NodeId> leader;
  bool independent = false;

  friend bool operator==(const Group&, const Group&) = default;
};

struct GroupPartition {
  std::vector<Group> groups;

  std::size_t MemberCount() const {
    std::size_t n = 0;
    for (const Group& g : groups) n += g.members.size();
    return n;
  }

  friend bool operator==(const GroupPartition&, const GroupPartition&) =
      default;
};

// Sorts nodes by id and edges by (source, target).
inline void Canonicalize(Network& net) {
  std::sort(net.nodes.begin(), net.nodes.end());
  std::sort(net.edges.begin(), net.edges.end());
}

// Sorts members inside every group and groups by gid.
inline void Canonicalize(GroupPartition& part) {
  for (Group& g : part.groups) std::sort(g.members.begin(), g.members.end());
  std::sort(part.groups.begin(), part.groups.end(),
            [](const Group& a, const Group& b) { return a.gid < b.gid; });
}

// Builds a leaderless partition from a node -> community label assignment.
// Groups are numbered 0.. in order of their smallest member id.
inline GroupPartition PartitionFromLabels(
    const std::vector<NodeId>& ids, const std::vector<std::int64_t>& labels) {
  std::map<std::int64_t, std::vector<NodeId>> by_label;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    by_label[labels[i]].push_back(ids[i]);
  }
  std::vector<std::vector<NodeId>> blocks;
  blocks.reserve(by_label.size());
  for (auto& [label, members] : by_label) {
    std::sort(members.begin(), members.end());
    blocks.push_back(std::move(members));
  }
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  GroupPartition part;
  for (std::size_t g = 0; g < blocks.size(); ++g) {
    part.groups.push_back(
        Group{static_cast<GroupId>(g), std::move(blocks[g]), std::nullopt,
              false});
  }
  return part;
}

// Checks every Network invariant. Returns an empty list iff the network is
// valid.
inline std::vector<Violation> ValidateNetwork(const Network& net) {
  std::vector<Violation> out;
  std::unordered_set<NodeId> ids;
  for (const NodeRecord& n : net.nodes) {
    if (!ids.insert(n.id).second) {
      out.push_back({"duplicate-id", "duplicate node id " + std::to_string(n.id)});
    }
    if (n.level < kMemberLevel || n.level > kBossLevel) {
      out.push_back({"bad-level", "node " + std::to_string(n.id) +
                                      " has level " + std::to_string(n.level) +
                                      " outside 1..3"});
    }
  }
  std::set<std::pair<NodeId, NodeId>> seen;
  Weight total = 0;
  bool overflow = false;
  for (const Edge& e : net.edges) {
    const std::string name = "(" + std::to_string(e.source) + "," +
                             std::to_string(e.target) + "," +
                             std::to_string(e.weight) + ")";
    if (e.source == e.target) {
      out.push_back({"self-loop", "self-loop at " + std::to_string(e.source) +
                                      " edge " + name});
    }
    if (!ids.contains(e.source) || !ids.contains(e.target)) {
      out.push_back({"dangling-endpoint", "edge " + name +
                                              " references an unknown node"});
    }
    if (e.weight < 1) {
      out.push_back({"nonpositive-weight", "edge " + name +
                                               " has weight below 1"});
    }
    if (!seen.emplace(e.source, e.target).second) {
      out.push_back({"duplicate-edge", "edge " + name +
                                           " repeats an ordered pair"});
    }
    if (e.weight > 0 && total > std::numeric_limits<Weight>::max() - e.weight) {
      overflow = true;
    } else if (e.weight > 0) {
      total += e.weight;
    }
  }
  if (overflow) {
    out.push_back({"weight-overflow", "total weight exceeds 64-bit range"});
  }
  return out;
}

struct PartitionCheck {
  std::vector<Violation> violations;
  std::vector<Violation> warnings;
};

// Checks a group partition against the network it annotates. Nodes that are
// neither members, leaders nor the boss are reported as warnings: community
// detection routinely leaves low-degree nodes unassigned.
inline PartitionCheck ValidatePartition(const Network& net,
                                        const GroupPartition& part) {
  PartitionCheck out;
  const auto levels = net.LevelById();
  std::unordered_set<GroupId> gids;
  std::unordered_map<NodeId, GroupId> member_of;
  std::unordered_map<NodeId, GroupId> leader_of;
  for (const Group& g : part.groups) {
    const std::string gname = "group " + std::to_string(g.gid);
    if (!gids.insert(g.gid).second) {
      out.violations.push_back({"duplicate-gid", "duplicate " + gname});
    }
    if (g.members.empty()) {
      out.violations.push_back({"empty-group", gname + " has no members"});
    }
    for (NodeId m : g.members) {
      auto lv = levels.find(m);
      if (lv == levels.end()) {
        out.violations.push_back({"unknown-node", gname + " member " +
                                                      std::to_string(m) +
                                                      " is not in the network"});
      } else if (lv->second != kMemberLevel) {
        out.violations.push_back(
            {"member-level", gname + " member " + std::to_string(m) +
                                 " has level " + std::to_string(lv->second)});
      }
      auto [it, inserted] = member_of.emplace(m, g.gid);
      if (!inserted) {
        out.violations.push_back(
            {"overlapping-groups", "node " + std::to_string(m) +
                                       " belongs to groups " +
                                       std::to_string(it->second) + " and " +
                                       std::to_string(g.gid)});
      }
    }
    if (g.independent && g.leader.has_value()) {
      out.violations.push_back(
          {"independent-with-leader", gname + " is independent but has a leader"});
    }
    if (g.leader.has_value()) {
      const NodeId l = *g.leader;
      if (std::find(g.members.begin(), g.members.end(), l) != g.members.end()) {
        out.violations.push_back({"leader-is-member",
                                  gname + " lists its leader " +
                                      std::to_string(l) + " as a member"});
      }
      auto lv = levels.find(l);
      if (lv == levels.end()) {
        out.violations.push_back({"unknown-node", gname + " leader " +
                                                      std::to_string(l) +
                                                      " is not in the network"});
      } else if (lv->second < kManagerLevel) {
        out.violations.push_back(
            {"leader-level", gname + " leader " + std::to_string(l) +
                                 " is at member level"});
      }
      auto [it, inserted] = leader_of.emplace(l, g.gid);
      if (!inserted) {
        out.violations.push_back(
            {"multiple-leadership", "node " + std::to_string(l) +
                                        " leads groups " +
                                        std::to_string(it->second) + " and " +
                                        std::to_string(g.gid)});
      }
    }
  }
  for (const Group& g : part.groups) {
    for (NodeId m : g.members) {
      auto it = leader_of.find(m);
      if (it != leader_of.end() && it->second != g.gid) {
        out.violations.push_back(
            {"leader-is-member", "node " + std::to_string(m) +
                                     " is both a member and a group leader"});
      }
    }
  }
  for (const NodeRecord& n : net.nodes) {
    if (n.level == kBossLevel) continue;
    if (!member_of.contains(n.id) && !leader_of.contains(n.id)) {
      out.warnings.push_back({"uncovered-node",
                              "node " + std::to_string(n.id) +
                                  " is in no group and leads none"});
    }
  }
  std::sort(out.warnings.begin(), out.warnings.end(),
            [](const Violation& a, const Violation& b) {
              return a.detail < b.detail;
            });
  return out;
}

}  // namespace rang

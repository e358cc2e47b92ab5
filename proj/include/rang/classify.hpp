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

// Edge classification: every ordered node pair of a network falls into one
// class determined by the groups and hierarchy roles of its endpoints. The
// per-class capacity (number of ordered pairs) and weight sum form the
// shareable summary from which synthetic networks are generated.

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "json.hpp"
#include "rang/error.hpp"
#include "rang/model.hpp"

namespace rang {

enum class NodeRole {
  kMember,      // level 1, in a group
  kUnassigned,  // level 1, in no group
  kLeader,      // leads a group
  kManager,     // level 2, leads no group
  kBoss,        // level 3, leads no group
};

inline constexpr NodeRole kAllRoles[] = {NodeRole::kMember,
                                         NodeRole::kUnassigned,
                                         NodeRole::kLeader, NodeRole::kManager,
                                         NodeRole::kBoss};

inline std::string RoleName(NodeRole role) {
  switch (role) {
    case NodeRole::kMember: return "member";
    case NodeRole::kUnassigned: return "unassigned";
    case NodeRole::kLeader: return "leader";
    case NodeRole::kManager: return "manager";
    case NodeRole::kBoss: return "boss";
  }
  return "?";
}

inline std::optional<NodeRole> RoleFromName(const std::string& name) {
  for (NodeRole r : kAllRoles) {
    if (RoleName(r) == name) return r;
  }
  return std::nullopt;
}

enum class ClassKind {
  kIntraGroup,
  kInterGroup,
  kLeaderToGroup,
  kGroupToLeader,
  kLeaderToOutside,
  kOutsideToLeader,
  // Pairs outside the six group/leader kinds, keyed by endpoint roles.
  kResidual,
};

inline std::string KindName(ClassKind kind) {
  switch (kind) {
    case ClassKind::kIntraGroup: return "intra_group";
    case ClassKind::kInterGroup: return "inter_group";
    case ClassKind::kLeaderToGroup: return "leader_to_group";
    case ClassKind::kGroupToLeader: return "group_to_leader";
    case ClassKind::kLeaderToOutside: return "leader_to_outside";
    case ClassKind::kOutsideToLeader: return "outside_to_leader";
    case ClassKind::kResidual: return "residual";
  }
  return "?";
}

// Identifies one edge class. For group kinds `first`/`second` hold group ids
// (`second` only for kInterGroup); for kResidual they hold the source and
// target NodeRole.
struct ClassKey {
  ClassKind kind = ClassKind::kIntraGroup;
  std::int64_t first = 0;
  std::int64_t second = 0;

  static ClassKey Intra(GroupId g) { return {ClassKind::kIntraGroup, g, 0}; }
  static ClassKey Inter(GroupId from, GroupId to) {
    return {ClassKind::kInterGroup, from, to};
  }
  static ClassKey LeaderToGroup(GroupId g) {
    return {ClassKind::kLeaderToGroup, g, 0};
  }
  static ClassKey GroupToLeader(GroupId g) {
    return {ClassKind::kGroupToLeader, g, 0};
  }
  static ClassKey LeaderToOutside(GroupId g) {
    return {ClassKind::kLeaderToOutside, g, 0};
  }
  static ClassKey OutsideToLeader(GroupId g) {
    return {ClassKind::kOutsideToLeader, g, 0};
  }
  static ClassKey Residual(NodeRole from, NodeRole to) {
    return {ClassKind::kResidual, static_cast<std::int64_t>(from),
            static_cast<std::int64_t>(to)};
  }

  std::string ToString() const {
    if (kind == ClassKind::kResidual) {
      return "residual(" + RoleName(static_cast<NodeRole>(first)) + "->" +
             RoleName(static_cast<NodeRole>(second)) + ")";
    }
    if (kind == ClassKind::kInterGroup) {
      return KindName(kind) + "(" + std::to_string(first) + "," +
             std::to_string(second) + ")";
    }
    return KindName(kind) + "(" + std::to_string(first) + ")";
  }

  friend bool operator==(const ClassKey&, const ClassKey&) = default;
  friend auto operator<=>(const ClassKey&, const ClassKey&) = default;
};

struct EdgeClass {
  ClassKey key;
  std::int64_t capacity = 0;  // E: ordered pairs in the class
  Weight weight = 0;          // W: summed weight of the class's edges
  // Original edge weights, heaviest first. Needed by the BWRN generator.
  std::vector<Weight> weights;

  friend bool operator==(const EdgeClass&, const EdgeClass&) = default;
};

struct EdgeClassSummary {
  std::vector<NodeRecord> roster;  // sorted by id
  GroupPartition groups;           // canonical
  std::vector<EdgeClass> classes;  // sorted by key
  Weight total_weight = 0;
  Weight residual_weight = 0;

  std::size_t node_count() const { return roster.size(); }

  std::vector<std::size_t> group_sizes() const {
    std::vector<std::size_t> sizes;
    for (const Group& g : groups.groups) sizes.push_back(g.members.size());
    return sizes;
  }

  // Node ids per hierarchy level 1..3.
  std::map<int, std::vector<NodeId>> RosterByLevel() const {
    std::map<int, std::vector<NodeId>> out;
    for (const NodeRecord& n : roster) out[n.level].push_back(n.id);
    return out;
  }

  const EdgeClass* Find(const ClassKey& key) const {
    auto it = std::lower_bound(
        classes.begin(), classes.end(), key,
        [](const EdgeClass& c, const ClassKey& k) { return c.key < k; });
    return (it != classes.end() && it->key == key) ? &*it : nullptr;
  }

  friend bool operator==(const EdgeClassSummary&,
                         const EdgeClassSummary&) = default;
};

// Node roles and group lookups derived from a roster and a partition.
class RoleMap {
 public:
  RoleMap(const std::vector<NodeRecord>& roster, const GroupPartition& part) {
    for (const NodeRecord& n : roster) level_.emplace(n.id, n.level);
    for (const Group& g : part.groups) {
      for (NodeId m : g.members) {
        if (!level_.contains(m)) {
          throw Error(ErrorKind::kValidation,
                      "group " + std::to_string(g.gid) + " member " +
                          std::to_string(m) + " is absent from the network");
        }
        member_of_.emplace(m, g.gid);
      }
      if (g.leader.has_value()) {
        if (!level_.contains(*g.leader)) {
          throw Error(ErrorKind::kValidation,
                      "group " + std::to_string(g.gid) + " leader " +
                          std::to_string(*g.leader) +
                          " is absent from the network");
        }
        leader_of_.emplace(*g.leader, g.gid);
      }
    }
  }

  NodeRole Role(NodeId id) const {
    if (leader_of_.contains(id)) return NodeRole::kLeader;
    if (member_of_.contains(id)) return NodeRole::kMember;
    const int level = level_.at(id);
    if (level >= kBossLevel) return NodeRole::kBoss;
    if (level == kManagerLevel) return NodeRole::kManager;
    return NodeRole::kUnassigned;
  }

  std::optional<GroupId> GroupOf(NodeId id) const {
    auto it = member_of_.find(id);
    if (it == member_of_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<GroupId> LedGroup(NodeId id) const {
    auto it = leader_of_.find(id);
    if (it == leader_of_.end()) return std::nullopt;
    return it->second;
  }

  bool Contains(NodeId id) const { return level_.contains(id); }

 private:
  std::unordered_map<NodeId, int> level_;
  std::unordered_map<NodeId, GroupId> member_of_;
  std::unordered_map<NodeId, GroupId> leader_of_;
};

// Class of the ordered pair (source, target), source != target.
inline ClassKey ClassifyPair(NodeId source, NodeId target,
                             const RoleMap& roles) {
  const NodeRole rs = roles.Role(source);
  const NodeRole rt = roles.Role(target);
  const bool target_level_one =
      rt == NodeRole::kMember || rt == NodeRole::kUnassigned;
  const bool source_level_one =
      rs == NodeRole::kMember || rs == NodeRole::kUnassigned;
  if (rs == NodeRole::kMember && rt == NodeRole::kMember) {
    const GroupId gs = *roles.GroupOf(source);
    const GroupId gt = *roles.GroupOf(target);
    return gs == gt ? ClassKey::Intra(gs) : ClassKey::Inter(gs, gt);
  }
  if (rs == NodeRole::kLeader && target_level_one) {
    const GroupId led = *roles.LedGroup(source);
    if (roles.GroupOf(target) == led) return ClassKey::LeaderToGroup(led);
    return ClassKey::LeaderToOutside(led);
  }
  if (rt == NodeRole::kLeader && source_level_one) {
    const GroupId led = *roles.LedGroup(target);
    if (roles.GroupOf(source) == led) return ClassKey::GroupToLeader(led);
    return ClassKey::OutsideToLeader(led);
  }
  return ClassKey::Residual(rs, rt);
}

inline ClassKey ClassifyEdge(const Edge& edge, const RoleMap& roles) {
  return ClassifyPair(edge.source, edge.target, roles);
}

// Role pairs not covered by any group or leader class. Coverage depends only
// on the roles: member->member pairs are intra/inter-group, and a leader
// paired with any level-1 node is a leader class.
inline bool IsResidualRolePair(NodeRole a, NodeRole b) {
  using R = NodeRole;
  const bool covered =
      (a == R::kMember && b == R::kMember) ||
      (a == R::kLeader && (b == R::kMember || b == R::kUnassigned)) ||
      (b == R::kLeader && (a == R::kMember || a == R::kUnassigned));
  return !covered;
}

// Every class that can hold at least one pair, with closed-form capacities.
// Group-level classes are listed even when their capacity is zero (a
// one-member group still has an intra-group class of size 0).
inline std::vector<EdgeClass> EnumerateClasses(
    const std::vector<NodeRecord>& roster, const GroupPartition& part) {
  RoleMap roles(roster, part);
  std::map<NodeRole, std::int64_t> role_count;
  std::int64_t level_one = 0;
  for (const NodeRecord& n : roster) {
    ++role_count[roles.Role(n.id)];
    if (n.level == kMemberLevel) ++level_one;
  }
  std::vector<EdgeClass> out;
  for (const Group& gi : part.groups) {
    const auto si = static_cast<std::int64_t>(gi.members.size());
    out.push_back({ClassKey::Intra(gi.gid), si * (si - 1), 0, {}});
    for (const Group& gj : part.groups) {
      if (gi.gid == gj.gid) continue;
      const auto sj = static_cast<std::int64_t>(gj.members.size());
      out.push_back({ClassKey::Inter(gi.gid, gj.gid), si * sj, 0, {}});
    }
    if (gi.leader.has_value()) {
      const std::int64_t outside = level_one - si;
      out.push_back({ClassKey::LeaderToGroup(gi.gid), si, 0, {}});
      out.push_back({ClassKey::GroupToLeader(gi.gid), si, 0, {}});
      out.push_back({ClassKey::LeaderToOutside(gi.gid), outside, 0, {}});
      out.push_back({ClassKey::OutsideToLeader(gi.gid), outside, 0, {}});
    }
  }
  for (NodeRole a : kAllRoles) {
    for (NodeRole b : kAllRoles) {
      if (!IsResidualRolePair(a, b)) continue;
      const std::int64_t na = role_count[a];
      const std::int64_t nb = role_count[b];
      const std::int64_t cap = na * nb - (a == b ? na : 0);
      if (cap > 0) out.push_back({ClassKey::Residual(a, b), cap, 0, {}});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const EdgeClass& x, const EdgeClass& y) { return x.key < y.key; });
  return out;
}

// Ordered node pairs belonging to each class, built constructively from the
// roster and groups. Pair order within a class is deterministic.
using PairList = std::vector<std::pair<NodeId, NodeId>>;

inline std::map<ClassKey, PairList> ClassPairs(
    const std::vector<NodeRecord>& roster, const GroupPartition& part) {
  RoleMap roles(roster, part);
  std::map<NodeRole, std::vector<NodeId>> by_role;
  std::vector<NodeId> level_one;
  for (const NodeRecord& n : roster) {
    by_role[roles.Role(n.id)].push_back(n.id);
    if (n.level == kMemberLevel) level_one.push_back(n.id);
  }
  std::map<ClassKey, PairList> out;
  for (const Group& gi : part.groups) {
    PairList& intra = out[ClassKey::Intra(gi.gid)];
    for (NodeId u : gi.members) {
      for (NodeId v : gi.members) {
        if (u != v) intra.emplace_back(u, v);
      }
    }
    for (const Group& gj : part.groups) {
      if (gi.gid == gj.gid) continue;
      PairList& inter = out[ClassKey::Inter(gi.gid, gj.gid)];
      for (NodeId u : gi.members) {
        for (NodeId v : gj.members) inter.emplace_back(u, v);
      }
    }
    if (gi.leader.has_value()) {
      const NodeId l = *gi.leader;
      PairList& down = out[ClassKey::LeaderToGroup(gi.gid)];
      PairList& up = out[ClassKey::GroupToLeader(gi.gid)];
      for (NodeId m : gi.members) {
        down.emplace_back(l, m);
        up.emplace_back(m, l);
      }
      PairList& to_out = out[ClassKey::LeaderToOutside(gi.gid)];
      PairList& from_out = out[ClassKey::OutsideToLeader(gi.gid)];
      for (NodeId v : level_one) {
        if (roles.GroupOf(v) == gi.gid) continue;
        to_out.emplace_back(l, v);
        from_out.emplace_back(v, l);
      }
    }
  }
  for (const auto& [ra, nodes_a] : by_role) {
    for (const auto& [rb, nodes_b] : by_role) {
      if (!IsResidualRolePair(ra, rb)) continue;
      PairList& residual = out[ClassKey::Residual(ra, rb)];
      for (NodeId u : nodes_a) {
        for (NodeId v : nodes_b) {
          if (u != v) residual.emplace_back(u, v);
        }
      }
    }
  }
  return out;
}

// Builds the edge-class summary of a validated network and partition. Every
// edge lands in exactly one class, so the class weights sum to the network's
// total weight.
inline EdgeClassSummary Summarize(const Network& net,
                                  const GroupPartition& part) {
  EdgeClassSummary summary;
  summary.roster = net.nodes;
  std::sort(summary.roster.begin(), summary.roster.end());
  summary.groups = part;
  Canonicalize(summary.groups);
  summary.classes = EnumerateClasses(summary.roster, summary.groups);
  RoleMap roles(summary.roster, summary.groups);
  std::map<ClassKey, std::size_t> index;
  for (std::size_t i = 0; i < summary.classes.size(); ++i) {
    index.emplace(summary.classes[i].key, i);
  }
  for (const Edge& e : net.edges) {
    const ClassKey key = ClassifyEdge(e, roles);
    auto it = index.find(key);
    if (it == index.end()) {
      throw Error(ErrorKind::kInternal,
                  "edge class " + key.ToString() + " has no capacity");
    }
    EdgeClass& c = summary.classes[it->second];
    c.weight += e.weight;
    c.weights.push_back(e.weight);
    summary.total_weight += e.weight;
    if (key.kind == ClassKind::kResidual) summary.residual_weight += e.weight;
  }
  for (EdgeClass& c : summary.classes) {
    std::stable_sort(c.weights.begin(), c.weights.end(), std::greater<>());
  }
  return summary;
}

// Independence screening for one group.
struct IndependenceFinding {
  GroupId gid = 0;
  bool flagged = false;
  bool from_input = false;       // flag was set in the input partition
  std::int64_t incoming_from_outside = 0;
  double reciprocity = 0.0;      // share of group-touching edges reciprocated
};

// A group is flagged independent when none of its members receives an edge
// from outside the group and it has at most `size_cap` members. Groups
// already marked independent in the input stay flagged.
inline std::vector<IndependenceFinding> DetectIndependent(
    const GroupPartition& part, const Network& net, std::size_t size_cap = 6) {
  std::unordered_map<NodeId, GroupId> member_of;
  for (const Group& g : part.groups) {
    for (NodeId m : g.members) member_of.emplace(m, g.gid);
  }
  std::set<std::pair<NodeId, NodeId>> edge_set;
  for (const Edge& e : net.edges) edge_set.emplace(e.source, e.target);
  std::map<GroupId, std::int64_t> incoming;
  std::map<GroupId, std::int64_t> touching;
  std::map<GroupId, std::int64_t> reciprocated;
  for (const Edge& e : net.edges) {
    auto src = member_of.find(e.source);
    auto dst = member_of.find(e.target);
    const bool rec = edge_set.contains({e.target, e.source});
    std::optional<GroupId> gs;
    std::optional<GroupId> gt;
    if (src != member_of.end()) gs = src->second;
    if (dst != member_of.end()) gt = dst->second;
    if (gt.has_value() && gs != gt) ++incoming[*gt];
    if (gs.has_value()) {
      ++touching[*gs];
      if (rec) ++reciprocated[*gs];
    }
    if (gt.has_value() && gt != gs) {
      ++touching[*gt];
      if (rec) ++reciprocated[*gt];
    }
  }
  std::vector<IndependenceFinding> out;
  for (const Group& g : part.groups) {
    IndependenceFinding f;
    f.gid = g.gid;
    f.from_input = g.independent;
    f.incoming_from_outside = incoming[g.gid];
    const std::int64_t t = touching[g.gid];
    f.reciprocity =
        t == 0 ? 0.0 : static_cast<double>(reciprocated[g.gid]) / t;
    f.flagged = g.independent ||
                (f.incoming_from_outside == 0 && g.members.size() <= size_cap);
    out.push_back(f);
  }
  return out;
}

// Marks detected leaderless groups independent. Groups with a leader are
// left untouched: the leader's edges define their leader classes.
inline void ApplyIndependence(GroupPartition& part,
                              const std::vector<IndependenceFinding>& found) {
  for (Group& g : part.groups) {
    for (const IndependenceFinding& f : found) {
      if (f.gid == g.gid && f.flagged && !g.leader.has_value()) {
        g.independent = true;
      }
    }
  }
}

// summary.json codec.
inline nlohmann::ordered_json SummaryToJson(const EdgeClassSummary& s) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["node_count"] = s.node_count();
  doc["total_weight"] = s.total_weight;
  doc["residual_weight"] = s.residual_weight;
  ordered_json roster = ordered_json::array();
  for (const NodeRecord& n : s.roster) {
    roster.push_back({{"id", n.id}, {"level", n.level}});
  }
  doc["roster"] = std::move(roster);
  ordered_json groups = ordered_json::array();
  for (const Group& g : s.groups.groups) {
    ordered_json obj;
    obj["gid"] = g.gid;
    obj["members"] = g.members;
    obj["leader"] = g.leader.has_value() ? ordered_json(*g.leader)
                                         : ordered_json(nullptr);
    obj["independent"] = g.independent;
    groups.push_back(std::move(obj));
  }
  doc["groups"] = std::move(groups);
  ordered_json classes = ordered_json::array();
  for (const EdgeClass& c : s.classes) {
    ordered_json obj;
    obj["kind"] = KindName(c.key.kind);
    if (c.key.kind == ClassKind::kResidual) {
      obj["roles"] = {RoleName(static_cast<NodeRole>(c.key.first)),
                      RoleName(static_cast<NodeRole>(c.key.second))};
    } else if (c.key.kind == ClassKind::kInterGroup) {
      obj["groups"] = {c.key.first, c.key.second};
    } else {
      obj["groups"] = {c.key.first};
    }
    obj["capacity"] = c.capacity;
    obj["weight"] = c.weight;
    obj["weights"] = c.weights;
    classes.push_back(std::move(obj));
  }
  doc["classes"] = std::move(classes);
  return doc;
}

inline EdgeClassSummary SummaryFromJson(const nlohmann::json& doc) {
  try {
    EdgeClassSummary s;
    s.total_weight = doc.at("total_weight").get<Weight>();
    s.residual_weight = doc.at("residual_weight").get<Weight>();
    for (const auto& n : doc.at("roster")) {
      s.roster.push_back({n.at("id").get<NodeId>(), n.at("level").get<int>()});
    }
    for (const auto& obj : doc.at("groups")) {
      Group g;
      g.gid = obj.at("gid").get<GroupId>();
      g.members = obj.at("members").get<std::vector<NodeId>>();
      if (!obj.at("leader").is_null()) g.leader = obj.at("leader").get<NodeId>();
      g.independent = obj.at("independent").get<bool>();
      s.groups.groups.push_back(std::move(g));
    }
    for (const auto& obj : doc.at("classes")) {
      EdgeClass c;
      const std::string kind = obj.at("kind").get<std::string>();
      if (kind == "residual") {
        auto roles = obj.at("roles").get<std::vector<std::string>>();
        auto a = RoleFromName(roles.at(0));
        auto b = RoleFromName(roles.at(1));
        if (!a || !b) throw ConfigError("summary: unknown role name");
        c.key = ClassKey::Residual(*a, *b);
      } else {
        auto ids = obj.at("groups").get<std::vector<GroupId>>();
        bool known = false;
        for (ClassKind k :
             {ClassKind::kIntraGroup, ClassKind::kInterGroup,
              ClassKind::kLeaderToGroup, ClassKind::kGroupToLeader,
              ClassKind::kLeaderToOutside, ClassKind::kOutsideToLeader}) {
          if (KindName(k) == kind) {
            c.key = {k, ids.at(0), k == ClassKind::kInterGroup ? ids.at(1) : 0};
            known = true;
          }
        }
        if (!known) throw ConfigError("summary: unknown class kind " + kind);
      }
      c.capacity = obj.at("capacity").get<std::int64_t>();
      c.weight = obj.at("weight").get<Weight>();
      c.weights = obj.at("weights").get<std::vector<Weight>>();
      s.classes.push_back(std::move(c));
    }
    std::sort(s.classes.begin(), s.classes.end(),
              [](const EdgeClass& x, const EdgeClass& y) {
                return x.key < y.key;
              });
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kFormat, std::string("summary: ") + e.what());
  }
}

}  // namespace rang

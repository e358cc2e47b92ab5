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

// Stability of the detected group structure across an ensemble. Ensemble
// members become nodes of a meta-graph, joined when their partitions match
// exactly or flexibly (a group bijection where matched groups differ by at
// most one node in each direction). Frequent structures are stable ones.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rang/error.hpp"
#include "rang/model.hpp"
#include "rang/parallel.hpp"

namespace rang {

enum class MatchMode { kExact, kFlexible };

inline std::string MatchModeName(MatchMode m) {
  return m == MatchMode::kExact ? "exact" : "flexible";
}

inline std::optional<MatchMode> MatchModeFromName(const std::string& name) {
  if (name == "exact") return MatchMode::kExact;
  if (name == "flexible") return MatchMode::kFlexible;
  return std::nullopt;
}

// Groups as sorted member lists, ordered by size (desc) then smallest member.
// Labels, leaders and flags are dropped.
using CanonicalPartition = std::vector<std::vector<NodeId>>;

inline CanonicalPartition Canonical(const GroupPartition& p) {
  CanonicalPartition out;
  out.reserve(p.groups.size());
  for (const Group& g : p.groups) {
    std::vector<NodeId> m = g.members;
    std::sort(m.begin(), m.end());
    out.push_back(std::move(m));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    if (a.empty()) return false;
    return a < b;
  });
  return out;
}

namespace stability_internal {

inline std::vector<NodeId> Universe(const CanonicalPartition& c) {
  std::vector<NodeId> u;
  for (const auto& g : c) u.insert(u.end(), g.begin(), g.end());
  std::sort(u.begin(), u.end());
  return u;
}

// True iff |a \ b| <= 1 and |b \ a| <= 1 for sorted a, b.
inline bool WithinOne(const std::vector<NodeId>& a,
                      const std::vector<NodeId>& b) {
  if (a.size() > b.size() + 1 || b.size() > a.size() + 1) return false;
  std::size_t i = 0, j = 0;
  int only_a = 0, only_b = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      if (++only_a > 1) return false;
      ++i;
    } else {
      if (++only_b > 1) return false;
      ++j;
    }
  }
  only_a += static_cast<int>(a.size() - i);
  only_b += static_cast<int>(b.size() - j);
  return only_a <= 1 && only_b <= 1;
}

// Kuhn augmenting-path step for bipartite perfect matching.
inline bool Augment(int u, const std::vector<std::vector<int>>& compat,
                    std::vector<int>& match_right, std::vector<char>& seen) {
  for (int v : compat[u]) {
    if (seen[v]) continue;
    seen[v] = 1;
    if (match_right[v] < 0 ||
        Augment(match_right[v], compat, match_right, seen)) {
      match_right[v] = u;
      return true;
    }
  }
  return false;
}

}  // namespace stability_internal

inline bool ExactMatch(const CanonicalPartition& p,
                       const CanonicalPartition& q) {
  return p == q;
}

// Same groups up to labels and order. Both partitions must cover the same
// nodes.
inline bool ExactMatch(const GroupPartition& p, const GroupPartition& q) {
  const CanonicalPartition cp = Canonical(p);
  const CanonicalPartition cq = Canonical(q);
  if (stability_internal::Universe(cp) != stability_internal::Universe(cq)) {
    throw Error(ErrorKind::kValidation,
                "partitions cover different node sets");
  }
  return ExactMatch(cp, cq);
}

// True iff the partitions have the same number of groups and some bijection
// between their groups pairs each group with one that differs by at most one
// node in each direction. Decided exactly by bipartite matching.
inline bool FlexibleMatch(const CanonicalPartition& p,
                          const CanonicalPartition& q) {
  using namespace stability_internal;
  if (p.size() != q.size()) return false;
  if (p == q) return true;
  const int k = static_cast<int>(p.size());
  std::vector<std::vector<int>> compat(k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (WithinOne(p[i], q[j])) compat[i].push_back(j);
    }
    if (compat[i].empty()) return false;
  }
  std::vector<int> match_right(k, -1);
  for (int i = 0; i < k; ++i) {
    std::vector<char> seen(k, 0);
    if (!Augment(i, compat, match_right, seen)) return false;
  }
  return true;
}

inline bool FlexibleMatch(const GroupPartition& p, const GroupPartition& q) {
  return FlexibleMatch(Canonical(p), Canonical(q));
}

inline bool Matches(const CanonicalPartition& p, const CanonicalPartition& q,
                    MatchMode mode) {
  return mode == MatchMode::kExact ? ExactMatch(p, q) : FlexibleMatch(p, q);
}

struct MetaGraph {
  MatchMode mode = MatchMode::kExact;
  std::vector<std::vector<int>> adjacency;  // sorted, symmetric, no self-loops
  std::vector<bool> matches_original;       // empty if no original was given

  int size() const { return static_cast<int>(adjacency.size()); }

  std::vector<int> Degrees() const {
    std::vector<int> d;
    d.reserve(adjacency.size());
    for (const auto& nbrs : adjacency) d.push_back(static_cast<int>(nbrs.size()));
    return d;
  }

  // degree -> number of members with that degree
  std::map<int, int> DegreeHistogram() const {
    std::map<int, int> h;
    for (int d : Degrees()) ++h[d];
    return h;
  }
};

inline MetaGraph BuildMetaGraph(
    const std::vector<CanonicalPartition>& members, MatchMode mode,
    const std::optional<CanonicalPartition>& original = std::nullopt,
    int threads = 1) {
  MetaGraph mg;
  mg.mode = mode;
  const std::size_t g = members.size();
  mg.adjacency.assign(g, {});
  if (mode == MatchMode::kExact) {
    std::map<CanonicalPartition, std::vector<int>> classes;
    for (std::size_t i = 0; i < g; ++i) {
      classes[members[i]].push_back(static_cast<int>(i));
    }
    for (const auto& [form, ids] : classes) {
      for (int i : ids) {
        for (int j : ids) {
          if (i != j) mg.adjacency[i].push_back(j);
        }
      }
    }
  } else {
    // Row i holds matches j > i; rows are filled independently.
    std::vector<std::vector<int>> upper(g);
    ParallelFor(g, threads, [&](std::size_t i) {
      for (std::size_t j = i + 1; j < g; ++j) {
        if (FlexibleMatch(members[i], members[j])) {
          upper[i].push_back(static_cast<int>(j));
        }
      }
    });
    for (std::size_t i = 0; i < g; ++i) {
      for (int j : upper[i]) {
        mg.adjacency[i].push_back(j);
        mg.adjacency[j].push_back(static_cast<int>(i));
      }
    }
  }
  for (auto& nbrs : mg.adjacency) std::sort(nbrs.begin(), nbrs.end());
  if (original.has_value()) {
    mg.matches_original.resize(g);
    for (std::size_t i = 0; i < g; ++i) {
      mg.matches_original[i] = Matches(members[i], *original, mode);
    }
  }
  return mg;
}

struct CensusEntry {
  CanonicalPartition structure;
  int count = 0;           // exact: occurrences; flexible: closed neighborhood
  int representative = 0;  // first ensemble member with this structure
};

// Distinct structures with their frequencies, most frequent first (ties by
// representative index). In flexible mode the frequency of a structure is
// the closed meta-graph neighborhood of its representative, since flexible
// matching is not transitive.
inline std::vector<CensusEntry> StructureCensus(
    const std::vector<CanonicalPartition>& members, const MetaGraph& mg) {
  std::map<CanonicalPartition, CensusEntry> by_form;
  for (std::size_t i = 0; i < members.size(); ++i) {
    auto [it, inserted] = by_form.try_emplace(members[i]);
    if (inserted) {
      it->second.structure = members[i];
      it->second.representative = static_cast<int>(i);
    }
    if (mg.mode == MatchMode::kExact) ++it->second.count;
  }
  std::vector<CensusEntry> out;
  out.reserve(by_form.size());
  for (auto& [form, entry] : by_form) {
    if (mg.mode == MatchMode::kFlexible) {
      entry.count =
          static_cast<int>(mg.adjacency[entry.representative].size()) + 1;
    }
    out.push_back(std::move(entry));
  }
  std::sort(out.begin(), out.end(),
            [](const CensusEntry& a, const CensusEntry& b) {
              if (a.count != b.count) return a.count > b.count;
              return a.representative < b.representative;
            });
  return out;
}

inline std::vector<CensusEntry> StructureCensus(
    const std::vector<CanonicalPartition>& members, MatchMode mode,
    int threads = 1) {
  return StructureCensus(members, BuildMetaGraph(members, mode, std::nullopt,
                                                 threads));
}

inline constexpr double kDefaultStabilityThreshold = 0.1;

struct StabilityVerdict {
  MatchMode mode = MatchMode::kExact;
  int members = 0;
  int original_count = 0;  // members matching the original structure
  double original_share = 0.0;
  std::vector<int> top_counts;  // up to 10 most frequent structures
  double threshold = kDefaultStabilityThreshold;
  bool stable = false;
};

inline StabilityVerdict Verdict(const std::vector<CanonicalPartition>& members,
                                const CanonicalPartition& original,
                                const std::vector<CensusEntry>& census,
                                MatchMode mode,
                                double threshold = kDefaultStabilityThreshold) {
  if (members.empty()) throw ConfigError("ensemble is empty");
  StabilityVerdict v;
  v.mode = mode;
  v.members = static_cast<int>(members.size());
  for (const auto& m : members) v.original_count += Matches(m, original, mode) ? 1 : 0;
  v.original_share = static_cast<double>(v.original_count) / v.members;
  for (std::size_t i = 0; i < census.size() && i < 10; ++i) {
    v.top_counts.push_back(census[i].count);
  }
  v.threshold = threshold;
  v.stable = v.original_share >= threshold;
  return v;
}

inline std::string DegreeHistogramCsv(const MetaGraph& mg) {
  std::string out = "degree,count\n";
  for (const auto& [d, c] : mg.DegreeHistogram()) {
    out += std::to_string(d) + "," + std::to_string(c) + "\n";
  }
  return out;
}

inline nlohmann::ordered_json CensusJson(const std::vector<CensusEntry>& census,
                                         const StabilityVerdict& v) {
  nlohmann::ordered_json doc;
  doc["mode"] = MatchModeName(v.mode);
  doc["members"] = v.members;
  doc["original_count"] = v.original_count;
  doc["original_share"] = v.original_share;
  doc["threshold"] = v.threshold;
  doc["stable"] = v.stable;
  doc["top_counts"] = v.top_counts;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const CensusEntry& e : census) {
    rows.push_back({{"count", e.count},
                    {"representative", e.representative},
                    {"groups", e.structure}});
  }
  doc["structures"] = std::move(rows);
  return doc;
}

}  // namespace rang

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

// Similarity between an original network and generated ones: NMI between
// group partitions, Jaccard similarity of detected leader sets, and their
// product, the combined score.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "rang/error.hpp"
#include "rang/io_util.hpp"
#include "rang/model.hpp"

namespace rang {

namespace compare_internal {

inline std::map<NodeId, std::size_t> LabelMap(const GroupPartition& p) {
  std::map<NodeId, std::size_t> labels;
  for (std::size_t g = 0; g < p.groups.size(); ++g) {
    for (NodeId id : p.groups[g].members) {
      if (!labels.emplace(id, g).second) {
        throw Error(ErrorKind::kValidation,
                    "node " + std::to_string(id) + " is in two groups");
      }
    }
  }
  return labels;
}

inline double Entropy(const std::map<std::size_t, double>& counts, double n) {
  double h = 0.0;
  for (const auto& [label, c] : counts) {
    if (c > 0) h -= (c / n) * std::log(c / n);
  }
  return h;
}

}  // namespace compare_internal

// Normalized mutual information 2 I(P;Q) / (H(P) + H(Q)), natural logs.
// Both partitions must cover the same nodes. Two single-block partitions
// score 1.
inline double Nmi(const GroupPartition& p, const GroupPartition& q) {
  using namespace compare_internal;
  const auto lp = LabelMap(p);
  const auto lq = LabelMap(q);
  if (lp.size() != lq.size() ||
      !std::equal(lp.begin(), lp.end(), lq.begin(),
                  [](const auto& a, const auto& b) { return a.first == b.first; })) {
    throw Error(ErrorKind::kValidation,
                "partitions cover different node sets");
  }
  const double n = static_cast<double>(lp.size());
  if (lp.empty()) return 1.0;
  std::map<std::size_t, double> cp, cq;
  std::map<std::pair<std::size_t, std::size_t>, double> joint;
  for (const auto& [id, a] : lp) {
    const std::size_t b = lq.at(id);
    cp[a] += 1;
    cq[b] += 1;
    joint[{a, b}] += 1;
  }
  const double hp = Entropy(cp, n);
  const double hq = Entropy(cq, n);
  if (hp + hq <= 0.0) return 1.0;
  // Summed in sorted order so that Nmi(p, q) and Nmi(q, p) agree bit for bit.
  std::vector<double> terms;
  terms.reserve(joint.size());
  for (const auto& [ab, c] : joint) {
    terms.push_back((c / n) *
                    std::log(c * n / (cp.at(ab.first) * cq.at(ab.second))));
  }
  std::sort(terms.begin(), terms.end());
  double mi = 0.0;
  for (double t : terms) mi += t;
  return std::clamp(2.0 * mi / (hp + hq), 0.0, 1.0);
}

// Adds a singleton group for every id of `universe` that `part` leaves out.
inline GroupPartition CompleteWithSingletons(GroupPartition part,
                                             const std::vector<NodeId>& universe) {
  std::set<NodeId> covered;
  GroupId next = 0;
  for (const Group& g : part.groups) {
    covered.insert(g.members.begin(), g.members.end());
    next = std::max(next, g.gid + 1);
  }
  std::vector<NodeId> sorted = universe;
  std::sort(sorted.begin(), sorted.end());
  for (NodeId id : sorted) {
    if (!covered.contains(id)) {
      part.groups.push_back(Group{next++, {id}, std::nullopt, false});
    }
  }
  return part;
}

// |a ∩ b| / |a ∪ b|; 1 when both are empty.
inline double JaccardLeadership(const std::vector<NodeId>& a,
                                const std::vector<NodeId>& b) {
  const std::set<NodeId> sa(a.begin(), a.end());
  const std::set<NodeId> sb(b.begin(), b.end());
  if (sa.empty() && sb.empty()) return 1.0;
  std::size_t inter = 0;
  for (NodeId x : sa) inter += sb.contains(x) ? 1 : 0;
  const std::size_t uni = sa.size() + sb.size() - inter;
  return static_cast<double>(inter) / static_cast<double>(uni);
}

inline double CombinedScore(double nmi, double jaccard) {
  if (!(nmi >= 0.0 && nmi <= 1.0) || !(jaccard >= 0.0 && jaccard <= 1.0)) {
    throw ConfigError("combined score inputs must lie in [0, 1]");
  }
  return nmi * jaccard;
}

struct Aggregate {
  double mean = 0.0;
  double median = 0.0;  // lower median for even counts
  double min = 0.0;
  double max = 0.0;
};

inline Aggregate AggregateOf(std::vector<double> values) {
  if (values.empty()) throw ConfigError("cannot aggregate an empty sample");
  std::sort(values.begin(), values.end());
  Aggregate a;
  a.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  a.median = values[(values.size() - 1) / 2];
  a.min = values.front();
  a.max = values.back();
  return a;
}

// Detected structure of one network, in the id space of the original.
struct NetworkFindings {
  GroupPartition groups;
  std::vector<NodeId> leaders;
};

struct MemberScore {
  std::size_t index = 0;
  double nmi = 0.0;
  double jaccard = 0.0;
  double combined = 0.0;
};

struct EnsembleReport {
  std::vector<MemberScore> members;
  Aggregate nmi;
  Aggregate jaccard;
  Aggregate combined;
};

inline EnsembleReport BuildEnsembleReport(
    const NetworkFindings& original,
    const std::vector<NetworkFindings>& members) {
  if (members.empty()) throw ConfigError("ensemble is empty");
  EnsembleReport report;
  std::vector<double> nmis, jacs, css;
  for (std::size_t k = 0; k < members.size(); ++k) {
    MemberScore s;
    s.index = k;
    s.nmi = Nmi(original.groups, members[k].groups);
    s.jaccard = JaccardLeadership(original.leaders, members[k].leaders);
    s.combined = CombinedScore(s.nmi, s.jaccard);
    nmis.push_back(s.nmi);
    jacs.push_back(s.jaccard);
    css.push_back(s.combined);
    report.members.push_back(s);
  }
  report.nmi = AggregateOf(nmis);
  report.jaccard = AggregateOf(jacs);
  report.combined = AggregateOf(css);
  return report;
}

inline nlohmann::ordered_json AggregateJson(const Aggregate& a) {
  return {{"mean", a.mean}, {"median", a.median}, {"min", a.min}, {"max", a.max}};
}

inline nlohmann::ordered_json ReportJson(const EnsembleReport& r) {
  nlohmann::ordered_json doc;
  doc["count"] = r.members.size();
  doc["aggregate"] = {{"nmi", AggregateJson(r.nmi)},
                      {"jaccard", AggregateJson(r.jaccard)},
                      {"combined", AggregateJson(r.combined)}};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const MemberScore& s : r.members) {
    rows.push_back({{"member", s.index},
                    {"nmi", s.nmi},
                    {"jaccard", s.jaccard},
                    {"combined", s.combined}});
  }
  doc["members"] = std::move(rows);
  return doc;
}

// One row per member, then mean/median/min/max rows.
inline std::string ReportCsv(const EnsembleReport& r) {
  using io::FormatDouble;
  std::string out = "row,nmi,jaccard,combined\n";
  for (const MemberScore& s : r.members) {
    out += std::to_string(s.index) + "," + FormatDouble(s.nmi) + "," +
           FormatDouble(s.jaccard) + "," + FormatDouble(s.combined) + "\n";
  }
  auto agg_row = [&](const char* name, double Aggregate::*field) {
    out += std::string(name) + "," + FormatDouble(r.nmi.*field) + "," +
           FormatDouble(r.jaccard.*field) + "," +
           FormatDouble(r.combined.*field) + "\n";
  };
  agg_row("mean", &Aggregate::mean);
  agg_row("median", &Aggregate::median);
  agg_row("min", &Aggregate::min);
  agg_row("max", &Aggregate::max);
  return out;
}

}  // namespace rang

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

// Betweenness centrality (Brandes accumulation) on the undirected transform,
// its relative form in [0,1], and threshold-based leader detection.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "rang/error.hpp"
#include "rang/graph.hpp"
#include "rang/io_util.hpp"
#include "rang/model.hpp"
#include "rang/parallel.hpp"

namespace rang {

enum class PathLength {
  // Edge length 1/weight: heavier interaction means a shorter hop.
  kInverseWeight,
  // Every edge has length 1.
  kUnit,
};

inline std::string PathLengthName(PathLength mode) {
  return mode == PathLength::kUnit ? "unit" : "inverse-weight";
}

namespace centrality_internal {

constexpr double kTieTolerance = 1e-12;

inline bool Shorter(double candidate, double current) {
  if (std::isinf(current)) return !std::isinf(candidate);
  return candidate < current - kTieTolerance * std::max(1.0, current);
}

inline bool Tied(double candidate, double current) {
  return !Shorter(candidate, current) && !Shorter(current, candidate);
}

// Adds the dependencies of source s to `acc` (ordered-pair convention).
inline void AccumulateFromSource(const UndirectedGraph& g, int s,
                                 PathLength mode, std::vector<double>& acc) {
  const int n = g.size();
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  std::vector<double> sigma(n, 0.0);
  std::vector<double> delta(n, 0.0);
  std::vector<std::vector<int>> preds(n);
  std::vector<int> order;
  order.reserve(n);
  std::vector<bool> settled(n, false);
  dist[s] = 0.0;
  sigma[s] = 1.0;
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  queue.emplace(0.0, s);
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (settled[v]) continue;
    settled[v] = true;
    order.push_back(v);
    for (const auto& nb : g.neighbors(v)) {
      const int w = nb.node;
      if (settled[w]) continue;
      const double len = mode == PathLength::kUnit ? 1.0 : 1.0 / nb.weight;
      const double alt = dist[v] + len;
      if (Shorter(alt, dist[w])) {
        dist[w] = alt;
        sigma[w] = sigma[v];
        preds[w].assign(1, v);
        queue.emplace(alt, w);
      } else if (Tied(alt, dist[w])) {
        sigma[w] += sigma[v];
        preds[w].push_back(v);
      }
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int w = *it;
    for (int v : preds[w]) {
      delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
    }
    if (w != s) acc[w] += delta[w];
  }
}

}  // namespace centrality_internal

// Raw betweenness per node index: for every unordered pair {s,t} of other
// nodes, the share of shortest s-t paths passing through the node.
inline std::vector<double> Betweenness(const UndirectedGraph& g,
                                       PathLength mode = PathLength::kInverseWeight,
                                       int threads = 1) {
  const int n = g.size();
  // Fixed chunking keeps the floating-point reduction order independent of
  // the thread count.
  constexpr int kChunks = 16;
  std::vector<std::vector<double>> partial(kChunks, std::vector<double>(n, 0.0));
  ParallelFor(kChunks, threads, [&](std::size_t chunk) {
    for (int s = static_cast<int>(chunk); s < n; s += kChunks) {
      centrality_internal::AccumulateFromSource(g, s, mode, partial[chunk]);
    }
  });
  std::vector<double> bc(n, 0.0);
  for (const auto& p : partial) {
    for (int v = 0; v < n; ++v) bc[v] += p[v];
  }
  for (double& b : bc) b /= 2.0;
  return bc;
}

// Betweenness divided by (n-1)(n-2)/2, the number of pairs a node can lie
// between. All zeros for graphs with fewer than 3 nodes.
inline std::vector<double> RelativeBetweenness(
    const UndirectedGraph& g, PathLength mode = PathLength::kInverseWeight,
    int threads = 1) {
  const int n = g.size();
  if (n < 3) return std::vector<double>(n, 0.0);
  std::vector<double> bc = Betweenness(g, mode, threads);
  const double pairs = static_cast<double>(n - 1) * (n - 2) / 2.0;
  for (double& b : bc) b /= pairs;
  return bc;
}

struct CentralityRow {
  NodeId id = 0;
  double betweenness = 0.0;
  double relative = 0.0;
  int rank = 0;  // 1 = highest relative betweenness; ties by ascending id
};

// Rows in rank order.
inline std::vector<CentralityRow> CentralityTable(
    const UndirectedGraph& g, PathLength mode = PathLength::kInverseWeight) {
  const std::vector<double> raw = Betweenness(g, mode);
  const int n = g.size();
  const double pairs = n < 3 ? 0.0 : static_cast<double>(n - 1) * (n - 2) / 2.0;
  std::vector<CentralityRow> rows;
  rows.reserve(n);
  for (int v = 0; v < n; ++v) {
    rows.push_back({g.id(v), raw[v], pairs > 0 ? raw[v] / pairs : 0.0, 0});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const CentralityRow& a, const CentralityRow& b) {
                     if (a.relative != b.relative) return a.relative > b.relative;
                     return a.id < b.id;
                   });
  for (int i = 0; i < n; ++i) rows[i].rank = i + 1;
  return rows;
}

// Nodes whose relative betweenness reaches 90% of the value held by the
// node ranked `management_count`.
inline std::vector<NodeId> DetectLeaders(
    const std::vector<CentralityRow>& ranked, int management_count) {
  if (management_count < 1) {
    throw ConfigError("management count must be at least 1");
  }
  if (static_cast<std::size_t>(management_count) > ranked.size()) {
    throw ConfigError("management count " + std::to_string(management_count) +
                      " exceeds node count " + std::to_string(ranked.size()));
  }
  const double threshold = 0.9 * ranked[management_count - 1].relative;
  std::vector<NodeId> leaders;
  for (const CentralityRow& r : ranked) {
    if (r.relative >= threshold) leaders.push_back(r.id);
  }
  std::sort(leaders.begin(), leaders.end());
  return leaders;
}

inline std::vector<NodeId> DetectLeaders(
    const UndirectedGraph& g, int management_count,
    PathLength mode = PathLength::kInverseWeight) {
  return DetectLeaders(CentralityTable(g, mode), management_count);
}

inline std::string CentralityCsv(const std::vector<CentralityRow>& rows) {
  std::string out = "id,betweenness,rbc,rank\n";
  for (const CentralityRow& r : rows) {
    out += std::to_string(r.id) + "," + io::FormatDouble(r.betweenness) + "," +
           io::FormatDouble(r.relative) + "," + std::to_string(r.rank) + "\n";
  }
  return out;
}

}  // namespace rang

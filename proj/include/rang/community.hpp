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

// Louvain community detection with resolution 1: repeated local moving of
// single nodes to the neighbouring community with the largest modularity
// gain, followed by aggregation of communities into super-nodes, until a
// level produces no move.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <unordered_map>
#include <vector>

#include "rang/error.hpp"
#include "rang/graph.hpp"
#include "rang/model.hpp"
#include "rang/random.hpp"

namespace rang {

// Newman modularity of a community assignment (one label per node index).
inline double Modularity(const UndirectedGraph& g,
                         const std::vector<std::int64_t>& labels) {
  const double m = g.total_weight();
  if (m <= 0.0) return 0.0;
  std::unordered_map<std::int64_t, double> inside;  // sum_in, both directions
  std::unordered_map<std::int64_t, double> total;   // sum of degrees
  for (int u = 0; u < g.size(); ++u) {
    for (const auto& nb : g.neighbors(u)) {
      total[labels[u]] += nb.weight;
      if (labels[nb.node] == labels[u]) inside[labels[u]] += nb.weight;
    }
  }
  double q = 0.0;
  for (const auto& [c, tot] : total) {
    const double in = inside.contains(c) ? inside.at(c) : 0.0;
    q += in / (2.0 * m) - (tot / (2.0 * m)) * (tot / (2.0 * m));
  }
  return q;
}

// Modularity of a partition. Every node of the graph must be covered.
inline double Modularity(const UndirectedGraph& g, const GroupPartition& part) {
  std::vector<std::int64_t> labels(g.size(), -1);
  for (std::size_t c = 0; c < part.groups.size(); ++c) {
    for (NodeId id : part.groups[c].members) {
      if (!g.contains(id)) {
        throw Error(ErrorKind::kValidation,
                    "partition node " + std::to_string(id) + " not in graph");
      }
      labels[g.index(id)] = static_cast<std::int64_t>(c);
    }
  }
  for (std::int64_t l : labels) {
    if (l < 0) {
      throw Error(ErrorKind::kValidation, "partition does not cover the graph");
    }
  }
  return Modularity(g, labels);
}

struct LouvainOptions {
  // When set, nodes are visited in a seeded random order on every pass;
  // otherwise in ascending id order.
  std::optional<std::uint64_t> shuffle_seed;
  int max_levels = 64;
};

struct LouvainResult {
  std::vector<std::int64_t> labels;  // community per node index
  GroupPartition partition;          // leaderless, gids by smallest member
  double modularity = 0.0;
  int levels = 0;
  // Modularity after each local-moving pass, across all levels.
  std::vector<double> pass_modularity;
};

namespace louvain_internal {

// Weighted graph with explicit self-loops, used for aggregated levels.
// adj[i] holds (j, A_ij) for j != i; self[i] holds A_ii.
struct LevelGraph {
  std::vector<std::vector<std::pair<int, double>>> adj;
  std::vector<double> self;
  std::vector<double> degree;  // k_i = sum_j A_ij
  double two_m = 0.0;

  int size() const { return static_cast<int>(adj.size()); }

  double ModularityOf(const std::vector<int>& comm) const {
    if (two_m <= 0.0) return 0.0;
    std::vector<double> in(size(), 0.0), tot(size(), 0.0);
    for (int i = 0; i < size(); ++i) {
      tot[comm[i]] += degree[i];
      in[comm[i]] += self[i];
      for (const auto& [j, w] : adj[i]) {
        if (comm[j] == comm[i]) in[comm[i]] += w;
      }
    }
    double q = 0.0;
    for (int c = 0; c < size(); ++c) {
      q += in[c] / two_m - (tot[c] / two_m) * (tot[c] / two_m);
    }
    return q;
  }
};

inline LevelGraph FromUndirected(const UndirectedGraph& g) {
  LevelGraph lg;
  lg.adj.resize(g.size());
  lg.self.assign(g.size(), 0.0);
  lg.degree.assign(g.size(), 0.0);
  for (int u = 0; u < g.size(); ++u) {
    for (const auto& nb : g.neighbors(u)) {
      lg.adj[u].emplace_back(nb.node, nb.weight);
      lg.degree[u] += nb.weight;
    }
    lg.two_m += lg.degree[u];
  }
  return lg;
}

// Local moving on one level. Returns true if any node moved.
inline bool MoveNodes(const LevelGraph& g, std::vector<int>& comm,
                      std::optional<Rng>& rng,
                      std::vector<double>& pass_modularity) {
  constexpr double kEps = 1e-12;
  const int n = g.size();
  std::vector<double> tot(n, 0.0);
  for (int i = 0; i < n; ++i) tot[comm[i]] += g.degree[i];
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> link(n, 0.0);
  std::vector<int> touched;
  bool any_move = false;
  while (true) {
    if (rng.has_value()) std::shuffle(order.begin(), order.end(), *rng);
    int moves = 0;
    for (int i : order) {
      const int own = comm[i];
      const double ki = g.degree[i];
      touched.clear();
      for (const auto& [j, w] : g.adj[i]) {
        if (link[comm[j]] == 0.0) touched.push_back(comm[j]);
        link[comm[j]] += w;
      }
      tot[own] -= ki;
      // Gain of joining c, up to a positive factor: link(i,c) - tot(c)*k_i/2m.
      auto gain = [&](int c) { return link[c] - tot[c] * ki / g.two_m; };
      int best = own;
      double best_gain = gain(own);
      std::sort(touched.begin(), touched.end());
      for (int c : touched) {
        if (c == own) continue;
        const double gc = gain(c);
        if (gc > best_gain + kEps) {
          best = c;
          best_gain = gc;
        }
      }
      tot[best] += ki;
      for (int c : touched) link[c] = 0.0;
      if (best != own) {
        comm[i] = best;
        ++moves;
      }
    }
    pass_modularity.push_back(g.ModularityOf(comm));
    if (moves == 0) break;
    any_move = true;
  }
  return any_move;
}

// Renumbers communities 0.. in order of their lowest node index.
inline int Renumber(std::vector<int>& comm) {
  std::vector<int> remap(comm.size(), -1);
  int next = 0;
  for (int& c : comm) {
    if (remap[c] < 0) remap[c] = next++;
    c = remap[c];
  }
  return next;
}

inline LevelGraph Aggregate(const LevelGraph& g, const std::vector<int>& comm,
                            int communities) {
  LevelGraph out;
  out.adj.resize(communities);
  out.self.assign(communities, 0.0);
  out.degree.assign(communities, 0.0);
  std::vector<std::map<int, double>> merged(communities);
  for (int i = 0; i < g.size(); ++i) {
    const int ci = comm[i];
    out.self[ci] += g.self[i];
    out.degree[ci] += g.degree[i];
    for (const auto& [j, w] : g.adj[i]) {
      const int cj = comm[j];
      if (ci == cj) {
        out.self[ci] += w;
      } else {
        merged[ci][cj] += w;
      }
    }
  }
  for (int c = 0; c < communities; ++c) {
    for (const auto& [d, w] : merged[c]) out.adj[c].emplace_back(d, w);
  }
  out.two_m = g.two_m;
  return out;
}

}  // namespace louvain_internal

inline LouvainResult Louvain(const UndirectedGraph& graph,
                             const LouvainOptions& opts = {}) {
  using namespace louvain_internal;
  LouvainResult result;
  const int n = graph.size();
  std::vector<int> node_comm(n);
  std::iota(node_comm.begin(), node_comm.end(), 0);
  std::optional<Rng> rng;
  if (opts.shuffle_seed.has_value()) rng.emplace(DeriveSeed(*opts.shuffle_seed, 0));

  LevelGraph level = FromUndirected(graph);
  for (int depth = 0; depth < opts.max_levels && level.two_m > 0.0; ++depth) {
    std::vector<int> comm(level.size());
    std::iota(comm.begin(), comm.end(), 0);
    const bool moved = MoveNodes(level, comm, rng, result.pass_modularity);
    if (!moved) break;
    const int communities = Renumber(comm);
    for (int& c : node_comm) c = comm[c];
    level = Aggregate(level, comm, communities);
    ++result.levels;
  }
  result.labels.assign(node_comm.begin(), node_comm.end());
  result.partition = PartitionFromLabels(graph.ids(), result.labels);
  result.modularity = Modularity(graph, result.labels);
  return result;
}

inline GroupPartition DetectGroups(const Network& net,
                                   const LouvainOptions& opts = {}) {
  return Louvain(ToUndirected(net), opts).partition;
}

}  // namespace rang

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

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rang/error.hpp"
#include "rang/model.hpp"

namespace rang {

// Undirected weighted simple graph over dense indices 0..n-1, with the
// original node ids kept in ascending order.
class UndirectedGraph {
 public:
  struct Neighbor {
    int node;
    double weight;
  };

  UndirectedGraph() = default;

  // Parallel (u,v)/(v,u) entries are summed. Self-loops are rejected.
  static UndirectedGraph FromEdges(
      std::vector<NodeId> ids,
      const std::vector<std::tuple<NodeId, NodeId, double>>& edges) {
    UndirectedGraph g;
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    g.ids_ = std::move(ids);
    for (std::size_t i = 0; i < g.ids_.size(); ++i) {
      g.index_.emplace(g.ids_[i], static_cast<int>(i));
    }
    std::map<std::pair<int, int>, double> merged;
    for (const auto& [a, b, w] : edges) {
      if (a == b) {
        throw Error(ErrorKind::kInternal, "self-loop in undirected graph");
      }
      int u = g.index_.at(a);
      int v = g.index_.at(b);
      if (u > v) std::swap(u, v);
      merged[{u, v}] += w;
    }
    g.adj_.assign(g.ids_.size(), {});
    for (const auto& [uv, w] : merged) {
      g.adj_[uv.first].push_back({uv.second, w});
      g.adj_[uv.second].push_back({uv.first, w});
      g.total_weight_ += w;
      ++g.edge_count_;
    }
    return g;
  }

  int size() const { return static_cast<int>(ids_.size()); }
  std::size_t edge_count() const { return edge_count_; }
  // Sum of undirected edge weights (m).
  double total_weight() const { return total_weight_; }
  const std::vector<NodeId>& ids() const { return ids_; }
  NodeId id(int index) const { return ids_[index]; }
  int index(NodeId id) const { return index_.at(id); }
  bool contains(NodeId id) const { return index_.contains(id); }
  const std::vector<Neighbor>& neighbors(int u) const { return adj_[u]; }

  double degree(int u) const {
    double d = 0;
    for (const Neighbor& nb : adj_[u]) d += nb.weight;
    return d;
  }

 private:
  std::vector<NodeId> ids_;
  std::unordered_map<NodeId, int> index_;
  std::vector<std::vector<Neighbor>> adj_;
  double total_weight_ = 0.0;
  std::size_t edge_count_ = 0;
};

// One undirected edge per connected unordered pair, weighted by the sum of
// both directed weights.
inline UndirectedGraph ToUndirected(const Network& net) {
  std::vector<std::tuple<NodeId, NodeId, double>> edges;
  edges.reserve(net.edges.size());
  for (const Edge& e : net.edges) {
    edges.emplace_back(e.source, e.target, static_cast<double>(e.weight));
  }
  return UndirectedGraph::FromEdges(net.NodeIds(), edges);
}

}  // namespace rang

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

// Synthetic network generators.
//
// Two generators work from an EdgeClassSummary and redraw the edges of every
// class independently:
//
//  * BWRN (Bernoulli weighted random network): each original edge of weight w
//    is moved to a random free pair of its class and receives
//    Binomial(floor(w/p_B), p_B) + Bernoulli(p_a) weight, where
//    p_a = w - p_B * floor(w/p_B). The expected weight is exactly w and the
//    variance is w(1-p_B) + p_a(p_B-p_a).
//  * WRG (weighted random graph): every pair of a class with E pairs and
//    total weight W gets a geometric weight with continuation probability
//    W/(W+E), so each pair's expected weight is W/E.
//
// The weighted SBM baseline works from the network itself: it adds unit
// weights to random node pairs of randomly chosen block pairs until the
// original total weight is reached.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rang/classify.hpp"
#include "rang/error.hpp"
#include "rang/model.hpp"
#include "rang/parallel.hpp"
#include "rang/random.hpp"

namespace rang {

enum class GenModel { kBwrn, kWrg, kSbm };

inline std::string ModelName(GenModel m) {
  switch (m) {
    case GenModel::kBwrn: return "bwrn";
    case GenModel::kWrg: return "wrg";
    case GenModel::kSbm: return "sbm";
  }
  return "?";
}

inline std::optional<GenModel> ModelFromName(const std::string& name) {
  for (GenModel m : {GenModel::kBwrn, GenModel::kWrg, GenModel::kSbm}) {
    if (ModelName(m) == name) return m;
  }
  return std::nullopt;
}

inline constexpr double kDefaultBernoulliProbability = 0.875;
inline constexpr Weight kWrgWeightCap = 1'000'000;

struct GenConfig {
  GenModel model = GenModel::kBwrn;
  double p_b = kDefaultBernoulliProbability;  // BWRN only
  std::uint64_t seed = 0;
  int count = 1;
  // Relabel node ids of each output network with a seeded permutation.
  bool shuffle_ids = true;
  // SBM: pick block pairs proportionally to their weight share instead of
  // uniformly.
  bool sbm_weighted_pick = false;
  int threads = 1;
};

inline void ValidateConfig(const GenConfig& cfg) {
  if (!(cfg.p_b > 0.0 && cfg.p_b <= 1.0)) {
    throw ConfigError("p_B must lie in (0, 1]");
  }
  if (cfg.count < 1) throw ConfigError("count must be at least 1");
}

// Per-weight BWRN parameters.
struct BwrnParams {
  Weight w = 0;
  Weight w_b = 0;     // floor(w / p_B)
  double p_a = 0.0;   // w - p_B * w_b, in [0, p_B)

  double Mean() const { return static_cast<double>(w); }
};

inline BwrnParams MakeBwrnParams(Weight w, double p_b) {
  BwrnParams p;
  p.w = w;
  const double wd = static_cast<double>(w);
  p.w_b = static_cast<Weight>(std::floor(wd / p_b));
  // Guard against w/p_B landing just below an integer.
  if (static_cast<double>(p.w_b + 1) * p_b <= wd * (1.0 + 1e-12)) ++p.w_b;
  p.p_a = wd - p_b * static_cast<double>(p.w_b);
  if (p.p_a < 1e-12) p.p_a = 0.0;
  return p;
}

inline double BwrnVariance(Weight w, double p_b) {
  const BwrnParams p = MakeBwrnParams(w, p_b);
  return static_cast<double>(w) * (1.0 - p_b) + p.p_a * (p_b - p.p_a);
}

// Largest weight BWRN can return for w: ceil(w / p_B).
inline Weight BwrnMaxWeight(Weight w, double p_b) {
  const BwrnParams p = MakeBwrnParams(w, p_b);
  return p.p_a > 0.0 ? p.w_b + 1 : p.w_b;
}

inline Weight BwrnSampleWeight(Weight w, double p_b, Rng& rng) {
  const BwrnParams p = MakeBwrnParams(w, p_b);
  Weight k = 0;
  if (p_b >= 1.0) {
    k = p.w_b;
  } else if (p.w_b > 0) {
    k = std::binomial_distribution<Weight>(p.w_b, p_b)(rng);
  }
  if (p.p_a > 0.0 && std::bernoulli_distribution(p.p_a)(rng)) ++k;
  return k;
}

// Prepared inputs shared by all members of an ensemble.
struct GeneratorInput {
  EdgeClassSummary summary;
  std::map<ClassKey, PairList> pairs;
  // Present when generating from a dataset; required by the SBM baseline.
  std::optional<Network> network;
  std::optional<GroupPartition> partition;

  static GeneratorInput FromDataset(const Network& net,
                                    const GroupPartition& part) {
    GeneratorInput in;
    in.summary = Summarize(net, part);
    in.pairs = ClassPairs(in.summary.roster, in.summary.groups);
    in.network = net;
    in.partition = in.summary.groups;
    return in;
  }

  static GeneratorInput FromSummary(EdgeClassSummary summary) {
    GeneratorInput in;
    in.summary = std::move(summary);
    Canonicalize(in.summary.groups);
    std::sort(in.summary.roster.begin(), in.summary.roster.end());
    in.pairs = ClassPairs(in.summary.roster, in.summary.groups);
    for (const EdgeClass& c : in.summary.classes) {
      auto it = in.pairs.find(c.key);
      const std::int64_t have =
          it == in.pairs.end() ? 0 : static_cast<std::int64_t>(it->second.size());
      if (have != c.capacity) {
        throw Error(ErrorKind::kValidation,
                    "summary class " + c.key.ToString() + " declares capacity " +
                        std::to_string(c.capacity) + " but the roster yields " +
                        std::to_string(have));
      }
    }
    return in;
  }
};

// Edges for one BWRN draw. Within each class, original weights are processed
// heaviest first and each is placed on a uniformly chosen pair that has no
// edge yet; a zero draw leaves the pair free.
inline std::vector<Edge> BwrnGenerateEdges(const GeneratorInput& in,
                                           double p_b, Rng& rng) {
  std::vector<Edge> edges;
  for (const EdgeClass& c : in.summary.classes) {
    if (c.weights.empty()) continue;
    auto it = in.pairs.find(c.key);
    if (it == in.pairs.end() || it->second.size() < c.weights.size()) {
      throw Error(ErrorKind::kInternal,
                  "class " + c.key.ToString() + " has more edges than pairs");
    }
    PairList free = it->second;
    std::size_t used = 0;
    for (Weight w : c.weights) {
      std::uniform_int_distribution<std::size_t> pick(used, free.size() - 1);
      const std::size_t idx = pick(rng);
      const Weight k = BwrnSampleWeight(w, p_b, rng);
      if (k == 0) continue;
      std::swap(free[used], free[idx]);
      edges.push_back({free[used].first, free[used].second, k});
      ++used;
    }
  }
  return edges;
}

// Edges for one WRG draw.
inline std::vector<Edge> WrgGenerateEdges(const GeneratorInput& in, Rng& rng) {
  std::vector<Edge> edges;
  for (const EdgeClass& c : in.summary.classes) {
    if (c.weight == 0 || c.capacity == 0) continue;
    const double w = static_cast<double>(c.weight);
    const double p = w / (w + static_cast<double>(c.capacity));
    std::geometric_distribution<Weight> draw(1.0 - p);
    for (const auto& [u, v] : in.pairs.at(c.key)) {
      const Weight k = draw(rng);
      if (k >= kWrgWeightCap) {
        throw Error(ErrorKind::kValidation,
                    "WRG weight cap reached in class " + c.key.ToString());
      }
      if (k > 0) edges.push_back({u, v, k});
    }
  }
  return edges;
}

// Blocks used by the SBM baseline: one per group (its members), plus one
// block holding every node that is not a group member, so leaders, the boss
// and unassigned nodes keep their share of the weight.
inline std::vector<std::vector<NodeId>> SbmBlocks(const Network& net,
                                                  const GroupPartition& part) {
  std::vector<std::vector<NodeId>> blocks;
  std::unordered_set<NodeId> assigned;
  for (const Group& g : part.groups) {
    blocks.push_back(g.members);
    assigned.insert(g.members.begin(), g.members.end());
  }
  std::vector<NodeId> rest;
  for (const NodeRecord& n : net.nodes) {
    if (!assigned.contains(n.id)) rest.push_back(n.id);
  }
  std::sort(rest.begin(), rest.end());
  if (!rest.empty()) blocks.push_back(std::move(rest));
  return blocks;
}

struct SbmOptions {
  bool weighted_pick = false;
};

inline std::vector<Edge> SbmGenerateEdges(const Network& net,
                                          const GroupPartition& part,
                                          const SbmOptions& opts, Rng& rng) {
  const Weight total = net.TotalWeight();
  if (total == 0) return {};
  const auto blocks = SbmBlocks(net, part);
  const std::size_t nb = blocks.size();
  std::unordered_map<NodeId, std::size_t> block_of;
  for (std::size_t b = 0; b < nb; ++b) {
    for (NodeId id : blocks[b]) block_of.emplace(id, b);
  }
  std::vector<Weight> pair_weight(nb * nb, 0);
  for (const Edge& e : net.edges) {
    pair_weight[block_of.at(e.source) * nb + block_of.at(e.target)] += e.weight;
  }
  struct BlockPair {
    std::size_t from;
    std::size_t to;
    double probability;
  };
  std::vector<BlockPair> eligible;
  std::vector<double> pick_weights;
  for (std::size_t a = 0; a < nb; ++a) {
    for (std::size_t b = 0; b < nb; ++b) {
      if (a == b && blocks[a].size() < 2) continue;
      const double prob = static_cast<double>(pair_weight[a * nb + b]) /
                          static_cast<double>(total);
      eligible.push_back({a, b, prob});
      pick_weights.push_back(prob);
    }
  }
  std::uniform_int_distribution<std::size_t> uniform_pick(0,
                                                          eligible.size() - 1);
  std::discrete_distribution<std::size_t> weighted_pick(pick_weights.begin(),
                                                        pick_weights.end());
  std::map<std::pair<NodeId, NodeId>, Weight> weights;
  Weight generated = 0;
  while (generated < total) {
    const BlockPair& bp = eligible[opts.weighted_pick ? weighted_pick(rng)
                                                      : uniform_pick(rng)];
    const auto& src = blocks[bp.from];
    const auto& dst = blocks[bp.to];
    std::uniform_int_distribution<std::size_t> pick_src(0, src.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_dst(0, dst.size() - 1);
    NodeId u = 0;
    NodeId v = 0;
    do {
      u = src[pick_src(rng)];
      v = dst[pick_dst(rng)];
    } while (u == v);
    if (bp.probability > 0.0 &&
        std::bernoulli_distribution(bp.probability)(rng)) {
      ++weights[{u, v}];
      ++generated;
    }
  }
  std::vector<Edge> edges;
  edges.reserve(weights.size());
  for (const auto& [pair, w] : weights) {
    edges.push_back({pair.first, pair.second, w});
  }
  return edges;
}

// Bijection original id -> anonymized id for ensemble member `index`. The
// anonymized ids are a seeded shuffle of the original id set.
inline std::unordered_map<NodeId, NodeId> IdPermutation(
    std::vector<NodeId> ids, std::uint64_t seed, std::uint64_t index) {
  std::sort(ids.begin(), ids.end());
  std::vector<NodeId> shuffled = ids;
  Rng rng(DeriveSeed(DeriveSeed(seed, index), 1));
  std::shuffle(shuffled.begin(), shuffled.end(), rng);
  std::unordered_map<NodeId, NodeId> map;
  for (std::size_t i = 0; i < ids.size(); ++i) map.emplace(ids[i], shuffled[i]);
  return map;
}

inline std::unordered_map<NodeId, NodeId> InvertIdMap(
    const std::unordered_map<NodeId, NodeId>& map) {
  std::unordered_map<NodeId, NodeId> inv;
  for (const auto& [a, b] : map) inv.emplace(b, a);
  return inv;
}

inline Network RelabelNetwork(const Network& net,
                              const std::unordered_map<NodeId, NodeId>& map) {
  Network out;
  for (const NodeRecord& n : net.nodes) out.nodes.push_back({map.at(n.id), n.level});
  for (const Edge& e : net.edges) {
    out.edges.push_back({map.at(e.source), map.at(e.target), e.weight});
  }
  Canonicalize(out);
  return out;
}

inline GroupPartition RelabelPartition(
    const GroupPartition& part, const std::unordered_map<NodeId, NodeId>& map) {
  GroupPartition out = part;
  for (Group& g : out.groups) {
    for (NodeId& m : g.members) m = map.at(m);
    if (g.leader.has_value()) g.leader = map.at(*g.leader);
  }
  Canonicalize(out);
  return out;
}

struct GeneratedNetwork {
  Network network;
  GroupPartition partition;

  friend bool operator==(const GeneratedNetwork&,
                         const GeneratedNetwork&) = default;
};

struct GeneratedEnsemble {
  GenConfig config;
  std::vector<GeneratedNetwork> members;
};

// Member `index` of the ensemble. Depends only on (input, cfg, index).
inline GeneratedNetwork GenerateMember(const GeneratorInput& in,
                                       const GenConfig& cfg,
                                       std::uint64_t index) {
  Rng rng(DeriveSeed(DeriveSeed(cfg.seed, index), 0));
  GeneratedNetwork out;
  out.network.nodes = in.summary.roster;
  out.partition = in.summary.groups;
  switch (cfg.model) {
    case GenModel::kBwrn:
      out.network.edges = BwrnGenerateEdges(in, cfg.p_b, rng);
      break;
    case GenModel::kWrg:
      out.network.edges = WrgGenerateEdges(in, rng);
      break;
    case GenModel::kSbm:
      if (!in.network.has_value()) {
        throw ConfigError("the SBM baseline needs the original network");
      }
      out.network.edges = SbmGenerateEdges(
          *in.network, in.summary.groups, {cfg.sbm_weighted_pick}, rng);
      break;
  }
  Canonicalize(out.network);
  if (cfg.shuffle_ids) {
    const auto map = IdPermutation(out.network.NodeIds(), cfg.seed, index);
    out.network = RelabelNetwork(out.network, map);
    out.partition = RelabelPartition(out.partition, map);
  }
  return out;
}

inline GeneratedEnsemble GenerateEnsemble(const GeneratorInput& in,
                                          const GenConfig& cfg) {
  ValidateConfig(cfg);
  GeneratedEnsemble ens;
  ens.config = cfg;
  ens.members.resize(static_cast<std::size_t>(cfg.count));
  ParallelFor(ens.members.size(), cfg.threads, [&](std::size_t k) {
    ens.members[k] = GenerateMember(in, cfg, k);
  });
  return ens;
}

inline GeneratedEnsemble GenerateEnsemble(const Network& net,
                                          const GroupPartition& part,
                                          const GenConfig& cfg) {
  ValidateConfig(cfg);
  return GenerateEnsemble(GeneratorInput::FromDataset(net, part), cfg);
}

}  // namespace rang

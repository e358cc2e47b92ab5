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

// Reader and writer for the three-file dataset exchanged between data owners
// and analysts:
//
//   nodes.csv    header `id,level`, one node per row
//   edges.csv    header `source,target,weight`, one directed edge per row
//   groups.json  array of {"gid", "members", "leader", "independent"}
//
// Subordinate and superior lists per node are not stored separately: a
// group's leader is the superior of each of its members.

#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "rang/error.hpp"
#include "rang/io_util.hpp"
#include "rang/model.hpp"

namespace rang {

inline constexpr std::string_view kNodesFile = "nodes.csv";
inline constexpr std::string_view kEdgesFile = "edges.csv";
inline constexpr std::string_view kGroupsFile = "groups.json";

struct Dataset {
  Network network;
  GroupPartition partition;
  // Non-fatal findings from partition validation (e.g. uncovered nodes).
  std::vector<Violation> warnings;
};

namespace ingest_internal {

inline void ExpectHeader(std::string_view file, std::string_view line,
                         std::string_view header) {
  if (line != header) {
    throw FormatError(std::string(file), 1,
                      "expected header '" + std::string(header) + "'");
  }
}

inline std::int64_t IntField(std::string_view file, int line_no,
                             std::string_view name, std::string_view field) {
  auto value = io::ParseInt(field);
  if (!value) {
    throw FormatError(std::string(file), line_no,
                      std::string(name) + " must be an integer, got '" +
                          std::string(field) + "'");
  }
  return *value;
}

}  // namespace ingest_internal

inline std::vector<NodeRecord> ParseNodesCsv(std::string_view text,
                                             std::string_view file = kNodesFile) {
  using namespace ingest_internal;
  auto lines = io::SplitLines(text);
  if (lines.empty()) throw FormatError(std::string(file), 1, "missing header");
  ExpectHeader(file, lines[0], "id,level");
  std::vector<NodeRecord> nodes;
  nodes.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    auto fields = io::SplitFields(lines[i]);
    if (fields.size() != 2) {
      throw FormatError(std::string(file), line_no, "expected 2 fields");
    }
    NodeRecord n;
    n.id = IntField(file, line_no, "id", fields[0]);
    n.level = static_cast<int>(IntField(file, line_no, "level", fields[1]));
    nodes.push_back(n);
  }
  return nodes;
}

inline std::vector<Edge> ParseEdgesCsv(std::string_view text,
                                       std::string_view file = kEdgesFile) {
  using namespace ingest_internal;
  auto lines = io::SplitLines(text);
  if (lines.empty()) throw FormatError(std::string(file), 1, "missing header");
  ExpectHeader(file, lines[0], "source,target,weight");
  std::vector<Edge> edges;
  edges.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const int line_no = static_cast<int>(i) + 1;
    auto fields = io::SplitFields(lines[i]);
    if (fields.size() != 3) {
      throw FormatError(std::string(file), line_no, "expected 3 fields");
    }
    Edge e;
    e.source = IntField(file, line_no, "source", fields[0]);
    e.target = IntField(file, line_no, "target", fields[1]);
    e.weight = IntField(file, line_no, "weight", fields[2]);
    edges.push_back(e);
  }
  return edges;
}

inline GroupPartition ParseGroupsJson(std::string_view text,
                                      std::string_view file = kGroupsFile) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kFormat, std::string(file) + ": " + e.what());
  }
  auto fail = [&](std::size_t index, const std::string& what) {
    return Error(ErrorKind::kFormat, std::string(file) + ": group #" +
                                         std::to_string(index) + ": " + what);
  };
  if (!doc.is_array()) {
    throw Error(ErrorKind::kFormat, std::string(file) + ": expected an array");
  }
  GroupPartition part;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const json& obj = doc[i];
    if (!obj.is_object()) throw fail(i, "expected an object");
    for (const auto& [key, value] : obj.items()) {
      if (key != "gid" && key != "members" && key != "leader" &&
          key != "independent") {
        throw fail(i, "unknown key '" + key + "'");
      }
    }
    Group g;
    if (!obj.contains("gid") || !obj["gid"].is_number_integer()) {
      throw fail(i, "'gid' must be an integer");
    }
    g.gid = obj["gid"].get<GroupId>();
    if (!obj.contains("members") || !obj["members"].is_array()) {
      throw fail(i, "'members' must be an array");
    }
    for (const json& m : obj["members"]) {
      if (!m.is_number_integer()) throw fail(i, "member ids must be integers");
      g.members.push_back(m.get<NodeId>());
    }
    if (obj.contains("leader") && !obj["leader"].is_null()) {
      if (!obj["leader"].is_number_integer()) {
        throw fail(i, "'leader' must be an integer or null");
      }
      g.leader = obj["leader"].get<NodeId>();
    }
    if (obj.contains("independent")) {
      if (!obj["independent"].is_boolean()) {
        throw fail(i, "'independent' must be a boolean");
      }
      g.independent = obj["independent"].get<bool>();
    }
    part.groups.push_back(std::move(g));
  }
  return part;
}

inline std::string NodesCsv(const Network& net) {
  std::string out = "id,level\n";
  for (const NodeRecord& n : net.nodes) {
    out += std::to_string(n.id) + "," + std::to_string(n.level) + "\n";
  }
  return out;
}

inline std::string EdgesCsv(const Network& net) {
  std::string out = "source,target,weight\n";
  for (const Edge& e : net.edges) {
    out += std::to_string(e.source) + "," + std::to_string(e.target) + "," +
           std::to_string(e.weight) + "\n";
  }
  return out;
}

inline std::string GroupsJson(const GroupPartition& part) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const Group& g : part.groups) {
    nlohmann::ordered_json obj;
    obj["gid"] = g.gid;
    obj["members"] = g.members;
    if (g.leader.has_value()) {
      obj["leader"] = *g.leader;
    } else {
      obj["leader"] = nullptr;
    }
    obj["independent"] = g.independent;
    doc.push_back(std::move(obj));
  }
  return doc.dump(2) + "\n";
}

// Loads and validates a dataset directory. Throws Error(kIo) for missing
// files, Error(kFormat) for malformed rows, and ValidationError when any
// network or partition invariant fails.
inline Dataset LoadDataset(const std::filesystem::path& dir) {
  for (std::string_view name : {kNodesFile, kEdgesFile, kGroupsFile}) {
    if (!std::filesystem::is_regular_file(dir / name)) {
      throw IoError("missing " + (dir / name).string());
    }
  }
  Dataset ds;
  ds.network.nodes = ParseNodesCsv(io::ReadTextFile(dir / kNodesFile),
                                   (dir / kNodesFile).string());
  ds.network.edges = ParseEdgesCsv(io::ReadTextFile(dir / kEdgesFile),
                                   (dir / kEdgesFile).string());
  ds.partition = ParseGroupsJson(io::ReadTextFile(dir / kGroupsFile),
                                 (dir / kGroupsFile).string());
  std::vector<Violation> violations = ValidateNetwork(ds.network);
  PartitionCheck check = ValidatePartition(ds.network, ds.partition);
  violations.insert(violations.end(), check.violations.begin(),
                    check.violations.end());
  if (!violations.empty()) throw ValidationError(std::move(violations));
  ds.warnings = std::move(check.warnings);
  return ds;
}

// Writes the dataset in canonical order (nodes by id, edges by pair, groups by
// gid with sorted members).
inline void SaveDataset(Network net, GroupPartition part,
                        const std::filesystem::path& dir) {
  Canonicalize(net);
  Canonicalize(part);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  io::WriteTextFile(dir / kNodesFile, NodesCsv(net));
  io::WriteTextFile(dir / kEdgesFile, EdgesCsv(net));
  io::WriteTextFile(dir / kGroupsFile, GroupsJson(part));
}

// Flags identifiers that do not look anonymized: anything other than a plain
// integer.
inline std::vector<Violation> AnonymizeCheck(
    std::span<const std::string> raw_ids) {
  std::vector<Violation> warnings;
  for (const std::string& id : raw_ids) {
    if (!io::ParseInt(id)) {
      warnings.push_back({"non-numeric-id", "non-numeric id '" + id + "'"});
    }
  }
  return warnings;
}

// Scans the raw node and edge files of a dataset directory, before any
// parsing, for non-numeric ids and extra columns that could carry personal
// payloads.
inline std::vector<Violation> AnonymizeCheckDirectory(
    const std::filesystem::path& dir) {
  std::vector<Violation> warnings;
  const std::string nodes_text = io::ReadTextFile(dir / kNodesFile);
  auto lines = io::SplitLines(nodes_text);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto fields = io::SplitFields(lines[i]);
    if (fields.size() > 2) {
      warnings.push_back({"string-payload",
                          std::string(kNodesFile) + ":" +
                              std::to_string(i + 1) + ": extra columns"});
    }
    if (i > 0) ids.emplace_back(fields[0]);
  }
  auto id_warnings = AnonymizeCheck(ids);
  warnings.insert(warnings.end(), id_warnings.begin(), id_warnings.end());
  if (std::filesystem::is_regular_file(dir / kEdgesFile)) {
    const std::string edges_text = io::ReadTextFile(dir / kEdgesFile);
    auto edge_lines = io::SplitLines(edges_text);
    for (std::size_t i = 1; i < edge_lines.size(); ++i) {
      auto fields = io::SplitFields(edge_lines[i]);
      if (fields.size() > 3) {
        warnings.push_back({"string-payload",
                            std::string(kEdgesFile) + ":" +
                                std::to_string(i + 1) + ": extra columns"});
      }
      for (std::size_t f = 0; f < std::min<std::size_t>(2, fields.size());
           ++f) {
        if (!io::ParseInt(fields[f])) {
          warnings.push_back({"non-numeric-id",
                              std::string(kEdgesFile) + ":" +
                                  std::to_string(i + 1) + ": non-numeric id '" +
                                  std::string(fields[f]) + "'"});
        }
      }
    }
  }
  return warnings;
}

}  // namespace rang

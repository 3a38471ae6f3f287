// Copyright 2026 The RFA Authors.
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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rfa {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

// Undirected, unweighted simple graph in compressed sparse row form.
//
// Every undirected edge {i, j} is stored twice (j in row i, i in row j).
// Neighbor lists are sorted ascending and free of duplicates and self-loops.
// Immutable after construction.
class Graph {
 public:
  Graph() = default;

  // Builds a graph on nodes 0..n-1. Self-loops are dropped, duplicates
  // (in either orientation) are merged. `original_ids`, when non-empty, must
  // have n entries and records the external id of every node.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          std::vector<std::int64_t> original_ids = {});

  std::size_t num_nodes() const { return degrees_.size(); }
  std::size_t num_edges() const { return adjacency_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId i) const {
    return {adjacency_.data() + offsets_[i], adjacency_.data() + offsets_[i + 1]};
  }
  std::uint32_t degree(NodeId i) const { return degrees_[i]; }

  const std::vector<std::uint32_t>& degrees() const { return degrees_; }
  const std::vector<std::size_t>& offsets() const { return offsets_; }
  const std::vector<NodeId>& adjacency() const { return adjacency_; }

  // External id of node i; equals i when the graph was built without ids.
  std::int64_t original_id(NodeId i) const {
    return original_ids_.empty() ? static_cast<std::int64_t>(i) : original_ids_[i];
  }
  bool has_original_ids() const { return !original_ids_.empty(); }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::vector<std::uint32_t> degrees_;
  std::vector<std::int64_t> original_ids_;
};

// Scans the CSR arrays and returns a description of the first violated
// invariant (symmetry, sortedness, self-loops, degree sum), if any.
std::optional<std::string> find_invariant_violation(const Graph& g);

struct EdgeListOptions {
  // Smallest valid node id in the file (0 or 1). Ids are compacted either way.
  int index_base = 0;
  // Strict: any line that is not exactly two integers is an error.
  // Lenient: extra columns are ignored and unparseable lines are skipped.
  bool strict = true;
};

// Reads a whitespace-separated edge list. `#` starts a comment.
// Node ids are compacted to 0..n-1 in ascending order of their file id; the
// file ids are kept as original ids.
Graph load_edge_list(const std::string& path, const EdgeListOptions& options = {});

// Writes one `u v` line per undirected edge (u < v) using original ids.
void save_edge_list(const Graph& g, const std::string& path);

struct ComponentMap {
  // Component label per node of the input graph, numbered 0.. in order of
  // each component's smallest node id.
  std::vector<std::uint32_t> component_id;
  std::vector<std::size_t> sizes;
  // Label of the extracted (largest) component.
  std::uint32_t selected = 0;
  // new id -> old id for the extracted component.
  std::vector<NodeId> kept;
  // old id -> new id, or -1 when the node was dropped.
  std::vector<std::int64_t> old_to_new;
};

// Labels connected components by BFS.
ComponentMap label_components(const Graph& g);

bool is_connected(const Graph& g);

// Induced subgraph on the largest connected component. Ties between equal
// sized components go to the one containing the smallest node id. Relative
// node order and original ids are preserved.
std::pair<Graph, ComponentMap> largest_connected_component(const Graph& g);

}  // namespace rfa

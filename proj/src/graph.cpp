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

#include "rfa/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <string_view>

#include "rfa/error.hpp"

namespace rfa {

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges,
                        std::vector<std::int64_t> original_ids) {
  if (n > std::numeric_limits<NodeId>::max()) {
    throw DomainError("graph has too many nodes for 32-bit ids");
  }
  if (!original_ids.empty() && original_ids.size() != n) {
    throw DomainError("original id count does not match node count");
  }

  Graph g;
  std::vector<std::size_t> counts(n + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw DomainError("edge endpoint out of range");
    if (u == v) continue;
    ++counts[u + 1];
    ++counts[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) counts[i + 1] += counts[i];

  std::vector<NodeId> raw(counts[n]);
  std::vector<std::size_t> cursor(counts.begin(), counts.end() - 1);
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    raw[cursor[u]++] = v;
    raw[cursor[v]++] = u;
  }

  // Sort each row and squeeze out duplicates in place.
  g.offsets_.assign(n + 1, 0);
  g.degrees_.assign(n, 0);
  std::size_t write = 0;
  for (std::size_t i = 0; i < n; ++i) {
    auto first = raw.begin() + static_cast<std::ptrdiff_t>(counts[i]);
    auto last = raw.begin() + static_cast<std::ptrdiff_t>(counts[i + 1]);
    std::sort(first, last);
    last = std::unique(first, last);
    const std::size_t len = static_cast<std::size_t>(last - first);
    std::copy(first, last, raw.begin() + static_cast<std::ptrdiff_t>(write));
    write += len;
    g.offsets_[i + 1] = write;
    g.degrees_[i] = static_cast<std::uint32_t>(len);
  }
  raw.resize(write);
  raw.shrink_to_fit();
  g.adjacency_ = std::move(raw);
  g.original_ids_ = std::move(original_ids);
  return g;
}

std::optional<std::string> find_invariant_violation(const Graph& g) {
  const std::size_t n = g.num_nodes();
  if (g.offsets().size() != n + 1) return "offset array has wrong length";
  std::size_t degree_sum = 0;
  for (NodeId i = 0; i < n; ++i) {
    auto nbrs = g.neighbors(i);
    if (nbrs.size() != g.degree(i)) {
      return "degree of node " + std::to_string(i) + " disagrees with its row";
    }
    degree_sum += nbrs.size();
    for (std::size_t k = 0; k < nbrs.size(); ++k) {
      const NodeId j = nbrs[k];
      if (j >= n) return "neighbor out of range at node " + std::to_string(i);
      if (j == i) return "self-loop at node " + std::to_string(i);
      if (k > 0 && nbrs[k - 1] >= j) {
        return "row " + std::to_string(i) + " not strictly ascending";
      }
      auto back = g.neighbors(j);
      if (!std::binary_search(back.begin(), back.end(), i)) {
        return "edge " + std::to_string(i) + "-" + std::to_string(j) +
               " is not symmetric";
      }
    }
  }
  if (degree_sum != 2 * g.num_edges()) return "degree sum is not 2m";
  return std::nullopt;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Splits on spaces, tabs and commas.
std::vector<std::string_view> tokenize(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(" \t\r,", pos);
    if (start == std::string_view::npos) break;
    auto end = s.find_first_of(" \t\r,", start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(start, end - start));
    pos = end;
  }
  return out;
}

std::optional<std::int64_t> parse_int(std::string_view token) {
  std::int64_t value = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

}  // namespace

Graph load_edge_list(const std::string& path, const EdgeListOptions& options) {
  if (options.index_base != 0 && options.index_base != 1) {
    throw DomainError("index base must be 0 or 1");
  }
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open edge list '" + path + "'");

  std::vector<std::pair<std::int64_t, std::int64_t>> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    const auto tokens = tokenize(view);
    if (tokens.size() < 2 || (options.strict && tokens.size() != 2)) {
      if (!options.strict) continue;
      throw ParseError("expected two node ids, found " + std::to_string(tokens.size()) +
                           " tokens",
                       line_no);
    }
    const auto u = parse_int(tokens[0]);
    const auto v = parse_int(tokens[1]);
    if (!u || !v) {
      if (!options.strict) continue;
      throw ParseError("node id is not an integer", line_no);
    }
    if (*u < 0 || *v < 0) throw ParseError("negative node id", line_no);
    if (*u < options.index_base || *v < options.index_base) {
      throw ParseError("node id below index base " + std::to_string(options.index_base),
                       line_no);
    }
    raw.emplace_back(*u, *v);
  }

  std::vector<std::int64_t> ids;
  ids.reserve(raw.size() * 2);
  for (const auto& [u, v] : raw) {
    if (u == v) continue;
    ids.push_back(u);
    ids.push_back(v);
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (ids.empty()) throw DomainError("edge list '" + path + "' contains no edges");

  auto compact = [&ids](std::int64_t id) {
    return static_cast<NodeId>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& [u, v] : raw) {
    if (u == v) continue;
    edges.emplace_back(compact(u), compact(v));
  }
  const std::size_t n = ids.size();
  return Graph::from_edges(n, edges, std::move(ids));
}

void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write edge list '" + path + "'");
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    for (NodeId j : g.neighbors(i)) {
      if (j > i) out << g.original_id(i) << ' ' << g.original_id(j) << '\n';
    }
  }
  if (!out) throw DomainError("write failed for '" + path + "'");
}

ComponentMap label_components(const Graph& g) {
  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  const std::size_t n = g.num_nodes();
  ComponentMap map;
  map.component_id.assign(n, kUnset);
  std::vector<NodeId> queue;
  queue.reserve(n);
  for (NodeId start = 0; start < n; ++start) {
    if (map.component_id[start] != kUnset) continue;
    const auto label = static_cast<std::uint32_t>(map.sizes.size());
    queue.clear();
    queue.push_back(start);
    map.component_id[start] = label;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (NodeId j : g.neighbors(queue[head])) {
        if (map.component_id[j] == kUnset) {
          map.component_id[j] = label;
          queue.push_back(j);
        }
      }
    }
    map.sizes.push_back(queue.size());
  }
  return map;
}

bool is_connected(const Graph& g) {
  return g.num_nodes() <= 1 || label_components(g).sizes.size() == 1;
}

std::pair<Graph, ComponentMap> largest_connected_component(const Graph& g) {
  ComponentMap map = label_components(g);
  const std::size_t n = g.num_nodes();
  map.old_to_new.assign(n, -1);
  if (n == 0) return {g, std::move(map)};

  // Ties go to the component with the smallest member id.
  const auto best = std::max_element(map.sizes.begin(), map.sizes.end());
  map.selected = static_cast<std::uint32_t>(best - map.sizes.begin());

  map.kept.reserve(*best);
  for (NodeId i = 0; i < n; ++i) {
    if (map.component_id[i] == map.selected) {
      map.old_to_new[i] = static_cast<std::int64_t>(map.kept.size());
      map.kept.push_back(i);
    }
  }
  if (map.kept.size() == n) return {g, std::move(map)};

  std::vector<Edge> edges;
  std::vector<std::int64_t> ids;
  ids.reserve(map.kept.size());
  for (NodeId old_i : map.kept) {
    ids.push_back(g.original_id(old_i));
    const auto new_i = static_cast<NodeId>(map.old_to_new[old_i]);
    for (NodeId old_j : g.neighbors(old_i)) {
      if (old_j > old_i) edges.emplace_back(new_i, static_cast<NodeId>(map.old_to_new[old_j]));
    }
  }
  Graph sub = Graph::from_edges(map.kept.size(), edges, std::move(ids));
  return {std::move(sub), std::move(map)};
}

}  // namespace rfa

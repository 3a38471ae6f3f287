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
#include <vector>

#include "rfa/graph.hpp"

namespace rfa {

// A generated graph together with one ground-truth class per node.
struct LabeledGraph {
  Graph graph;
  std::vector<int> labels;
};

// Two n-cliques joined by a path of c intermediate nodes.
// Layout: clique one is 0..n-1 with gateway n-1, the path is n..n+c-1 and
// clique two is n+c..2n+c-1 with gateway n+c.
Graph gen_barbell(int clique_size, int path_length);

// G(n, p) with p = avg_degree / (n - 1), sampled by geometric skipping over
// the n(n-1)/2 candidate pairs in O(n + m) expected time. May be disconnected.
Graph gen_erdos_renyi(std::size_t n, double avg_degree, std::uint64_t seed);

// Planted partition: nodes of block b are contiguous, pairs inside a block are
// joined with probability p_in, pairs across blocks with p_out. Labels are the
// block indices.
LabeledGraph gen_sbm(const std::vector<std::size_t>& block_sizes, double p_in,
                     double p_out, std::uint64_t seed);

// `num_stars` hubs on a ring, each with `leaves_per_star` pendant leaves.
// Hub s is node s; its leaves follow all hubs. Labels: hub 0, leaf 1.
LabeledGraph gen_role_ring(int num_stars, int leaves_per_star);

}  // namespace rfa

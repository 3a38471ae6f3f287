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

#include "rfa/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rfa/error.hpp"

namespace rfa {
namespace {

// Draws the gap to the next success of a Bernoulli(p) sequence, i.e. the
// number of failures before it. Requires 0 < p.
class GeometricSkipper {
 public:
  GeometricSkipper(double p, std::mt19937_64& rng)
      : always_(p >= 1.0), log_q_(std::log1p(-p)), rng_(rng) {}

  std::uint64_t next() {
    if (always_) return 0;
    const double r = uniform_(rng_);
    const double skip = std::floor(std::log1p(-r) / log_q_);
    if (skip >= 9.0e18) return std::uint64_t{1} << 62;
    return static_cast<std::uint64_t>(skip);
  }

 private:
  bool always_;
  double log_q_;
  std::mt19937_64& rng_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

// Emits every pair (v, w), w < v < count, independently with probability p,
// offset by `base`. Walks the lower triangle row by row.
template <typename Emit>
void sample_triangle(std::uint64_t count, double p, std::uint64_t base,
                     std::mt19937_64& rng, Emit emit) {
  if (p <= 0.0 || count < 2) return;
  GeometricSkipper skipper(p, rng);
  std::uint64_t v = 1;
  std::uint64_t w = 0;
  bool first = true;
  while (v < count) {
    const std::uint64_t step = skipper.next() + (first ? 0 : 1);
    first = false;
    w += step;
    while (w >= v && v < count) {
      w -= v;
      ++v;
    }
    if (v < count) emit(static_cast<NodeId>(base + v), static_cast<NodeId>(base + w));
  }
}

// Emits every pair (row_base + r, col_base + c) of a rows x cols rectangle
// independently with probability p.
template <typename Emit>
void sample_rectangle(std::uint64_t rows, std::uint64_t cols, double p,
                      std::uint64_t row_base, std::uint64_t col_base,
                      std::mt19937_64& rng, Emit emit) {
  if (p <= 0.0 || rows == 0 || cols == 0) return;
  GeometricSkipper skipper(p, rng);
  const std::uint64_t total = rows * cols;
  std::uint64_t k = skipper.next();
  while (k < total) {
    emit(static_cast<NodeId>(row_base + k / cols), static_cast<NodeId>(col_base + k % cols));
    const std::uint64_t step = skipper.next() + 1;
    if (step >= total - k) break;
    k += step;
  }
}

}  // namespace

Graph gen_barbell(int clique_size, int path_length) {
  if (clique_size < 3) throw DomainError("barbell clique size must be at least 3");
  if (path_length < 1) throw DomainError("barbell path length must be at least 1");
  const auto n = static_cast<NodeId>(clique_size);
  const auto c = static_cast<NodeId>(path_length);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) + c + 1);
  for (NodeId base : {NodeId{0}, n + c}) {
    for (NodeId i = 0; i < n; ++i) {
      for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(base + i, base + j);
    }
  }
  // Gateway n-1, path n..n+c-1, gateway n+c.
  for (NodeId k = n - 1; k < n + c; ++k) edges.emplace_back(k, k + 1);
  return Graph::from_edges(2 * n + c, edges);
}

Graph gen_erdos_renyi(std::size_t n, double avg_degree, std::uint64_t seed) {
  if (n < 2) throw DomainError("Erdos-Renyi graph needs at least 2 nodes");
  const double p = avg_degree / static_cast<double>(n - 1);
  if (!(avg_degree > 0.0) || !(p <= 1.0)) {
    throw DomainError("average degree must lie in (0, n-1]");
  }
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(avg_degree * static_cast<double>(n) / 2.0 * 1.05) + 16);
  sample_triangle(n, p, 0, rng, [&edges](NodeId v, NodeId w) { edges.emplace_back(v, w); });
  return Graph::from_edges(n, edges);
}

LabeledGraph gen_sbm(const std::vector<std::size_t>& block_sizes, double p_in,
                     double p_out, std::uint64_t seed) {
  if (block_sizes.empty()) throw DomainError("SBM needs at least one block");
  if (!(p_in >= 0.0 && p_in <= 1.0) || !(p_out >= 0.0 && p_out <= 1.0)) {
    throw DomainError("SBM probabilities must lie in [0, 1]");
  }
  std::vector<std::uint64_t> starts;
  std::uint64_t n = 0;
  for (std::size_t size : block_sizes) {
    if (size < 1) throw DomainError("SBM block sizes must be positive");
    starts.push_back(n);
    n += size;
  }

  LabeledGraph out;
  out.labels.reserve(n);
  for (std::size_t b = 0; b < block_sizes.size(); ++b) {
    out.labels.insert(out.labels.end(), block_sizes[b], static_cast<int>(b));
  }

  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  auto emit = [&edges](NodeId u, NodeId v) { edges.emplace_back(u, v); };
  for (std::size_t a = 0; a < block_sizes.size(); ++a) {
    sample_triangle(block_sizes[a], p_in, starts[a], rng, emit);
    for (std::size_t b = a + 1; b < block_sizes.size(); ++b) {
      sample_rectangle(block_sizes[a], block_sizes[b], p_out, starts[a], starts[b], rng, emit);
    }
  }
  out.graph = Graph::from_edges(n, edges);
  return out;
}

LabeledGraph gen_role_ring(int num_stars, int leaves_per_star) {
  if (num_stars < 3) throw DomainError("role ring needs at least 3 stars");
  if (leaves_per_star < 1) throw DomainError("role ring needs at least 1 leaf per star");
  const auto hubs = static_cast<NodeId>(num_stars);
  const auto leaves = static_cast<NodeId>(leaves_per_star);
  const std::size_t n = hubs + static_cast<std::size_t>(hubs) * leaves;

  std::vector<Edge> edges;
  edges.reserve(n);
  for (NodeId s = 0; s < hubs; ++s) {
    edges.emplace_back(s, (s + 1) % hubs);
    for (NodeId l = 0; l < leaves; ++l) edges.emplace_back(s, hubs + s * leaves + l);
  }
  LabeledGraph out;
  out.graph = Graph::from_edges(n, edges);
  out.labels.assign(n, 1);
  std::fill(out.labels.begin(), out.labels.begin() + hubs, 0);
  return out;
}

}  // namespace rfa

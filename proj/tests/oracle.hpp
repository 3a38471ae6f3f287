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

// Test-only reference computations. Everything here works from dense
// matrices or raw edge lists and shares no code path with the library's
// sparse operator, spectrum helpers or component labeling.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "rfa/graph.hpp"
#include "rfa/matrix.hpp"
#include "rfa/propagator.hpp"

namespace rfa::oracle {

inline Eigen::MatrixXd dense_adjacency(const std::vector<Edge>& edges, std::size_t n) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (const auto& [u, v] : edges) {
    if (u == v) continue;
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  return a;
}

inline std::vector<Edge> edges_of(const Graph& g) {
  std::vector<Edge> out;
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    for (NodeId j : g.neighbors(i)) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

// Eigendecomposition of I - D_tau^{-1/2} A D_tau^{-1/2} formed by dense
// matrix products.
struct DenseEigen {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

inline DenseEigen dense_eigen(const Eigen::MatrixXd& adjacency, double tau) {
  const Eigen::VectorXd deg = adjacency.rowwise().sum();
  const Eigen::VectorXd inv_sqrt = (deg.array() + tau).rsqrt().matrix();
  const Eigen::MatrixXd s = inv_sqrt.asDiagonal();
  const auto n = adjacency.rows();
  const Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(n, n) - s * adjacency * s;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(lap);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

// U diag(g(lambda)^power) U^T.
inline Eigen::MatrixXd spectral_filter(const DenseEigen& e, const FilterConfig& cfg, int power) {
  Eigen::VectorXd response(e.values.size());
  for (Eigen::Index r = 0; r < e.values.size(); ++r) {
    response(r) = std::pow((cfg.delta + cfg.alpha) - cfg.alpha * e.values(r), power);
  }
  return e.vectors * response.asDiagonal() * e.vectors.transpose();
}

inline Eigen::MatrixXd to_eigen(const EmbeddingMatrix& x) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(x.rows()), static_cast<Eigen::Index>(x.cols()));
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t j = 0; j < x.cols(); ++j) {
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x(i, j);
    }
  }
  return out;
}

inline double max_abs_diff(const EmbeddingMatrix& a, const Eigen::MatrixXd& b) {
  return (to_eigen(a) - b).cwiseAbs().maxCoeff();
}

// Random connected graph: a random recursive tree plus independent extra
// edges with probability extra_p.
inline std::vector<Edge> random_connected_edges(std::size_t n, double extra_p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (NodeId v = 1; v < n; ++v) {
    std::uniform_int_distribution<NodeId> parent(0, v - 1);
    edges.emplace_back(parent(rng), v);
  }
  std::bernoulli_distribution coin(extra_p);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 2; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return edges;
}

// Union-find component sizes, indexed by root.
inline std::vector<std::size_t> union_find_component_of(const std::vector<Edge>& edges,
                                                        std::size_t n) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [u, v] : edges) parent[find(u)] = find(v);
  std::vector<std::size_t> root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = find(i);
  return root;
}

inline std::size_t largest_component_size(const std::vector<Edge>& edges, std::size_t n) {
  const auto root = union_find_component_of(edges, n);
  std::vector<std::size_t> sizes(n, 0);
  for (auto r : root) ++sizes[r];
  return *std::max_element(sizes.begin(), sizes.end());
}

inline std::size_t component_count(const std::vector<Edge>& edges, std::size_t n) {
  const auto root = union_find_component_of(edges, n);
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += root[i] == i;
  return count;
}

inline std::filesystem::path temp_path(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "rfa_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace rfa::oracle

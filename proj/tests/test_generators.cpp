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

#include <doctest.h>

#include <algorithm>
#include <map>

#include "oracle.hpp"
#include "rfa/error.hpp"
#include "rfa/generators.hpp"

using namespace rfa;

namespace {

double mean_degree(const Graph& g) {
  return 2.0 * static_cast<double>(g.num_edges()) / static_cast<double>(g.num_nodes());
}

}  // namespace

TEST_CASE("gen_barbell sizes and layout") {
  const Graph g = gen_barbell(6, 3);
  CHECK(g.num_nodes() == 15);
  CHECK(g.num_edges() == 34);
  CHECK_FALSE(find_invariant_violation(g));
  CHECK(is_connected(g));

  const Graph small = gen_barbell(3, 1);
  CHECK(small.num_nodes() == 7);
  CHECK(small.num_edges() == 8);

  // Gateways at n-1 and n+c; path nodes in between.
  CHECK(g.degree(5) == 6);
  CHECK(g.degree(9) == 6);
  for (NodeId k : {6u, 7u, 8u}) CHECK(g.degree(k) == 2);
  const auto n5 = g.neighbors(5);
  CHECK(std::find(n5.begin(), n5.end(), 6u) != n5.end());
}

TEST_CASE("gen_barbell degree multiset matches brute-force count") {
  // Enumerate every node pair of B(6,3) by the construction rule.
  auto adjacent = [](int i, int j) {
    const bool c1 = i < 6 && j < 6;
    const bool c2 = i >= 9 && j >= 9;
    const bool chain = (std::min(i, j) >= 5 && std::max(i, j) <= 9 && std::abs(i - j) == 1);
    return i != j && (c1 || c2 || chain);
  };
  std::map<int, int> expected;
  for (int i = 0; i < 15; ++i) {
    int d = 0;
    for (int j = 0; j < 15; ++j) d += adjacent(i, j);
    ++expected[d];
  }
  CHECK(expected == std::map<int, int>{{2, 3}, {5, 10}, {6, 2}});

  const Graph g = gen_barbell(6, 3);
  std::map<int, int> actual;
  for (auto d : g.degrees()) ++actual[static_cast<int>(d)];
  CHECK(actual == expected);
}

TEST_CASE("gen_barbell rejects bad parameters") {
  CHECK_THROWS_AS(gen_barbell(2, 3), DomainError);
  CHECK_THROWS_AS(gen_barbell(6, 0), DomainError);
}

TEST_CASE("gen_erdos_renyi mean degree concentrates around the target") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Graph g = gen_erdos_renyi(10000, 10.0, seed);
    CHECK_FALSE(find_invariant_violation(g));
    const double mean = mean_degree(g);
    CHECK(mean >= 9.5);
    CHECK(mean <= 10.5);
  }
}

TEST_CASE("gen_erdos_renyi is deterministic per seed") {
  const Graph a = gen_erdos_renyi(2000, 6.0, 99);
  const Graph b = gen_erdos_renyi(2000, 6.0, 99);
  const Graph c = gen_erdos_renyi(2000, 6.0, 100);
  CHECK(a.adjacency() == b.adjacency());
  CHECK(a.offsets() == b.offsets());
  CHECK(a.adjacency() != c.adjacency());
}

TEST_CASE("gen_erdos_renyi boundary p = 1 and invalid inputs") {
  const Graph g = gen_erdos_renyi(2, 1.0, 3);
  CHECK(g.num_edges() == 1);
  const Graph k5 = gen_erdos_renyi(5, 4.0, 3);
  CHECK(k5.num_edges() == 10);
  CHECK_THROWS_AS(gen_erdos_renyi(1, 1.0, 0), DomainError);
  CHECK_THROWS_AS(gen_erdos_renyi(10, 0.0, 0), DomainError);
  CHECK_THROWS_AS(gen_erdos_renyi(10, 9.5, 0), DomainError);
}

TEST_CASE("gen_erdos_renyi pair frequencies are uniform") {
  // Every one of the 45 pairs of a 10-node graph should appear with p = 0.3.
  std::vector<int> hits(100, 0);
  const int reps = 4000;
  for (int r = 0; r < reps; ++r) {
    const Graph g = gen_erdos_renyi(10, 0.3 * 9, static_cast<std::uint64_t>(r));
    for (NodeId i = 0; i < 10; ++i) {
      for (NodeId j : g.neighbors(i)) hits[i * 10 + j] += 1;
    }
  }
  for (int i = 0; i < 10; ++i) {
    for (int j = i + 1; j < 10; ++j) {
      const double freq = hits[static_cast<std::size_t>(i * 10 + j)] / static_cast<double>(reps);
      // 5 sigma for Binomial(4000, 0.3) frequencies is ~0.036.
      CHECK(std::abs(freq - 0.3) < 0.04);
    }
  }
}

TEST_CASE("gen_sbm within-block density") {
  double within_edges = 0.0;
  double within_pairs = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto sbm = gen_sbm({100, 100, 100}, 0.1, 0.01, seed);
    CHECK(sbm.graph.num_nodes() == 300);
    CHECK_FALSE(find_invariant_violation(sbm.graph));
    double edges = 0.0;
    for (NodeId i = 0; i < 300; ++i) {
      for (NodeId j : sbm.graph.neighbors(i)) {
        if (i < j && sbm.labels[i] == sbm.labels[j]) edges += 1.0;
      }
    }
    const double density = edges / (3 * 100 * 99 / 2.0);
    CHECK(density == doctest::Approx(0.1).epsilon(0.2));
    within_edges += edges;
    within_pairs += 3 * 100 * 99 / 2.0;
  }
  CHECK(std::abs(within_edges / within_pairs - 0.1) <= 0.02);
}

TEST_CASE("gen_sbm with p_in = p_out matches G(n,p) mean degree") {
  double sbm_mean = 0.0;
  double er_mean = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    sbm_mean += mean_degree(gen_sbm({200, 200, 200}, 0.02, 0.02, seed).graph);
    er_mean += mean_degree(gen_erdos_renyi(600, 0.02 * 599, seed + 100));
  }
  sbm_mean /= 5;
  er_mean /= 5;
  // Mean degree ~ 11.98, sd of a 5-sample mean ~ 0.06.
  CHECK(std::abs(sbm_mean - er_mean) < 0.4);
  CHECK(std::abs(sbm_mean - 0.02 * 599) < 0.3);
}

TEST_CASE("gen_sbm with p_out = 0 splits into the blocks") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto sbm = gen_sbm({150, 150}, 0.2, 0.0, seed);
    const auto edges = oracle::edges_of(sbm.graph);
    CHECK(oracle::component_count(edges, 300) == 2);
    for (const auto& [u, v] : edges) CHECK(sbm.labels[u] == sbm.labels[v]);
  }
}

TEST_CASE("gen_sbm determinism and errors") {
  const auto a = gen_sbm({30, 40}, 0.3, 0.05, 8);
  const auto b = gen_sbm({30, 40}, 0.3, 0.05, 8);
  CHECK(a.graph.adjacency() == b.graph.adjacency());
  CHECK(a.labels == b.labels);
  CHECK_THROWS_AS(gen_sbm({}, 0.1, 0.1, 0), DomainError);
  CHECK_THROWS_AS(gen_sbm({10}, 1.5, 0.1, 0), DomainError);
  CHECK_THROWS_AS(gen_sbm({10, 0}, 0.1, 0.1, 0), DomainError);
}

TEST_CASE("gen_role_ring structure") {
  const auto ring = gen_role_ring(10, 5);
  CHECK(ring.graph.num_nodes() == 60);
  CHECK(ring.graph.num_edges() == 60);
  CHECK(is_connected(ring.graph));
  CHECK_FALSE(find_invariant_violation(ring.graph));
  CHECK(std::count(ring.labels.begin(), ring.labels.end(), 0) == 10);
  CHECK(std::count(ring.labels.begin(), ring.labels.end(), 1) == 50);
  for (NodeId i = 0; i < 60; ++i) {
    CHECK(ring.graph.degree(i) == (ring.labels[i] == 0 ? 7u : 1u));
  }
  CHECK_THROWS_AS(gen_role_ring(2, 5), DomainError);
  CHECK_THROWS_AS(gen_role_ring(5, 0), DomainError);
}

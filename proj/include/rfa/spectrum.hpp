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

// Dense spectral diagnostics for small graphs. Nothing in the embedding
// pipeline depends on this file; it exists to check the sparse operator
// against its eigenbasis definition and to inspect spectra.

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <vector>

#include "rfa/graph.hpp"

namespace rfa {

inline constexpr std::size_t kDenseSpectrumCap = 2000;

struct Spectrum {
  // Ascending eigenvalues of L_tau.
  Eigen::VectorXd eigenvalues;
  // Column r is the unit eigenvector of eigenvalues[r]. Each column's
  // largest-magnitude entry is positive (first such entry on ties).
  Eigen::MatrixXd eigenvectors;
  double tau = 0.0;

  std::size_t size() const { return static_cast<std::size_t>(eigenvalues.size()); }
};

// Dense L_tau = I - D_tau^{-1/2} A D_tau^{-1/2}. Throws DomainError for an
// isolated node when tau == 0.
Eigen::MatrixXd regularized_laplacian(const Graph& g, double tau);

// Full symmetric eigendecomposition of L_tau. Throws DomainError when the graph
// has more than `max_nodes` nodes.
Spectrum dense_spectrum(const Graph& g, double tau, std::size_t max_nodes = kDenseSpectrumCap);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double radius() const { return (hi - lo) / 2.0; }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

// Disc bound [1 - r, 1 + r], r = max_i deg_i / (deg_i + tau), which contains
// every eigenvalue of L_tau.
Interval gershgorin_interval(const Graph& g, double tau);

// max_r |lambda_r - 1|.
double spectrum_spread(const Spectrum& spec);

// Number of eigenvalues within a relative gap of `rel_gap` of eigenvalue r
// (scale max(1, |lambda_r|)), including r itself.
std::size_t eigenvalue_multiplicity(const Spectrum& spec, std::size_t r, double rel_gap = 1e-8);

// Per-node residual of the neighborhood form of L u = lambda u:
//   | sum_{j in N(i)} [1/deg_i - (deg_i deg_j)^{-1/2} u_j / u_i] - lambda |.
// Entries are empty for nodes with |u_i| below `min_magnitude`. Requires a
// spectrum computed with tau == 0.
std::vector<std::optional<double>> laplacian_identity_residual(const Spectrum& spec,
                                                               const Graph& g, std::size_t r,
                                                               double min_magnitude = 1e-8);

}  // namespace rfa

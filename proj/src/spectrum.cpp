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

#include "rfa/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rfa/error.hpp"

namespace rfa {

Eigen::MatrixXd regularized_laplacian(const Graph& g, double tau) {
  if (!(tau >= 0.0)) throw DomainError("tau must be >= 0");
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  Eigen::VectorXd s(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double corrected = g.degree(static_cast<NodeId>(i)) + tau;
    if (corrected <= 0.0) {
      throw DomainError("node " + std::to_string(i) + " is isolated and tau = 0");
    }
    s(i) = 1.0 / std::sqrt(corrected);
  }
  Eigen::MatrixXd lap = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (NodeId j : g.neighbors(static_cast<NodeId>(i))) lap(i, j) -= s(i) * s(j);
  }
  return lap;
}

Spectrum dense_spectrum(const Graph& g, double tau, std::size_t max_nodes) {
  if (g.num_nodes() > max_nodes) {
    throw DomainError("dense spectrum is limited to " + std::to_string(max_nodes) +
                      " nodes (graph has " + std::to_string(g.num_nodes()) +
                      "); use the sparse operations or a subsample");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(regularized_laplacian(g, tau));
  if (solver.info() != Eigen::Success) throw NumericError("eigensolver did not converge");

  Spectrum spec;
  spec.tau = tau;
  spec.eigenvalues = solver.eigenvalues();
  spec.eigenvectors = solver.eigenvectors();
  for (Eigen::Index r = 0; r < spec.eigenvectors.cols(); ++r) {
    auto col = spec.eigenvectors.col(r);
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      if (std::abs(col(i)) > best) {
        best = std::abs(col(i));
        arg = i;
      }
    }
    if (col(arg) < 0.0) col = -col;
  }
  return spec;
}

Interval gershgorin_interval(const Graph& g, double tau) {
  // L_tau is similar to I - D_tau^{-1} A, whose i-th disc has radius
  // deg_i / (deg_i + tau) around 1.
  double radius = 0.0;
  for (std::uint32_t deg : g.degrees()) {
    if (deg == 0) continue;
    radius = std::max(radius, deg / (deg + tau));
  }
  return {1.0 - radius, 1.0 + radius};
}

double spectrum_spread(const Spectrum& spec) {
  double spread = 0.0;
  for (Eigen::Index r = 0; r < spec.eigenvalues.size(); ++r) {
    spread = std::max(spread, std::abs(spec.eigenvalues(r) - 1.0));
  }
  return spread;
}

std::size_t eigenvalue_multiplicity(const Spectrum& spec, std::size_t r, double rel_gap) {
  if (r >= spec.size()) throw DomainError("eigen index out of range");
  const double lambda = spec.eigenvalues(static_cast<Eigen::Index>(r));
  const double tol = rel_gap * std::max(1.0, std::abs(lambda));
  std::size_t count = 0;
  for (Eigen::Index s = 0; s < spec.eigenvalues.size(); ++s) {
    if (std::abs(spec.eigenvalues(s) - lambda) <= tol) ++count;
  }
  return count;
}

std::vector<std::optional<double>> laplacian_identity_residual(const Spectrum& spec,
                                                               const Graph& g, std::size_t r,
                                                               double min_magnitude) {
  if (r >= spec.size()) throw DomainError("eigen index out of range");
  if (spec.size() != g.num_nodes()) throw DomainError("spectrum does not match graph");
  if (spec.tau != 0.0) throw DomainError("identity residual requires a tau = 0 spectrum");

  const auto col = spec.eigenvectors.col(static_cast<Eigen::Index>(r));
  const double lambda = spec.eigenvalues(static_cast<Eigen::Index>(r));
  std::vector<std::optional<double>> out(g.num_nodes());
  for (NodeId i = 0; i < g.num_nodes(); ++i) {
    const double ui = col(i);
    if (std::abs(ui) < min_magnitude || g.degree(i) == 0) continue;
    const double deg_i = g.degree(i);
    double sum = 0.0;
    for (NodeId j : g.neighbors(i)) {
      sum += 1.0 / deg_i - col(j) / (std::sqrt(deg_i * g.degree(j)) * ui);
    }
    out[i] = std::abs(sum - lambda);
  }
  return out;
}

}  // namespace rfa

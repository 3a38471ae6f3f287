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

#include <vector>

#include "rfa/graph.hpp"
#include "rfa/matrix.hpp"

namespace rfa {

// Affine spectral kernel g(lambda) = (delta + alpha) - alpha * lambda applied
// on the spectrum of the degree-corrected Laplacian
// L_tau = I - (D + tau I)^{-1/2} A (D + tau I)^{-1/2}.
//
// alpha > 0 is a low-pass filter, alpha < 0 a high-pass filter.
struct FilterConfig {
  double delta = 0.1;
  double alpha = 1.0;
  double tau = 0.0;

  static FilterConfig low_pass(double tau) { return {0.1, 1.0, tau}; }
  static FilterConfig high_pass(double tau) { return {0.1, -1.0, tau}; }

  // Throws DomainError unless delta in [0,1], alpha in [-1,1] \ {0}, tau >= 0.
  void validate() const;
};

double kernel_response(const FilterConfig& cfg, double lambda);

// Sets the worker count for row-parallel kernels; 0 restores the runtime
// default. Results do not depend on this value.
void set_num_threads(int threads);
int num_threads();

// Sparse form of U g(Lambda) U^T:  x -> delta x + alpha S A S x  with
// S = diag((deg_i + tau)^{-1/2}). Holds a reference to the graph, which must
// outlive the propagator.
class Propagator {
 public:
  Propagator(const Graph& g, const FilterConfig& cfg);

  const Graph& graph() const { return *graph_; }
  const FilterConfig& filter() const { return cfg_; }
  const std::vector<double>& scale() const { return scale_; }

  EmbeddingMatrix apply(const EmbeddingMatrix& x) const;

  // Writes the result into `out` (resized as needed). `out` must not alias x.
  void apply_into(const EmbeddingMatrix& x, EmbeddingMatrix& out) const;

 private:
  const Graph* graph_;
  FilterConfig cfg_;
  std::vector<double> scale_;
};

inline Propagator build_propagator(const Graph& g, const FilterConfig& cfg) {
  return Propagator(g, cfg);
}

}  // namespace rfa

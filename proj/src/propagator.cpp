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

#include "rfa/propagator.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "rfa/error.hpp"

namespace rfa {

void FilterConfig::validate() const {
  if (!(delta >= 0.0 && delta <= 1.0)) throw DomainError("delta must lie in [0, 1]");
  if (!(alpha >= -1.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [-1, 1]");
  if (alpha == 0.0) throw DomainError("alpha must be nonzero");
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw DomainError("tau must be finite and >= 0");
}

double kernel_response(const FilterConfig& cfg, double lambda) {
  return (cfg.delta + cfg.alpha) - cfg.alpha * lambda;
}

namespace {
int g_default_threads = 0;
}

void set_num_threads(int threads) {
  if (g_default_threads == 0) g_default_threads = omp_get_max_threads();
  omp_set_num_threads(threads > 0 ? threads : g_default_threads);
}

int num_threads() { return omp_get_max_threads(); }

Propagator::Propagator(const Graph& g, const FilterConfig& cfg) : graph_(&g), cfg_(cfg) {
  cfg_.validate();
  const std::size_t n = g.num_nodes();
  scale_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double corrected = static_cast<double>(g.degree(static_cast<NodeId>(i))) + cfg_.tau;
    if (corrected <= 0.0) {
      throw DomainError("node " + std::to_string(g.original_id(static_cast<NodeId>(i))) +
                        " is isolated and tau = 0: degree correction required or remove "
                        "isolates");
    }
    scale_[i] = 1.0 / std::sqrt(corrected);
  }
}

EmbeddingMatrix Propagator::apply(const EmbeddingMatrix& x) const {
  EmbeddingMatrix out;
  apply_into(x, out);
  return out;
}

void Propagator::apply_into(const EmbeddingMatrix& x, EmbeddingMatrix& out) const {
  const Graph& g = *graph_;
  const std::size_t n = g.num_nodes();
  if (x.rows() != n) {
    throw DomainError("propagator expects " + std::to_string(n) + " rows, got " +
                      std::to_string(x.rows()));
  }
  const std::size_t d = x.cols();
  if (out.rows() != n || out.cols() != d) out = EmbeddingMatrix(n, d);

  const double delta = cfg_.delta;
  const double alpha = cfg_.alpha;
  const double* s = scale_.data();
  const auto rows = static_cast<std::int64_t>(n);

  // One worker per output row; neighbors summed in ascending order.
#pragma omp parallel for schedule(static)
  for (std::int64_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<NodeId>(ii);
    auto dst = out.row(i);
    std::fill(dst.begin(), dst.end(), 0.0);
    for (NodeId j : g.neighbors(i)) {
      const double w = s[j];
      const auto src = x.row(j);
      for (std::size_t k = 0; k < d; ++k) dst[k] += w * src[k];
    }
    const double self_scale = alpha * s[i];
    const auto self = x.row(i);
    for (std::size_t k = 0; k < d; ++k) dst[k] = delta * self[k] + self_scale * dst[k];
  }
}

}  // namespace rfa

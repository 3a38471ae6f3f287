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

#include "rfa/engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <utility>

#include "rfa/error.hpp"

namespace rfa {

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::kNone: return "none";
    case Activation::kTanh: return "tanh";
    case Activation::kExp: return "exp";
  }
  return "?";
}

std::string_view to_string(Normalization n) {
  switch (n) {
    case Normalization::kNone: return "none";
    case Normalization::kL2Row: return "l2";
    case Normalization::kZScoreCol: return "zscore";
  }
  return "?";
}

Activation parse_activation(std::string_view s) {
  if (s == "none") return Activation::kNone;
  if (s == "tanh") return Activation::kTanh;
  if (s == "exp") return Activation::kExp;
  throw DomainError("unknown activation '" + std::string(s) + "' (expected tanh, exp, none)");
}

Normalization parse_normalization(std::string_view s) {
  if (s == "none") return Normalization::kNone;
  if (s == "l2" || s == "l2_row") return Normalization::kL2Row;
  if (s == "zscore" || s == "zscore_col") return Normalization::kZScoreCol;
  throw DomainError("unknown normalization '" + std::string(s) +
                    "' (expected zscore, l2, none)");
}

void RfaConfig::validate() const {
  if (dim < 1) throw DomainError("embedding dimension must be >= 1");
  if (iters < 0) throw DomainError("iteration count must be >= 0");
  filter.validate();
}

EmbeddingMatrix init_noise(std::size_t n, std::size_t dim, std::uint64_t seed) {
  if (n < 1 || dim < 1) throw DomainError("noise matrix needs n >= 1 and dim >= 1");
  EmbeddingMatrix theta(n, dim);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(static_cast<double>(dim)));
  for (double& v : theta.data()) v = gauss(rng);
  return theta;
}

void activate(EmbeddingMatrix& x, Activation kind) {
  auto data = x.data();
  const auto size = static_cast<std::int64_t>(data.size());
  switch (kind) {
    case Activation::kNone:
      return;
    case Activation::kTanh:
#pragma omp parallel for schedule(static)
      for (std::int64_t k = 0; k < size; ++k) data[k] = std::tanh(data[k]);
      return;
    case Activation::kExp:
#pragma omp parallel for schedule(static)
      for (std::int64_t k = 0; k < size; ++k) data[k] = std::exp(std::min(data[k], kExpSaturation));
      return;
  }
}

namespace {

// Rows per partial-sum block in column reductions; independent of the worker
// count.
constexpr std::size_t kReduceBlock = 1024;

// Column sums of f(x_ij), accumulated per block in row order and then across
// blocks in block order.
template <typename F>
std::vector<double> column_sums(const EmbeddingMatrix& x, F f) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  const std::size_t blocks = (n + kReduceBlock - 1) / kReduceBlock;
  std::vector<double> partial(blocks * d, 0.0);
#pragma omp parallel for schedule(static)
  for (std::int64_t bb = 0; bb < static_cast<std::int64_t>(blocks); ++bb) {
    const auto b = static_cast<std::size_t>(bb);
    double* acc = partial.data() + b * d;
    const std::size_t end = std::min(n, (b + 1) * kReduceBlock);
    for (std::size_t i = b * kReduceBlock; i < end; ++i) {
      const auto row = x.row(i);
      for (std::size_t j = 0; j < d; ++j) acc[j] += f(row[j], j);
    }
  }
  std::vector<double> sums(d, 0.0);
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t j = 0; j < d; ++j) sums[j] += partial[b * d + j];
  }
  return sums;
}

void zscore_columns(EmbeddingMatrix& x) {
  const std::size_t n = x.rows();
  const std::size_t d = x.cols();
  if (n == 0) return;
  const double inv_n = 1.0 / static_cast<double>(n);

  std::vector<double> mean = column_sums(x, [](double v, std::size_t) { return v; });
  for (double& m : mean) m *= inv_n;
  std::vector<double> var = column_sums(x, [&mean](double v, std::size_t j) {
    const double c = v - mean[j];
    return c * c;
  });

  std::vector<double> inv_std(d, 0.0);
  for (std::size_t j = 0; j < d; ++j) {
    const double sd = std::sqrt(var[j] * inv_n);
    // A column that is constant up to rounding has no spread to normalize.
    const bool constant = !(sd > 1e-12 * std::max(1.0, std::abs(mean[j])));
    inv_std[j] = constant ? 0.0 : 1.0 / sd;
  }

#pragma omp parallel for schedule(static)
  for (std::int64_t ii = 0; ii < static_cast<std::int64_t>(n); ++ii) {
    auto row = x.row(static_cast<std::size_t>(ii));
    for (std::size_t j = 0; j < d; ++j) row[j] = (row[j] - mean[j]) * inv_std[j];
  }
}

void l2_rows(EmbeddingMatrix& x) {
  const auto n = static_cast<std::int64_t>(x.rows());
#pragma omp parallel for schedule(static)
  for (std::int64_t ii = 0; ii < n; ++ii) {
    auto row = x.row(static_cast<std::size_t>(ii));
    double sq = 0.0;
    for (double v : row) sq += v * v;
    if (sq == 0.0) continue;
    const double inv = 1.0 / std::sqrt(sq);
    for (double& v : row) v *= inv;
  }
}

bool all_finite(const EmbeddingMatrix& x) {
  const auto data = x.data();
  const auto size = static_cast<std::int64_t>(data.size());
  bool ok = true;
#pragma omp parallel for schedule(static) reduction(&& : ok)
  for (std::int64_t k = 0; k < size; ++k) ok = ok && std::isfinite(data[k]);
  return ok;
}

}  // namespace

void normalize(EmbeddingMatrix& x, Normalization kind) {
  switch (kind) {
    case Normalization::kNone: return;
    case Normalization::kL2Row: l2_rows(x); return;
    case Normalization::kZScoreCol: zscore_columns(x); return;
  }
}

EmbedResult rfa_embed(const Graph& g, const RfaConfig& cfg) {
  cfg.validate();
  const Propagator prop(g, cfg.filter);

  const auto start = std::chrono::steady_clock::now();
  EmbeddingMatrix current = init_noise(g.num_nodes(), cfg.dim, cfg.seed);
  EmbeddingMatrix next(g.num_nodes(), cfg.dim);
  for (int k = 1; k <= cfg.iters; ++k) {
    prop.apply_into(current, next);
    activate(next, cfg.activation);
    normalize(next, cfg.normalization);
    if (!all_finite(next)) {
      throw NumericError("non-finite embedding entries after layer " + std::to_string(k));
    }
    std::swap(current, next);
  }
  const auto stop = std::chrono::steady_clock::now();

  EmbedResult result;
  result.embedding = std::move(current);
  result.loop_seconds = std::chrono::duration<double>(stop - start).count();
  return result;
}

namespace {

struct Preset {
  const char* name;
  std::size_t dim;
  double tau;
  int iters;
  Activation act;
  Normalization norm;
  bool high_pass;
};

constexpr Preset kPresets[] = {
    // Position (community) datasets, low-pass.
    {"ppi", 256, 20, 10, Activation::kTanh, Normalization::kZScoreCol, false},
    {"blogcatalog", 512, 0, 9, Activation::kTanh, Normalization::kZScoreCol, false},
    {"flickr", 512, 1, 7, Activation::kTanh, Normalization::kZScoreCol, false},
    {"youtube", 128, 10, 14, Activation::kTanh, Normalization::kL2Row, false},
    {"orkut", 64, 20, 8, Activation::kTanh, Normalization::kZScoreCol, false},
    // Identity (structural role) datasets, high-pass.
    {"europe", 64, 20, 3, Activation::kExp, Normalization::kZScoreCol, true},
    {"usa", 64, 20, 7, Activation::kExp, Normalization::kNone, true},
    {"reality-call", 128, 20, 2, Activation::kExp, Normalization::kNone, true},
    {"actor", 128, 20, 2, Activation::kExp, Normalization::kNone, true},
    {"film", 256, 10, 12, Activation::kExp, Normalization::kZScoreCol, true},
};

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& p : kPresets) out.emplace_back(p.name);
    return out;
  }();
  return names;
}

RfaConfig preset_config(std::string_view name) {
  for (const auto& p : kPresets) {
    if (name != p.name) continue;
    RfaConfig cfg;
    cfg.dim = p.dim;
    cfg.iters = p.iters;
    cfg.filter = p.high_pass ? FilterConfig::high_pass(p.tau) : FilterConfig::low_pass(p.tau);
    cfg.activation = p.act;
    cfg.normalization = p.norm;
    return cfg;
  }
  std::string valid;
  for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
  throw DomainError("unknown preset '" + std::string(name) + "'; valid presets: " + valid);
}

}  // namespace rfa

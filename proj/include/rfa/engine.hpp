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
#include <string>
#include <string_view>
#include <vector>

#include "rfa/graph.hpp"
#include "rfa/matrix.hpp"
#include "rfa/propagator.hpp"

namespace rfa {

enum class Activation { kNone, kTanh, kExp };
enum class Normalization { kNone, kL2Row, kZScoreCol };

// Inputs to exp() are clamped here; exp(30) ~ 1.07e13.
inline constexpr double kExpSaturation = 30.0;

std::string_view to_string(Activation a);
std::string_view to_string(Normalization n);
Activation parse_activation(std::string_view s);
Normalization parse_normalization(std::string_view s);

struct RfaConfig {
  std::size_t dim = 64;
  int iters = 3;
  FilterConfig filter = FilterConfig::high_pass(20.0);
  Activation activation = Activation::kTanh;
  Normalization normalization = Normalization::kZScoreCol;
  std::uint64_t seed = 0;

  void validate() const;
  bool operator==(const RfaConfig&) const = default;
};

// Theta ~ N(0, 1/dim), drawn row-major from one seeded stream.
EmbeddingMatrix init_noise(std::size_t n, std::size_t dim, std::uint64_t seed);

void activate(EmbeddingMatrix& x, Activation kind);

// l2_row: rows scaled to unit norm, zero rows stay zero.
// zscore_col: columns centered and divided by the population standard
// deviation; constant columns become zero.
void normalize(EmbeddingMatrix& x, Normalization kind);

struct EmbedResult {
  EmbeddingMatrix embedding;
  // Noise generation plus all K layers, excluding graph I/O.
  double loop_seconds = 0.0;
};

// Z(0) = Theta; Z(k) = Norm(act(P Z(k-1))) for k = 1..K. Throws NumericError
// naming the layer if any entry becomes non-finite.
EmbedResult rfa_embed(const Graph& g, const RfaConfig& cfg);

// Recommended settings for the benchmark datasets. Identity datasets (europe,
// usa, reality-call, actor, film) use the high-pass filter; position datasets
// (ppi, blogcatalog, flickr, youtube, orkut) use the low-pass filter.
RfaConfig preset_config(std::string_view name);
const std::vector<std::string>& preset_names();

}  // namespace rfa

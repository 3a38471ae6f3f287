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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rfa/matrix.hpp"

namespace rfa {

struct LabeledEmbedding {
  // External node id of each row.
  std::vector<std::int64_t> ids;
  EmbeddingMatrix matrix;
};

// CSV: header `node_id,v0,...,v{d-1}` then one row per node. Values use the
// shortest representation that parses back to the same double.
void write_embedding_csv(const std::string& path, const EmbeddingMatrix& z,
                         std::span<const std::int64_t> ids);
LabeledEmbedding read_embedding_csv(const std::string& path);

// Binary: little-endian u64 n, u64 d, then n*d float64 values row-major.
// Row ids are implicit (0..n-1).
void write_embedding_bin(const std::string& path, const EmbeddingMatrix& z);
EmbeddingMatrix read_embedding_bin(const std::string& path);

}  // namespace rfa

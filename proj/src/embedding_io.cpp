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

#include "rfa/embedding_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <string_view>

#include "rfa/error.hpp"

namespace rfa {
namespace {

static_assert(std::endian::native == std::endian::little,
              "binary embedding format assumes a little-endian host");

}  // namespace

void write_embedding_csv(const std::string& path, const EmbeddingMatrix& z,
                         std::span<const std::int64_t> ids) {
  if (ids.size() != z.rows()) throw DomainError("id count does not match embedding rows");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write '" + path + "'");

  std::string line = "node_id";
  for (std::size_t j = 0; j < z.cols(); ++j) line += ",v" + std::to_string(j);
  out << line << '\n';

  std::array<char, 64> buf{};
  for (std::size_t i = 0; i < z.rows(); ++i) {
    line = std::to_string(ids[i]);
    for (double v : z.row(i)) {
      auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
      line += ',';
      line.append(buf.data(), ptr);
    }
    out << line << '\n';
  }
  if (!out) throw DomainError("write failed for '" + path + "'");
}

LabeledEmbedding read_embedding_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open embedding file '" + path + "'");

  std::vector<double> values;
  LabeledEmbedding out;
  std::size_t cols = 0;
  bool have_cols = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line_no == 1 && line.rfind("node_id", 0) == 0) continue;

    std::string_view rest(line);
    std::size_t count = 0;
    bool first = true;
    while (true) {
      const auto comma = rest.find(',');
      const auto field = rest.substr(0, comma);
      const char* b = field.data();
      const char* e = field.data() + field.size();
      if (first) {
        std::int64_t id = 0;
        auto [ptr, ec] = std::from_chars(b, e, id);
        if (ec != std::errc() || ptr != e) throw ParseError("bad node id", line_no);
        out.ids.push_back(id);
        first = false;
      } else {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(b, e, v);
        if (ec != std::errc() || ptr != e) throw ParseError("bad embedding value", line_no);
        values.push_back(v);
        ++count;
      }
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!have_cols) {
      cols = count;
      have_cols = true;
    } else if (count != cols) {
      throw ParseError("row has " + std::to_string(count) + " values, expected " +
                           std::to_string(cols),
                       line_no);
    }
  }
  if (out.ids.empty() || cols == 0) throw ParseError("embedding file '" + path + "' is empty");

  out.matrix = EmbeddingMatrix(out.ids.size(), cols);
  std::copy(values.begin(), values.end(), out.matrix.data().begin());
  return out;
}

void write_embedding_bin(const std::string& path, const EmbeddingMatrix& z) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write '" + path + "'");
  const std::uint64_t header[2] = {z.rows(), z.cols()};
  out.write(reinterpret_cast<const char*>(header), sizeof(header));
  const auto data = z.data();
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size_bytes()));
  if (!out) throw DomainError("write failed for '" + path + "'");
}

EmbeddingMatrix read_embedding_bin(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open embedding file '" + path + "'");
  std::uint64_t header[2] = {0, 0};
  in.read(reinterpret_cast<char*>(header), sizeof(header));
  if (!in) throw ParseError("truncated binary embedding header");
  if (header[1] != 0 && header[0] > (std::uint64_t{1} << 40) / header[1]) {
    throw ParseError("binary embedding header is implausibly large");
  }
  EmbeddingMatrix z(header[0], header[1]);
  auto data = z.data();
  in.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size_bytes()));
  if (!in) throw ParseError("truncated binary embedding payload");
  return z;
}

}  // namespace rfa

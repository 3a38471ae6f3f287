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


#include "manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>

#include "commands.hpp"
#include "rfa/error.hpp"

namespace rfa::cli {

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "' for hashing");

  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 initialization failed");
  }
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    if (in.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);

  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    char pair[3];
    std::snprintf(pair, sizeof(pair), "%02x", digest[i]);
    hex += pair;
  }
  return hex;
}

RunManifest::RunManifest(const std::string& command) {
  doc_["command"] = command;
  doc_["version"] = kVersion;
  doc_["config"] = nlohmann::ordered_json::object();
  doc_["seed"] = nullptr;
  doc_["inputs"] = nlohmann::ordered_json::array();
  doc_["outputs"] = nlohmann::ordered_json::array();
  doc_["timings"] = nlohmann::ordered_json::object();
}

void RunManifest::add_input(const std::string& role, const std::string& path) {
  doc_["inputs"].push_back({{"role", role}, {"path", path}, {"sha256", sha256_file(path)}});
}

void RunManifest::add_output(const std::string& role, const std::string& path) {
  doc_["outputs"].push_back({{"role", role}, {"path", path}, {"sha256", sha256_file(path)}});
}

void RunManifest::write(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write manifest '" + path + "'");
  out << doc_.dump(2) << '\n';
}

nlohmann::ordered_json read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open manifest '" + path + "'");
  try {
    return nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("manifest '" + path + "': " + e.what());
  }
}

}  // namespace rfa::cli

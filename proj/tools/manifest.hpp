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


// Run manifests: one JSON document per command invocation recording the
// resolved configuration, input digests and phase timings.

#pragma once

#include <chrono>
#include <cstdint>
#include <string>

#include "json.hpp"

namespace rfa::cli {

// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::string& path);

class PhaseTimer {
 public:
  PhaseTimer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

class RunManifest {
 public:
  explicit RunManifest(const std::string& command);

  void set_config(nlohmann::ordered_json config) { doc_["config"] = std::move(config); }
  void set_seed(std::uint64_t seed) { doc_["seed"] = seed; }
  void add_input(const std::string& role, const std::string& path);
  void add_output(const std::string& role, const std::string& path);
  void set_timing(const std::string& phase, double seconds) { doc_["timings"][phase] = seconds; }
  nlohmann::ordered_json& extra() { return doc_["details"]; }

  const nlohmann::ordered_json& json() const { return doc_; }
  void write(const std::string& path) const;

 private:
  nlohmann::ordered_json doc_;
};

nlohmann::ordered_json read_manifest(const std::string& path);

}  // namespace rfa::cli

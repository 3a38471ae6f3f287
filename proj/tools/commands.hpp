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


// Shared plumbing for the `rfa` command-line tool: option structs, the
// error classes that map onto process exit codes, and per-command entry
// points.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rfa/engine.hpp"
#include "rfa/eval.hpp"
#include "rfa/graph.hpp"

namespace rfa::cli {

inline constexpr const char* kVersion = RFA_VERSION;

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kNumeric = 3 };

// Invalid flag combinations or out-of-range values detected after parsing.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Wraps a failure with the pipeline phase it happened in, keeping the exit
// code of the original error.
class PhaseError : public std::runtime_error {
 public:
  PhaseError(std::string phase, const std::string& what, int code)
      : std::runtime_error(what), phase_(std::move(phase)), code_(code) {}
  const std::string& phase() const { return phase_; }
  int code() const { return code_; }

 private:
  std::string phase_;
  int code_;
};

struct GraphInput {
  std::string path;
  int index_base = 0;
  bool lenient = false;
};

struct GenOptions {
  std::string kind;
  std::size_t n = 0;
  std::size_t c = 1;
  double avg_degree = 10.0;
  std::vector<std::size_t> blocks;
  double p_in = 0.1;
  double p_out = 0.01;
  std::size_t stars = 50;
  std::size_t leaves = 5;
  std::uint64_t seed = 0;
  std::string out;
  std::string labels_out;
};

struct EmbedOptions {
  GraphInput input;
  std::string filter = "low";
  double delta = 0.1;
  double alpha_magnitude = 1.0;
  int dim = 64;
  double tau = 20.0;
  int iters = 3;
  std::string activation = "tanh";
  std::string normalization = "zscore_col";
  std::uint64_t seed = 0;
  std::string preset;
  std::string replay;
  std::string out;
  std::string format;
  std::string manifest;
};

struct SpectrumOptions {
  GraphInput input;
  std::vector<double> taus{0.0};
  std::string out_dir = ".";
  bool vectors = false;
  std::size_t max_nodes = 2000;
};

struct EvalOptions {
  std::string embeddings;
  std::string ids;
  std::string labels;
  std::string kind = "multiclass";
  int trials = 10;
  double ratio = 0.2;
  std::uint64_t seed = 0;
  bool ignore_unknown_ids = false;
  std::string out;
};

struct BenchOptions {
  std::vector<std::size_t> n_list{10000, 100000, 1000000};
  double avg_degree = 10.0;
  int dim = 64;
  int iters = 10;
  double tau = 20.0;
  std::string filter = "low";
  std::string normalization = "zscore_col";
  std::uint64_t seed = 0;
  int repeat = 5;
  std::string out;
};

struct NtosOptions {
  std::string results;
  std::string out;
};

int run_gen(const GenOptions& o);
int run_embed(const EmbedOptions& o);
int run_spectrum(const SpectrumOptions& o);
int run_eval(const EvalOptions& o);
int run_bench(const BenchOptions& o);
int run_ntos(const NtosOptions& o);

// Loads an edge list and reduces it to its largest connected component,
// warning on stderr when nodes are dropped.
Graph load_connected_graph(const GraphInput& in, std::size_t* dropped = nullptr);

// Resolves the embed flags into a validated configuration. A preset replaces
// every individual setting.
RfaConfig resolve_config(const EmbedOptions& o);

// Exit code for an exception escaping a command.
int exit_code_for(const std::exception& e);

// Runs `fn` and rethrows any failure as a PhaseError tagged with `phase`.
template <typename Fn>
auto in_phase(const std::string& phase, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const PhaseError&) {
    throw;
  } catch (const std::exception& e) {
    throw PhaseError(phase, e.what(), exit_code_for(e));
  }
}

}  // namespace rfa::cli

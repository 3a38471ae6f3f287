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


#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "rfa/engine.hpp"
#include "rfa/propagator.hpp"

namespace {

using namespace rfa::cli;

constexpr const char* kThreadsEnv = "RFA_NUM_THREADS";

void add_graph_input(CLI::App* cmd, GraphInput& in, bool required = true) {
  auto* opt = cmd->add_option("-i,--input", in.path, "Edge list file (u v per line)");
  if (required) opt->required()->check(CLI::ExistingFile);
  cmd->add_option("--index-base", in.index_base, "Smallest valid node id in the file")
      ->check(CLI::IsMember({0, 1}));
  cmd->add_flag("--lenient", in.lenient, "Skip malformed lines instead of failing");
}

int default_threads() {
  const char* env = std::getenv(kThreadsEnv);
  if (!env || !*env) return 0;
  try {
    std::size_t used = 0;
    const int t = std::stoi(env, &used);
    if (used != std::string(env).size() || t < 0) throw std::invalid_argument(env);
    return t;
  } catch (const std::exception&) {
    throw UsageError(std::string(kThreadsEnv) + " must be a non-negative integer, got '" + env +
                     "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random feature aggregation: training-free node embeddings"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  app.fallthrough();

  int threads = -1;
  app.add_option("--threads", threads,
                 std::string("Worker threads (0 = all cores; default from ") + kThreadsEnv + ")")
      ->check(CLI::NonNegativeNumber);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a synthetic graph");
  gen_cmd->require_subcommand(1);
  auto* barbell = gen_cmd->add_subcommand("barbell", "Two n-cliques joined by a c-node path");
  barbell->add_option("--n", gen.n, "Clique size")->required();
  barbell->add_option("--c", gen.c, "Path length")->required();
  auto* er = gen_cmd->add_subcommand("er", "Erdos-Renyi G(n, p) at a target mean degree");
  er->add_option("--n", gen.n, "Node count")->required();
  er->add_option("--avg-deg", gen.avg_degree, "Expected mean degree")->capture_default_str();
  auto* sbm = gen_cmd->add_subcommand("sbm", "Stochastic block model with block labels");
  sbm->add_option("--blocks", gen.blocks, "Comma-separated block sizes")
      ->required()
      ->delimiter(',');
  sbm->add_option("--pin", gen.p_in, "Within-block edge probability")->capture_default_str();
  sbm->add_option("--pout", gen.p_out, "Between-block edge probability")->capture_default_str();
  auto* ring = gen_cmd->add_subcommand("role-ring", "Ring of star hubs with hub/leaf labels");
  ring->add_option("--stars", gen.stars, "Number of hubs")->capture_default_str();
  ring->add_option("--leaves", gen.leaves, "Leaves per hub")->capture_default_str();
  for (auto* sub : {barbell, er, sbm, ring}) {
    sub->add_option("--seed", gen.seed, "PRNG seed")->capture_default_str();
    sub->add_option("-o,--out", gen.out, "Edge list output (default <kind>.edges)");
    sub->add_option("--labels-out", gen.labels_out, "Label output (default <out>.labels)");
    sub->callback([&gen, sub] { gen.kind = sub->get_name(); });
  }

  EmbedOptions embed;
  auto* embed_cmd = app.add_subcommand("embed", "Compute node embeddings");
  add_graph_input(embed_cmd, embed.input, false);
  embed_cmd->add_option("--filter", embed.filter, "low or high")->capture_default_str();
  embed_cmd->add_option("--delta", embed.delta, "Self-loop weight")->capture_default_str();
  embed_cmd->add_option("--alpha", embed.alpha_magnitude, "Neighbor weight magnitude")
      ->capture_default_str();
  embed_cmd->add_option("--dim", embed.dim, "Embedding dimension")->capture_default_str();
  embed_cmd->add_option("--tau", embed.tau, "Degree correction")->capture_default_str();
  embed_cmd->add_option("--iters", embed.iters, "Number of layers K")->capture_default_str();
  embed_cmd->add_option("--act", embed.activation, "tanh, exp or none")->capture_default_str();
  embed_cmd->add_option("--norm", embed.normalization, "zscore_col, l2_row or none")
      ->capture_default_str();
  embed_cmd->add_option("--seed", embed.seed, "Noise seed")->capture_default_str();
  embed_cmd->add_option("--preset", embed.preset, "Dataset preset; replaces layer settings")
      ->check(CLI::IsMember(rfa::preset_names()));
  embed_cmd->add_option("--replay", embed.replay, "Rerun the configuration of a manifest")
      ->check(CLI::ExistingFile);
  embed_cmd->add_option("-o,--out", embed.out, "Embedding output path");
  embed_cmd->add_option("--format", embed.format, "csv or bin (default from extension)");
  embed_cmd->add_option("--manifest", embed.manifest, "Manifest path (default <out>.manifest.json)");

  SpectrumOptions spectrum;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Dense spectral diagnostics");
  add_graph_input(spectrum_cmd, spectrum.input);
  spectrum_cmd->add_option("--tau", spectrum.taus, "Comma-separated tau values")
      ->delimiter(',')
      ->capture_default_str();
  spectrum_cmd->add_option("-o,--out", spectrum.out_dir, "Output directory")->capture_default_str();
  spectrum_cmd->add_flag("--vectors", spectrum.vectors, "Also write eigenvector matrices");
  spectrum_cmd->add_option("--max-nodes", spectrum.max_nodes, "Dense size cap")
      ->capture_default_str();

  EvalOptions eval;
  auto* eval_cmd = app.add_subcommand("eval", "Node classification on frozen embeddings");
  eval_cmd->add_option("-e,--embeddings", eval.embeddings, "Embedding file (.csv or .bin)")
      ->required()
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("--ids", eval.ids, "Row id file for binary embeddings")
      ->check(CLI::ExistingFile);
  eval_cmd->add_option("-l,--labels", eval.labels, "Label file")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--kind", eval.kind, "multiclass or multilabel")->capture_default_str();
  eval_cmd->add_option("--trials", eval.trials, "Repeated splits")->capture_default_str();
  eval_cmd->add_option("--ratio", eval.ratio, "Training fraction")->capture_default_str();
  eval_cmd->add_option("--seed", eval.seed, "Split seed")->capture_default_str();
  eval_cmd->add_flag("--ignore-unknown-ids", eval.ignore_unknown_ids,
                     "Skip labels for nodes without an embedding row");
  eval_cmd->add_option("-o,--out", eval.out, "Report path (default eval_report.json)");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Embedding time on Erdos-Renyi graphs");
  bench_cmd->add_option("--n-list", bench.n_list, "Comma-separated node counts")
      ->delimiter(',')
      ->capture_default_str();
  bench_cmd->add_option("--avg-deg", bench.avg_degree, "Mean degree")->capture_default_str();
  bench_cmd->add_option("--dim", bench.dim, "Embedding dimension")->capture_default_str();
  bench_cmd->add_option("--iters", bench.iters, "Number of layers K")->capture_default_str();
  bench_cmd->add_option("--tau", bench.tau, "Degree correction")->capture_default_str();
  bench_cmd->add_option("--filter", bench.filter, "low (tanh) or high (exp)")->capture_default_str();
  bench_cmd->add_option("--norm", bench.normalization, "Normalization")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Graph and noise seed")->capture_default_str();
  bench_cmd->add_option("--repeat", bench.repeat, "Timed runs per size")->capture_default_str();
  bench_cmd->add_option("-o,--out", bench.out, "CSV path (default bench.csv)");

  NtosOptions nt;
  auto* ntos_cmd = app.add_subcommand("ntos", "Time/quality trade-off scores");
  ntos_cmd->add_option("-r,--results", nt.results, "CSV of method,time_sec,metric")
      ->required()
      ->check(CLI::ExistingFile);
  ntos_cmd->add_option("-o,--out", nt.out, "Output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    rfa::set_num_threads(threads >= 0 ? threads : default_threads());
    if (gen_cmd->parsed()) return run_gen(gen);
    if (embed_cmd->parsed()) return run_embed(embed);
    if (spectrum_cmd->parsed()) return run_spectrum(spectrum);
    if (eval_cmd->parsed()) return run_eval(eval);
    if (bench_cmd->parsed()) return run_bench(bench);
    if (ntos_cmd->parsed()) return run_ntos(nt);
  } catch (const PhaseError& e) {
    std::cerr << "error [" << e.phase() << "]: " << e.what() << '\n';
    return e.code();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kUsage;
}

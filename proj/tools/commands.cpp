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


#include <cstdio>
#include <filesystem>
#include <iostream>
#include <numeric>

#include "commands.hpp"
#include "manifest.hpp"
#include "rfa/embedding_io.hpp"
#include "rfa/error.hpp"
#include "rfa/generators.hpp"
#include "rfa/propagator.hpp"

namespace rfa::cli {

using nlohmann::ordered_json;

int exit_code_for(const std::exception& e) {
  if (const auto* p = dynamic_cast<const PhaseError*>(&e)) return p->code();
  if (dynamic_cast<const UsageError*>(&e)) return kUsage;
  if (dynamic_cast<const NumericError*>(&e)) return kNumeric;
  return kData;
}

Graph load_connected_graph(const GraphInput& in, std::size_t* dropped) {
  EdgeListOptions opts;
  opts.index_base = in.index_base;
  opts.strict = !in.lenient;
  Graph g = load_edge_list(in.path, opts);
  if (dropped) *dropped = 0;
  if (is_connected(g)) return g;

  auto [lcc, map] = largest_connected_component(g);
  const std::size_t lost = g.num_nodes() - lcc.num_nodes();
  std::cerr << "warning: graph has " << map.sizes.size() << " connected components; keeping the "
            << "largest (" << lcc.num_nodes() << " of " << g.num_nodes() << " nodes, " << lost
            << " dropped)\n";
  if (dropped) *dropped = lost;
  return std::move(lcc);
}

namespace {

std::vector<std::int64_t> row_ids(const Graph& g) {
  std::vector<std::int64_t> ids(g.num_nodes());
  for (NodeId i = 0; i < g.num_nodes(); ++i) ids[i] = g.original_id(i);
  return ids;
}

ordered_json config_json(const RfaConfig& cfg, const std::string& preset) {
  const bool low = cfg.filter.alpha > 0.0;
  return {
      {"preset", preset.empty() ? ordered_json(nullptr) : ordered_json(preset)},
      {"dim", cfg.dim},
      {"iters", cfg.iters},
      {"filter",
       {{"name", low ? "low" : "high"},
        {"delta", cfg.filter.delta},
        {"alpha", cfg.filter.alpha},
        {"tau", cfg.filter.tau}}},
      {"activation", std::string(to_string(cfg.activation))},
      {"normalization", std::string(to_string(cfg.normalization))},
      {"seed", cfg.seed},
  };
}

RfaConfig config_from_json(const ordered_json& j) {
  try {
    RfaConfig cfg;
    cfg.dim = j.at("dim").get<int>();
    cfg.iters = j.at("iters").get<int>();
    const auto& f = j.at("filter");
    cfg.filter = FilterConfig{f.at("delta").get<double>(), f.at("alpha").get<double>(),
                              f.at("tau").get<double>()};
    cfg.activation = parse_activation(j.at("activation").get<std::string>());
    cfg.normalization = parse_normalization(j.at("normalization").get<std::string>());
    cfg.seed = j.at("seed").get<std::uint64_t>();
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("manifest config: ") + e.what());
  }
}

std::string infer_format(const std::string& requested, const std::string& out) {
  if (!requested.empty()) {
    if (requested != "csv" && requested != "bin") {
      throw UsageError("--format must be csv or bin, got '" + requested + "'");
    }
    return requested;
  }
  return std::filesystem::path(out).extension() == ".bin" ? "bin" : "csv";
}

void write_ids(const std::string& path, std::span<const std::int64_t> ids) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw ParseError("cannot write '" + path + "'");
  for (auto id : ids) std::fprintf(f, "%lld\n", static_cast<long long>(id));
  std::fclose(f);
}

}  // namespace

RfaConfig resolve_config(const EmbedOptions& o) {
  RfaConfig cfg;
  try {
    if (!o.preset.empty()) {
      cfg = preset_config(o.preset);
    } else {
      if (o.filter == "low") {
        cfg.filter = FilterConfig{o.delta, o.alpha_magnitude, o.tau};
      } else if (o.filter == "high") {
        cfg.filter = FilterConfig{o.delta, -o.alpha_magnitude, o.tau};
      } else {
        throw DomainError("--filter must be low or high, got '" + o.filter + "'");
      }
      cfg.dim = o.dim;
      cfg.iters = o.iters;
      cfg.activation = parse_activation(o.activation);
      cfg.normalization = parse_normalization(o.normalization);
    }
    cfg.seed = o.seed;
    cfg.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

int run_gen(const GenOptions& o) {
  PhaseTimer total;
  const std::string out = o.out.empty() ? o.kind + ".edges" : o.out;
  ordered_json params;
  LabeledGraph lg;

  PhaseTimer gen_timer;
  in_phase("generate", [&] {
    if (o.kind == "barbell") {
      lg.graph = gen_barbell(o.n, o.c);
      params = {{"n", o.n}, {"c", o.c}};
    } else if (o.kind == "er") {
      lg.graph = gen_erdos_renyi(o.n, o.avg_degree, o.seed);
      params = {{"n", o.n}, {"avg_degree", o.avg_degree}};
    } else if (o.kind == "sbm") {
      lg = gen_sbm(o.blocks, o.p_in, o.p_out, o.seed);
      params = {{"blocks", o.blocks}, {"p_in", o.p_in}, {"p_out", o.p_out}};
    } else if (o.kind == "role-ring") {
      lg = gen_role_ring(o.stars, o.leaves);
      params = {{"stars", o.stars}, {"leaves", o.leaves}};
    } else {
      throw UsageError("unknown generator '" + o.kind + "'");
    }
  });
  const double gen_sec = gen_timer.seconds();

  RunManifest manifest("gen");
  manifest.set_config({{"kind", o.kind}, {"params", params}, {"seed", o.seed}});
  manifest.set_seed(o.seed);

  in_phase("write", [&] {
    save_edge_list(lg.graph, out);
    manifest.add_output("edges", out);
    if (!lg.labels.empty()) {
      const std::string labels_out = o.labels_out.empty() ? out + ".labels" : o.labels_out;
      save_labels(labels_out, lg.labels, row_ids(lg.graph));
      manifest.add_output("labels", labels_out);
      std::cout << "labels: " << labels_out << '\n';
    }
  });

  manifest.extra() = {{"n", lg.graph.num_nodes()}, {"m", lg.graph.num_edges()}};
  manifest.set_timing("generate", gen_sec);
  manifest.set_timing("total", total.seconds());
  in_phase("write", [&] { manifest.write(out + ".manifest.json"); });

  std::cout << "n=" << lg.graph.num_nodes() << " m=" << lg.graph.num_edges() << '\n'
            << "edges: " << out << '\n';
  return kOk;
}

int run_embed(const EmbedOptions& o) {
  PhaseTimer total;
  EmbedOptions opts = o;
  RfaConfig cfg;
  std::string expected_digest;

  if (!opts.replay.empty()) {
    const auto m = in_phase("replay", [&] { return read_manifest(opts.replay); });
    if (m.value("command", "") != "embed") {
      throw UsageError("'" + opts.replay + "' is not an embed manifest");
    }
    const auto& c = m["config"];
    cfg = in_phase("replay", [&] { return config_from_json(c.at("rfa")); });
    opts.preset = c["rfa"].value("preset", ordered_json(nullptr)).is_null()
                      ? ""
                      : c["rfa"]["preset"].get<std::string>();
    if (opts.format.empty()) opts.format = c.value("format", "");
    opts.input.index_base = c.value("index_base", 0);
    opts.input.lenient = c.value("lenient", false);
    for (const auto& in : m["inputs"]) {
      if (in.value("role", "") != "graph") continue;
      if (opts.input.path.empty()) opts.input.path = in.value("path", "");
      expected_digest = in.value("sha256", "");
    }
    try {
      cfg.validate();
    } catch (const DomainError& e) {
      throw UsageError(std::string("manifest config: ") + e.what());
    }
  } else {
    cfg = resolve_config(opts);
  }
  if (opts.input.path.empty()) throw UsageError("an input edge list is required (--input)");
  if (opts.out.empty()) throw UsageError("an output path is required (--out)");
  const std::string format = infer_format(opts.format, opts.out);
  const std::string manifest_path =
      opts.manifest.empty() ? opts.out + ".manifest.json" : opts.manifest;

  PhaseTimer load_timer;
  std::size_t dropped = 0;
  const Graph g = in_phase("load", [&] { return load_connected_graph(opts.input, &dropped); });
  const double load_sec = load_timer.seconds();

  RunManifest manifest("embed");
  in_phase("load", [&] { manifest.add_input("graph", opts.input.path); });
  const std::string digest = manifest.json()["inputs"][0]["sha256"];
  if (!expected_digest.empty() && digest != expected_digest) {
    std::cerr << "warning: input digest differs from the replayed manifest\n";
  }

  const auto result = in_phase("embed", [&] { return rfa_embed(g, cfg); });

  PhaseTimer write_timer;
  const auto ids = row_ids(g);
  in_phase("write", [&] {
    if (format == "csv") {
      write_embedding_csv(opts.out, result.embedding, ids);
      manifest.add_output("embedding", opts.out);
    } else {
      write_embedding_bin(opts.out, result.embedding);
      write_ids(opts.out + ".ids", ids);
      manifest.add_output("embedding", opts.out);
      manifest.add_output("ids", opts.out + ".ids");
    }
  });
  const double write_sec = write_timer.seconds();

  manifest.set_config({{"rfa", config_json(cfg, opts.preset)},
                       {"format", format},
                       {"index_base", opts.input.index_base},
                       {"lenient", opts.input.lenient}});
  manifest.set_seed(cfg.seed);
  manifest.extra() = {{"n", g.num_nodes()},
                      {"m", g.num_edges()},
                      {"dropped_nodes", dropped},
                      {"threads", num_threads()}};
  manifest.set_timing("load", load_sec);
  manifest.set_timing("loop", result.loop_seconds);
  manifest.set_timing("write", write_sec);
  manifest.set_timing("total", total.seconds());
  in_phase("write", [&] { manifest.write(manifest_path); });

  std::cout << "n=" << g.num_nodes() << " d=" << cfg.dim << " K=" << cfg.iters << '\n'
            << "loop_seconds=" << result.loop_seconds << '\n'
            << "embedding: " << opts.out << '\n'
            << "manifest: " << manifest_path << '\n';
  return kOk;
}

}  // namespace rfa::cli

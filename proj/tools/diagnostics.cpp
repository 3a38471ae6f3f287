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


#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <new>
#include <numeric>

#include "commands.hpp"
#include "manifest.hpp"
#include "rfa/embedding_io.hpp"
#include "rfa/error.hpp"
#include "rfa/generators.hpp"
#include "rfa/spectrum.hpp"

namespace rfa::cli {

using nlohmann::ordered_json;

namespace {

std::string shortest(double v) {
  char buf[32];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path + "'");
  return out;
}

}  // namespace

int run_spectrum(const SpectrumOptions& o) {
  PhaseTimer total;
  if (o.taus.empty()) throw UsageError("--tau needs at least one value");
  for (double tau : o.taus) {
    if (!(tau >= 0.0)) throw UsageError("tau values must be >= 0");
  }

  const Graph g = in_phase("load", [&] {
    EdgeListOptions opts;
    opts.index_base = o.input.index_base;
    opts.strict = !o.input.lenient;
    return load_edge_list(o.input.path, opts);
  });
  RunManifest manifest("spectrum");
  in_phase("load", [&] { manifest.add_input("graph", o.input.path); });
  in_phase("write", [&] { std::filesystem::create_directories(o.out_dir); });
  const std::filesystem::path dir(o.out_dir);

  const std::string summary_path = (dir / "spectrum_summary.csv").string();
  auto summary = in_phase("write", [&] { return open_out(summary_path); });
  summary << "tau,spread,gershgorin_radius\n";

  PhaseTimer solve_timer;
  for (double tau : o.taus) {
    const Spectrum spec = in_phase("spectrum", [&] { return dense_spectrum(g, tau, o.max_nodes); });
    const double spread = spectrum_spread(spec);
    const double radius = gershgorin_interval(g, tau).radius();
    summary << shortest(tau) << ',' << shortest(spread) << ',' << shortest(radius) << '\n';

    in_phase("write", [&] {
      const std::string values_path = (dir / ("eigenvalues_tau" + shortest(tau) + ".csv")).string();
      auto out = open_out(values_path);
      out << "index,eigenvalue\n";
      for (std::size_t r = 0; r < spec.size(); ++r) {
        out << r << ',' << shortest(spec.eigenvalues(static_cast<Eigen::Index>(r))) << '\n';
      }
      out.close();
      manifest.add_output("eigenvalues", values_path);

      if (o.vectors) {
        const std::string vec_path = (dir / ("eigenvectors_tau" + shortest(tau) + ".csv")).string();
        auto vout = open_out(vec_path);
        vout << "node_id";
        for (std::size_t r = 0; r < spec.size(); ++r) vout << ",u" << r;
        vout << '\n';
        for (NodeId i = 0; i < g.num_nodes(); ++i) {
          vout << g.original_id(i);
          for (std::size_t r = 0; r < spec.size(); ++r) {
            vout << ',' << shortest(spec.eigenvectors(i, static_cast<Eigen::Index>(r)));
          }
          vout << '\n';
        }
        vout.close();
        manifest.add_output("eigenvectors", vec_path);
      }
    });
    std::cout << "tau=" << shortest(tau) << " spread=" << spread << " gershgorin_radius=" << radius
              << '\n';
  }
  summary.close();

  manifest.set_config({{"taus", o.taus},
                       {"vectors", o.vectors},
                       {"max_nodes", o.max_nodes},
                       {"index_base", o.input.index_base},
                       {"lenient", o.input.lenient}});
  manifest.add_output("summary", summary_path);
  manifest.extra() = {{"n", g.num_nodes()}, {"m", g.num_edges()}};
  manifest.set_timing("spectrum", solve_timer.seconds());
  manifest.set_timing("total", total.seconds());
  in_phase("write", [&] { manifest.write((dir / "manifest.json").string()); });
  std::cout << "summary: " << summary_path << '\n';
  return kOk;
}

int run_eval(const EvalOptions& o) {
  PhaseTimer total;
  if (o.trials < 1) throw UsageError("--trials must be >= 1");
  if (!(o.ratio > 0.0 && o.ratio < 1.0)) throw UsageError("--ratio must lie in (0, 1)");
  const LabelKind kind = [&] {
    try {
      return parse_label_kind(o.kind);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }();

  RunManifest manifest("eval");
  LabeledEmbedding emb = in_phase("load", [&] {
    manifest.add_input("embeddings", o.embeddings);
    if (std::filesystem::path(o.embeddings).extension() != ".bin") {
      return read_embedding_csv(o.embeddings);
    }
    LabeledEmbedding out;
    out.matrix = read_embedding_bin(o.embeddings);
    std::string ids_path = o.ids;
    if (ids_path.empty() && std::filesystem::exists(o.embeddings + ".ids")) {
      ids_path = o.embeddings + ".ids";
    }
    if (ids_path.empty()) {
      out.ids.resize(out.matrix.rows());
      std::iota(out.ids.begin(), out.ids.end(), 0);
      return out;
    }
    manifest.add_input("ids", ids_path);
    std::ifstream in(ids_path);
    std::int64_t id = 0;
    while (in >> id) out.ids.push_back(id);
    if (out.ids.size() != out.matrix.rows()) {
      throw ParseError("'" + ids_path + "' lists " + std::to_string(out.ids.size()) +
                       " ids for " + std::to_string(out.matrix.rows()) + " embedding rows");
    }
    return out;
  });
  const LabelSet labels = in_phase("labels", [&] {
    manifest.add_input("labels", o.labels);
    return load_labels(o.labels, kind, emb.ids, o.ignore_unknown_ids);
  });

  ProtocolOptions popts;
  popts.trials = o.trials;
  popts.train_ratio = o.ratio;
  popts.seed = o.seed;
  PhaseTimer eval_timer;
  const EvalReport report = in_phase("evaluate", [&] { return run_protocol(emb.matrix, labels, popts); });
  const double eval_sec = eval_timer.seconds();

  const std::string out = o.out.empty() ? "eval_report.json" : o.out;
  in_phase("write", [&] {
    auto f = open_out(out);
    f << report.to_json() << '\n';
    f.close();
    manifest.add_output("report", out);
  });

  manifest.set_config({{"kind", o.kind},
                       {"trials", o.trials},
                       {"train_ratio", o.ratio},
                       {"ignore_unknown_ids", o.ignore_unknown_ids},
                       {"classifier",
                        {{"l2", popts.classifier.l2},
                         {"grad_tol", popts.classifier.grad_tol},
                         {"max_epochs", popts.classifier.max_epochs}}}});
  manifest.set_seed(o.seed);
  manifest.extra() = {{"rows", emb.matrix.rows()}, {"dim", emb.matrix.cols()},
                      {"classes", labels.num_classes}};
  manifest.set_timing("evaluate", eval_sec);
  manifest.set_timing("total", total.seconds());
  in_phase("write", [&] { manifest.write(out + ".manifest.json"); });

  std::cout << "micro_f1=" << report.micro_mean << " +- " << report.micro_std << '\n'
            << "macro_f1=" << report.macro_mean << " +- " << report.macro_std << '\n'
            << "report: " << out << '\n';
  return kOk;
}

int run_bench(const BenchOptions& o) {
  PhaseTimer total;
  if (o.repeat < 1) throw UsageError("--repeat must be >= 1");
  if (o.n_list.empty()) throw UsageError("--n-list needs at least one size");
  EmbedOptions eo;
  eo.filter = o.filter;
  eo.dim = o.dim;
  eo.iters = o.iters;
  eo.tau = o.tau;
  eo.activation = o.filter == "high" ? "exp" : "tanh";
  eo.normalization = o.normalization;
  eo.seed = o.seed;
  const RfaConfig cfg = resolve_config(eo);

  const std::string out = o.out.empty() ? "bench.csv" : o.out;
  auto csv = in_phase("write", [&] { return open_out(out); });
  csv << "n,m,gen_sec,embed_sec\n";
  std::cout << "n,m,gen_sec,embed_sec\n";

  ordered_json rows = ordered_json::array();
  bool any_failed = false;
  for (std::size_t n : o.n_list) {
    std::string line;
    try {
      PhaseTimer gen_timer;
      // Every repeat reuses the same graph, generated once from the fixed seed.
      const Graph g = gen_erdos_renyi(n, o.avg_degree, o.seed);
      const double gen_sec = gen_timer.seconds();
      double embed_sum = 0.0;
      for (int r = 0; r < o.repeat; ++r) embed_sum += rfa_embed(g, cfg).loop_seconds;
      const double embed_sec = embed_sum / o.repeat;
      line = std::to_string(n) + ',' + std::to_string(g.num_edges()) + ',' + shortest(gen_sec) +
             ',' + shortest(embed_sec);
      rows.push_back({{"n", n}, {"m", g.num_edges()}, {"gen_sec", gen_sec},
                      {"embed_sec", embed_sec}});
    } catch (const std::bad_alloc&) {
      any_failed = true;
      line = std::to_string(n) + ",ERROR,,";
      std::cerr << "error [bench n=" << n << "]: allocation failed\n";
      rows.push_back({{"n", n}, {"error", "allocation failed"}});
    } catch (const std::exception& e) {
      any_failed = true;
      line = std::to_string(n) + ",ERROR,,";
      std::cerr << "error [bench n=" << n << "]: " << e.what() << '\n';
      rows.push_back({{"n", n}, {"error", e.what()}});
    }
    csv << line << '\n' << std::flush;
    std::cout << line << '\n' << std::flush;
  }
  csv.close();

  RunManifest manifest("bench");
  manifest.set_config({{"n_list", o.n_list},
                       {"avg_degree", o.avg_degree},
                       {"repeat", o.repeat},
                       {"rfa", {{"dim", cfg.dim},
                                {"iters", cfg.iters},
                                {"filter", o.filter},
                                {"tau", cfg.filter.tau},
                                {"activation", std::string(to_string(cfg.activation))},
                                {"normalization", std::string(to_string(cfg.normalization))}}}});
  manifest.set_seed(o.seed);
  in_phase("write", [&] { manifest.add_output("table", out); });
  manifest.extra() = {{"rows", rows}, {"threads", num_threads()}};
  manifest.set_timing("total", total.seconds());
  in_phase("write", [&] { manifest.write(out + ".manifest.json"); });
  return any_failed ? kNumeric : kOk;
}

int run_ntos(const NtosOptions& o) {
  const auto results = in_phase("load", [&] { return load_results_csv(o.results); });
  std::vector<double> times, metrics;
  for (const auto& r : results) {
    times.push_back(r.time_sec);
    metrics.push_back(r.metric);
  }
  const auto scores = in_phase("score", [&] { return ntos(times, metrics); });

  std::ofstream file;
  if (!o.out.empty()) file = in_phase("write", [&] { return open_out(o.out); });
  std::ostream& out = o.out.empty() ? std::cout : file;
  out << "method,time_sec,metric,ntos\n";
  for (std::size_t k = 0; k < results.size(); ++k) {
    out << results[k].method << ',' << shortest(results[k].time_sec) << ','
        << shortest(results[k].metric) << ',' << shortest(scores[k]) << '\n';
  }
  return kOk;
}

}  // namespace rfa::cli

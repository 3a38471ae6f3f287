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


#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "json.hpp"
#include "oracle.hpp"
#include "rfa/embedding_io.hpp"
#include "rfa/engine.hpp"
#include "rfa/eval.hpp"
#include "rfa/graph.hpp"

using namespace rfa;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp(const std::string& name) { return oracle::temp_path("cli_" + name).string(); }

Run rfa_cli(const std::string& args) {
  const std::string out = tmp("stdout.txt");
  const std::string err = tmp("stderr.txt");
  const std::string cmd = std::string(RFA_CLI_PATH) + " " + args + " >" + out + " 2>" + err;
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::vector<std::string> csv_lines(const std::string& path) {
  std::vector<std::string> lines;
  std::ifstream in(path);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("gen barbell writes the 15-node graph") {
  const auto path = tmp("barbell.txt");
  const Run r = rfa_cli("gen barbell --n 6 --c 3 -o " + path);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("n=15 m=34") != std::string::npos);
  const Graph g = load_edge_list(path);
  CHECK(g.num_nodes() == 15);
  CHECK(g.num_edges() == 34);
  const auto manifest = nlohmann::json::parse(slurp(path + ".manifest.json"));
  CHECK(manifest["command"] == "gen");
  CHECK(manifest["outputs"][0]["sha256"].get<std::string>().size() == 64);
}

TEST_CASE("gen er edge count matches n * avg / 2") {
  const auto path = tmp("er.txt");
  REQUIRE(rfa_cli("gen er --n 100000 --avg-deg 10 --seed 7 -o " + path).code == 0);
  const Graph g = load_edge_list(path);
  // Binomial edge count: mean 5e5, sd ~707.
  CHECK(std::abs(static_cast<double>(g.num_edges()) - 5e5) < 5000.0);
}

TEST_CASE("gen sbm writes edges and three-class labels") {
  const auto path = tmp("sbm.txt");
  REQUIRE(rfa_cli("gen sbm --blocks 100,100,100 --pin 0.1 --pout 0.01 --seed 1 -o " + path)
              .code == 0);
  const auto lines = csv_lines(path + ".labels");
  std::set<std::string> classes;
  std::size_t rows = 0;
  for (const auto& line : lines) {
    if (line.empty() || line[0] == '#') continue;
    ++rows;
    classes.insert(line.substr(line.find(' ') + 1));
  }
  CHECK(rows == 300);
  CHECK(classes.size() == 3);
}

TEST_CASE("gen surfaces generator errors") {
  const Run r = rfa_cli("gen barbell --n 2 --c 1 -o " + tmp("bad.txt"));
  CHECK(r.code != 0);
  CHECK(r.err.find("clique") != std::string::npos);
}

TEST_CASE("embed with K = 0 returns the seeded noise") {
  const auto graph = tmp("k0.txt");
  REQUIRE(rfa_cli("gen barbell --n 5 --c 2 -o " + graph).code == 0);
  const auto out = tmp("k0.csv");
  const Run r = rfa_cli("embed -i " + graph + " --filter low --dim 8 --iters 0 --seed 5 -o " + out);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("loop_seconds=") != std::string::npos);
  const auto emb = read_embedding_csv(out);
  CHECK(emb.matrix == init_noise(12, 8, 5));
}

TEST_CASE("embed output is byte-identical across runs, thread counts and replays") {
  const auto graph = tmp("det.txt");
  REQUIRE(rfa_cli("gen sbm --blocks 200,200 --pin 0.05 --pout 0.01 --seed 3 -o " + graph).code ==
          0);
  const std::string base = "embed -i " + graph + " --filter high --act exp --dim 16 --iters 4 ";
  REQUIRE(rfa_cli(base + "--threads 1 -o " + tmp("det1.csv")).code == 0);
  REQUIRE(rfa_cli(base + "--threads 3 -o " + tmp("det3.csv")).code == 0);
  REQUIRE(rfa_cli(base + "--threads 1 -o " + tmp("det1b.csv")).code == 0);
  const std::string a = slurp(tmp("det1.csv"));
  CHECK(a.size() > 1000);
  CHECK(a == slurp(tmp("det3.csv")));
  CHECK(a == slurp(tmp("det1b.csv")));

  REQUIRE(rfa_cli("embed --replay " + tmp("det1.csv") + ".manifest.json --threads 2 -o " +
                  tmp("det_replay.csv"))
              .code == 0);
  CHECK(a == slurp(tmp("det_replay.csv")));

  REQUIRE(rfa_cli(base + "--threads 2 -o " + tmp("det.bin")).code == 0);
  CHECK(read_embedding_bin(tmp("det.bin")) == read_embedding_csv(tmp("det1.csv")).matrix);
}

TEST_CASE("embed --preset records the resolved configuration") {
  const auto graph = tmp("preset.txt");
  REQUIRE(rfa_cli("gen role-ring --stars 10 --leaves 3 -o " + graph).code == 0);
  const auto out = tmp("preset.csv");
  REQUIRE(rfa_cli("embed -i " + graph + " --preset europe --dim 7 -o " + out).code == 0);
  const auto m = nlohmann::json::parse(slurp(out + ".manifest.json"));
  const auto& cfg = m["config"]["rfa"];
  CHECK(cfg["preset"] == "europe");
  CHECK(cfg["dim"] == 64);
  CHECK(cfg["filter"]["tau"] == 20.0);
  CHECK(cfg["iters"] == 3);
  CHECK(cfg["activation"] == "exp");
  CHECK(parse_normalization(cfg["normalization"].get<std::string>()) ==
        Normalization::kZScoreCol);
  CHECK(cfg["filter"]["name"] == "high");
  CHECK(m["inputs"][0]["sha256"].get<std::string>().size() == 64);
  CHECK(m["timings"].contains("loop"));
  CHECK(read_embedding_csv(out).matrix.cols() == 64);
}

TEST_CASE("embed keeps the largest component and warns") {
  const auto graph = tmp("split.txt");
  std::ofstream(graph) << "10 11\n11 12\n12 10\n20 21\n";
  const auto out = tmp("split.csv");
  const Run r = rfa_cli("embed -i " + graph + " --dim 3 -o " + out);
  REQUIRE(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  const auto emb = read_embedding_csv(out);
  CHECK(emb.ids == std::vector<std::int64_t>{10, 11, 12});
}

TEST_CASE("exit codes") {
  CHECK(rfa_cli("").code == 1);
  CHECK(rfa_cli("frobnicate").code == 1);
  CHECK(rfa_cli("--help").code == 0);
  CHECK(rfa_cli("embed -i " + tmp("missing.txt") + " -o x.csv").code == 2);

  const auto bad = tmp("garbage.txt");
  std::ofstream(bad) << "1 2\nx y\n";
  const Run parse = rfa_cli("embed -i " + bad + " -o " + tmp("g.csv"));
  CHECK(parse.code == 2);
  CHECK(parse.err.find("line 2") != std::string::npos);

  const auto graph = tmp("codes.txt");
  REQUIRE(rfa_cli("gen barbell --n 4 --c 1 -o " + graph).code == 0);
  CHECK(rfa_cli("embed -i " + graph + " --dim 0 -o " + tmp("c.csv")).code == 1);
  CHECK(rfa_cli("embed -i " + graph + " --filter mid -o " + tmp("c.csv")).code == 1);
  const Run numeric = rfa_cli("embed -i " + graph +
                              " --tau 0 --act none --norm none --iters 9000 -o " + tmp("c.csv"));
  CHECK(numeric.code == 3);
  CHECK(numeric.err.find("[embed]") != std::string::npos);
}

TEST_CASE("spectrum writes eigenvalues and the spread summary") {
  const auto graph = tmp("spec.txt");
  REQUIRE(rfa_cli("gen barbell --n 6 --c 3 -o " + graph).code == 0);
  const auto dir = tmp("spec_out");
  REQUIRE(rfa_cli("spectrum -i " + graph + " --tau 0,1,5,10,50,100 --vectors -o " + dir).code == 0);

  const auto values = csv_lines(dir + "/eigenvalues_tau0.csv");
  REQUIRE(values.size() == 16);
  CHECK(values[0] == "index,eigenvalue");
  std::vector<double> lambda;
  for (std::size_t r = 1; r < values.size(); ++r) {
    lambda.push_back(std::stod(values[r].substr(values[r].find(',') + 1)));
  }
  CHECK(std::abs(lambda[0]) < 1e-12);
  CHECK(std::is_sorted(lambda.begin(), lambda.end()));

  const auto summary = csv_lines(dir + "/spectrum_summary.csv");
  REQUIRE(summary.size() == 7);
  CHECK(summary[0] == "tau,spread,gershgorin_radius");
  double prev = 2.0;
  for (std::size_t k = 1; k < summary.size(); ++k) {
    std::stringstream ss(summary[k]);
    std::string tau, spread, radius;
    std::getline(ss, tau, ',');
    std::getline(ss, spread, ',');
    std::getline(ss, radius, ',');
    if (k == 1) CHECK(std::stod(spread) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::stod(spread) <= std::stod(radius));
    CHECK(std::stod(spread) <= prev);
    prev = std::stod(spread);
  }
  CHECK(csv_lines(dir + "/eigenvectors_tau0.csv").size() == 16);
}

TEST_CASE("spectrum refuses graphs above the dense cap") {
  const auto graph = tmp("big.txt");
  REQUIRE(rfa_cli("gen er --n 3000 --avg-deg 4 --seed 1 -o " + graph).code == 0);
  const Run r = rfa_cli("spectrum -i " + graph + " -o " + tmp("big_out"));
  CHECK(r.code == 2);
  CHECK(r.err.find("subsample") != std::string::npos);
}

TEST_CASE("eval on one-hot embeddings is perfect") {
  const std::size_t n = 90;
  std::vector<int> y(n);
  EmbeddingMatrix onehot(n, 3);
  std::vector<std::int64_t> ids(n);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = static_cast<int>(i % 3);
    onehot(i, static_cast<std::size_t>(y[i])) = 1.0;
    ids[i] = static_cast<std::int64_t>(i) + 500;
  }
  write_embedding_csv(tmp("onehot.csv"), onehot, ids);
  save_labels(tmp("onehot.labels"), y, ids);
  const auto report = tmp("onehot.json");
  REQUIRE(rfa_cli("eval -e " + tmp("onehot.csv") + " -l " + tmp("onehot.labels") + " -o " + report)
              .code == 0);
  const auto j = nlohmann::json::parse(slurp(report));
  CHECK(j["micro_f1"]["mean"] == 1.0);
  CHECK(j["macro_f1"]["mean"] == 1.0);
  CHECK(j["trials"] == 10);
}

TEST_CASE("eval on shuffled labels sits at chance") {
  const std::size_t n = 2000;
  std::vector<int> y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = static_cast<int>(i % 4);
  std::mt19937_64 rng(4);
  std::shuffle(y.begin(), y.end(), rng);
  std::vector<std::int64_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  write_embedding_csv(tmp("noise.csv"), init_noise(n, 16, 2), ids);
  save_labels(tmp("noise.labels"), y, ids);
  const auto report = tmp("noise.json");
  REQUIRE(rfa_cli("eval -e " + tmp("noise.csv") + " -l " + tmp("noise.labels") +
                  " --trials 3 -o " + report)
              .code == 0);
  const auto j = nlohmann::json::parse(slurp(report));
  CHECK(std::abs(j["micro_f1"]["mean"].get<double>() - 0.25) <= 0.05);
}

TEST_CASE("eval reports mismatched ids") {
  const std::vector<std::int64_t> ids{1, 2, 3, 4};
  write_embedding_csv(tmp("few.csv"), init_noise(4, 2, 1), ids);
  std::ofstream(tmp("few.labels")) << "1 0\n2 1\n3 0\n4 1\n77 0\n";
  const Run r = rfa_cli("eval -e " + tmp("few.csv") + " -l " + tmp("few.labels") + " -o " +
                        tmp("few.json"));
  CHECK(r.code == 2);
  CHECK(r.err.find("77") != std::string::npos);
}

TEST_CASE("bench writes one row per size and marks failures") {
  const auto one = tmp("bench1.csv");
  const auto two = tmp("bench2.csv");
  const std::string args = "bench --n-list 500,1000 --dim 8 --iters 2 ";
  REQUIRE(rfa_cli(args + "--repeat 1 -o " + one).code == 0);
  REQUIRE(rfa_cli(args + "--repeat 2 -o " + two).code == 0);
  const auto a = csv_lines(one);
  const auto b = csv_lines(two);
  REQUIRE(a.size() == 3);
  REQUIRE(b.size() == 3);
  CHECK(a[0] == "n,m,gen_sec,embed_sec");
  for (std::size_t k = 1; k < 3; ++k) {
    CHECK(a[k].substr(0, a[k].find(',', a[k].find(',') + 1)) ==
          b[k].substr(0, b[k].find(',', b[k].find(',') + 1)));
  }

  const auto bad = tmp("bench_bad.csv");
  const Run r = rfa_cli("bench --n-list 1,500 --dim 4 --iters 1 --repeat 1 -o " + bad);
  CHECK(r.code == 3);
  const auto rows = csv_lines(bad);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1] == "1,ERROR,,");
  CHECK(rows[2].rfind("500,", 0) == 0);
  CHECK(rows[2].find("ERROR") == std::string::npos);
}

TEST_CASE("ntos scores a results table") {
  const auto path = tmp("results.csv");
  std::ofstream(path) << "method,time_sec,metric\nfast,1,0.4\nmid,5,0.6\nslow,10,0.8\n";
  const Run r = rfa_cli("ntos -r " + path);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("mid,5,0.6,0.277") != std::string::npos);
  CHECK(r.out.find("fast,1,0.4,0\n") != std::string::npos);
}

// Copyright 2026 The RaftGP Authors.
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
#include <string>

#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using testutil::read_file;
using testutil::TempDir;
using testutil::write_file;

namespace {

struct Run {
  int code;
  std::string out;
};

// Runs the CLI with `args`, capturing stdout; stderr is discarded.
Run cli(const TempDir& dir, const std::string& args, const std::string& env = "") {
  const auto out = dir / "stdout.txt";
  const std::string cmd = env + " \"" RAFTGP_CLI_PATH "\" " + args + " > \"" +
                          out.string() + "\" 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_file(out)};
}

std::string q(const std::filesystem::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("cli usage errors exit with 2") {
  TempDir dir("cli-usage");
  CHECK(cli(dir, "").code == 2);
  CHECK(cli(dir, "frobnicate").code == 2);
  CHECK(cli(dir, "generate").code == 2);  // --nodes required
  CHECK(cli(dir, "generate --nodes 100 --bogus 1").code == 2);
  CHECK(cli(dir, "--help").code == 0);
  CHECK(cli(dir, "generate --nodes 10 --min-degree 50 --max-degree 60 --mean-degree 55 --out-dir " +
                     q(dir.path()))
            .code == 2);
}

TEST_CASE("cli generate writes three deterministic files") {
  TempDir dir("cli-gen");
  const auto a = dir / "a";
  const auto b = dir / "b";
  const Run r = cli(dir, "generate --nodes 1000 --seed 7 --out-dir " + q(a));
  REQUIRE(r.code == 0);
  CHECK(cli(dir, "generate --nodes 1000 --seed 7 --out-dir " + q(b)).code == 0);
  for (const char* f : {"graph.edges", "graph.truth", "graph.params.json"}) {
    CHECK(std::filesystem::exists(a / f));
    CHECK(read_file(a / f) == read_file(b / f));
  }
  const auto side = nlohmann::json::parse(read_file(a / "graph.params.json"));
  const auto edges = side["num_edges"].get<long>();
  CHECK(edges >= 16900);
  CHECK(edges <= 17400);
  CHECK(side["spec"]["num_blocks"] == 11);

  CHECK(cli(dir, "generate --nodes 10 --blocks 2 --seed 1 --prefix tiny --out-dir " + q(a)).code ==
        0);
  CHECK(std::filesystem::exists(a / "tiny.truth"));
}

TEST_CASE("cli partition and evaluate") {
  TempDir dir("cli-part");
  const raftgp::Graph g = oracle::two_cliques(12);
  raftgp::save_edge_list(g, dir / "toy.edges");
  std::string truth;
  for (int v = 0; v < 24; ++v) truth += std::to_string(v) + " " + (v < 12 ? "0" : "1") + "\n";
  write_file(dir / "toy.truth", truth);

  const std::string base = "partition --graph " + q(dir / "toy.edges") + " --seed 3 --out ";
  REQUIRE(cli(dir, base + q(dir / "p1")).code == 0);
  REQUIRE(cli(dir, base + q(dir / "p2")).code == 0);
  CHECK(read_file(dir / "p1") == read_file(dir / "p2"));
  const auto p = raftgp::load_partition(dir / "p1");
  CHECK(p.num_blocks() == 2);
  const auto report = nlohmann::json::parse(read_file(dir / "p1.report.json"));
  CHECK(report["num_blocks"] == 2);
  CHECK(report["timings"].contains("model_seconds"));

  const Run ev = cli(dir, "evaluate --pred " + q(dir / "toy.truth") + " --truth " +
                              q(dir / "toy.truth") + " --graph " + q(dir / "toy.edges"));
  REQUIRE(ev.code == 0);
  const auto m = nlohmann::json::parse(ev.out);
  CHECK(m["accuracy"] == 1.0);
  CHECK(m["ari"] == 1.0);
  CHECK(m["f1"] == 1.0);
  for (const char* key : {"precision", "recall", "modularity", "num_blocks_pred",
                          "num_blocks_true", "runtime_seconds"})
    CHECK(m.contains(key));

  std::string giant;
  for (int v = 0; v < 24; ++v) giant += std::to_string(v) + " 0\n";
  write_file(dir / "giant", giant);
  const auto mg = nlohmann::json::parse(
      cli(dir, "evaluate --pred " + q(dir / "giant") + " --truth " + q(dir / "toy.truth") +
                   " --graph " + q(dir / "toy.edges"))
          .out);
  CHECK(mg["recall"] == 1.0);
  CHECK(mg["precision"] < 1.0);

  // Data errors.
  write_file(dir / "short", "0 0\n1 0\n");
  CHECK(cli(dir, "evaluate --pred " + q(dir / "short") + " --truth " + q(dir / "toy.truth") +
                     " --graph " + q(dir / "toy.edges"))
            .code == 3);
  CHECK(cli(dir, "partition --graph " + q(dir / "missing") + " --out " + q(dir / "x")).code == 3);
  write_file(dir / "bad.edges", "0 1\nfoo\n");
  CHECK(cli(dir, "partition --graph " + q(dir / "bad.edges") + " --out " + q(dir / "x")).code ==
        3);
  // Usage errors.
  CHECK(cli(dir, base + q(dir / "x") + " --variant nope").code == 2);
  CHECK(cli(dir, base + q(dir / "x") + " --layers 16").code == 2);
  CHECK(cli(dir, base + q(dir / "x") + " --features z").code == 2);
}

TEST_CASE("cli no-gnn ablation reports negligible embedding time") {
  TempDir dir("cli-ablate");
  REQUIRE(cli(dir, "generate --nodes 500 --seed 2 --out-dir " + q(dir.path())).code == 0);
  REQUIRE(cli(dir, "partition --variant ablate-no-gnn --graph " + q(dir / "graph.edges") +
                       " --truth " + q(dir / "graph.truth") + " --out " + q(dir / "p"))
              .code == 0);
  const auto report = nlohmann::json::parse(read_file(dir / "p.report.json"));
  CHECK(report["timings"]["emb_seconds"].get<double>() < 1e-3);
  CHECK(report["variant"] == "ablate-no-gnn-c");
  CHECK(report.contains("metrics"));
}

TEST_CASE("cli bench with one seed and thread cap") {
  TempDir dir("cli-bench");
  const Run r = cli(dir, "bench --nodes 300 --seeds 1 --seed 5 --json " + q(dir / "b.json"),
                    "RAFTGP_THREADS=1");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("mean") != std::string::npos);
  const auto j = nlohmann::json::parse(read_file(dir / "b.json"));
  CHECK(j["successes"] == 1);
  CHECK(j["mean"]["metrics"]["ari"] == j["runs"][0]["metrics"]["ari"]);
  CHECK(cli(dir, "bench --nodes 300 --seeds 0").code == 2);
  CHECK(cli(dir, "bench --nodes 300 --seeds 2 --layers 8").code == 2);
}

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

using Json = nlohmann::json;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(TRESOLVE_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data_file(const std::string& name) {
  return std::string(TRES_DATA_DIR) + "/" + name;
}

std::string write_temp(const std::string& name, const std::string& content) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("matroid subcommand prints the table") {
    auto r = run_cli("matroid " + data_file("example12.json"));
    CHECK(r.code == 0);
    CHECK(contains(r.out, "circuits (3): {1,2} {1,3,4} {2,3,4}"));
    CHECK(contains(r.out, "level 1: {1,2,3,4}  rank 2  mult 1"));
    CHECK(contains(r.out, "T-partition of the ground set: {1} {2} {3,4}"));

    auto j = Json::parse(run_cli("matroid " + data_file("example12.json") + " --json").out);
    CHECK(j["rank"] == 2);
    CHECK(j["circuits"] == Json::parse("[[0,1],[0,2,3],[1,2,3]]"));
    CHECK(j["t_partition"] == Json::parse("[[0],[1],[2,3]]"));
    CHECK(j["t_flats"].size() == 4);
  }

  TEST_CASE("matroid chains dump") {
    auto r = run_cli("matroid " + data_file("example12.json") + " --dump-chains");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "chains:"));
    CHECK(contains(r.out, "{1,2} < {1,2,3,4}"));

    auto j = Json::parse(
        run_cli("matroid " + data_file("example12.json") + " --dump-chains --json").out);
    REQUIRE(j.contains("chains"));
    CHECK(j["chains"].size() == 4);
  }

  TEST_CASE("tcomplex subcommand verifies the running example") {
    auto r = run_cli("tcomplex " + data_file("example12.json") + " --verify");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "T^+ dims (hdeg 3..0): 1 3 4 2"));
    CHECK(contains(r.out, "check complex-property: ok"));
    CHECK(contains(r.out, "check tplus-acyclic: ok"));
    CHECK(contains(r.out, "check augmentation-kernel: ok"));
    CHECK(contains(r.out, "result: ok"));

    auto u = run_cli("tcomplex " + data_file("uniform25.json") + " --verify");
    CHECK(u.code == 0);
    CHECK(contains(u.out, "T^+ dims (hdeg 4..0): 3 10 10 5 2"));
    CHECK(contains(u.out, "result: ok"));
  }

  TEST_CASE("resolve subcommand emits the graded example") {
    auto r = run_cli("resolve " + data_file("example77.json") + " --verify --json");
    CHECK(r.code == 0);
    auto j = Json::parse(r.out);
    CHECK(j["ok"] == true);
    CHECK(j["resolution"]["ranks"] == Json::parse("[2,4,3,1]"));
    CHECK(j["resolution"]["pd_bound"] == 3);
    CHECK(j["resolution"]["rank_coker"] == 0);
    auto& top = j["resolution"]["components"][3];
    CHECK(top["generators"][0]["degree"] == Json::parse("[3,3,3]"));
    CHECK(top["generators"][0]["tflat"] == Json::parse("[0,1,2,3]"));
    auto& phi3 = j["resolution"]["matrices"][2];
    REQUIRE(phi3["hdeg"] == 3);
    CHECK(phi3["entries"][0]["coeff"] == "-1");
    CHECK(phi3["entries"][0]["exp"] == Json::parse("[0,0,2]"));
    CHECK(phi3["entries"][1]["coeff"] == "1");
    CHECK(phi3["entries"][1]["exp"] == Json::parse("[0,1,0]"));
    std::vector<std::string> ids;
    for (const auto& c : j["checks"]) {
      ids.push_back(c["id"]);
      CHECK(c["ok"] == true);
    }
    CHECK(ids == std::vector<std::string>{"presentation-homogeneous", "resolution-homogeneous",
                                          "resolution-complex", "strand-exactness", "pd-bound"});

    auto h = run_cli("resolve " + data_file("example77.json"));
    CHECK(h.code == 0);
    CHECK(contains(h.out, "ranks: 2 4 3 1   (length 3)"));
    CHECK(contains(h.out, "{1,2}:(3,3,1)"));

    auto t = Json::parse(run_cli("resolve " + data_file("taylor.json") + " --json").out);
    CHECK(t["resolution"]["ranks"] == Json::parse("[1,3,3,1]"));
  }

  TEST_CASE("emitted documents re-verify identically") {
    auto emitted = run_cli("resolve " + data_file("example77.json") + " --json");
    REQUIRE(emitted.code == 0);
    auto path = write_temp("tres_cli_roundtrip.json", emitted.out);
    auto again = run_cli("verify " + path + " --json");
    auto direct = run_cli("verify " + data_file("example77.json") + " --json");
    CHECK(again.code == 0);
    CHECK(direct.code == 0);
    CHECK(again.out == direct.out);

    auto emitted2 = run_cli("tcomplex " + data_file("example12.json") + " --json");
    REQUIRE(emitted2.code == 0);
    auto path2 = write_temp("tres_cli_roundtrip2.json", emitted2.out);
    CHECK(run_cli("verify " + path2 + " --json").out ==
          run_cli("verify " + data_file("example12.json") + " --json").out);
    std::filesystem::remove(path);
    std::filesystem::remove(path2);
  }

  TEST_CASE("verify subcommand covers both layers") {
    auto r = run_cli("verify " + data_file("example12.json"));
    CHECK(r.code == 0);
    CHECK(contains(r.out, "check complex-property: ok"));
    CHECK(!contains(r.out, "strand-exactness"));

    auto g = run_cli("verify " + data_file("example77.json"));
    CHECK(g.code == 0);
    CHECK(contains(g.out, "check strand-exactness: ok"));
    CHECK(contains(g.out, "check pd-bound: ok  (length 3 <= 3)"));
  }

  TEST_CASE("prime field override") {
    auto r = run_cli("matroid " + data_file("example12.json") + " --field fp:5");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "field: F_5"));
    CHECK(contains(r.out, "circuits (3): {1,2} {1,3,4} {2,3,4}"));

    CHECK(run_cli("matroid " + data_file("example12.json") + " --field fp:4").code == 2);
    CHECK(run_cli("matroid " + data_file("example12.json") + " --field zz").code == 2);
  }

  TEST_CASE("check failures exit 1") {
    auto path = write_temp("tres_cli_inhomogeneous.json",
                           R"({"matrix": [["1"]], "ring_vars": 1,
                               "source_degrees": [[0]], "target_degrees": [[1]]})");
    auto r = run_cli("verify " + path);
    CHECK(r.code == 1);
    CHECK(contains(r.out, "check presentation-homogeneous: FAIL"));
    CHECK(contains(r.out, "result: FAIL"));
    CHECK(contains(r.out, "resolution checks skipped"));
    CHECK(run_cli("resolve " + path).code == 2);
    std::filesystem::remove(path);
  }

  TEST_CASE("input errors exit 2") {
    CHECK(run_cli("matroid /nonexistent.json").code == 2);
    CHECK(run_cli("resolve " + data_file("example12.json")).code == 2);
    CHECK(run_cli("matroid " + data_file("example12.json") + " --max-ground-set 3").code == 2);
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("frobnicate x.json").code == 2);

    auto bad = write_temp("tres_cli_bad.json", "{ not json");
    CHECK(run_cli("matroid " + bad).code == 2);
    auto flt = write_temp("tres_cli_float.json", R"({"matrix": [[1.5]]})");
    CHECK(run_cli("matroid " + flt).code == 2);
    auto ragged = write_temp("tres_cli_ragged.json", R"({"matrix": [["1","2"],["3"]]})");
    CHECK(run_cli("matroid " + ragged).code == 2);
    auto labels = write_temp("tres_cli_labels.json", R"({"matrix": [["1"]], "labels": ["a","b"]})");
    CHECK(run_cli("matroid " + labels).code == 2);
    auto part = write_temp("tres_cli_partial.json", R"({"matrix": [["1"]], "ring_vars": 2})");
    CHECK(run_cli("resolve " + part).code == 2);
    std::filesystem::remove(bad);
    std::filesystem::remove(flt);
    std::filesystem::remove(ragged);
    std::filesystem::remove(labels);
    std::filesystem::remove(part);
  }
}

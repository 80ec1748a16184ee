#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + COMMLAB_BIN + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("nf") {
  const auto r = run("nf --group ex3 --word \"t^-1 x^2 t\"");
  CHECK(r.code == 0);
  CHECK(r.out == "x^4\n");
  const auto j = json_of(run("nf --group bs:1,2 --word \"t^-1 x t\" --format json"));
  CHECK(j["normalForm"] == "x^2");
}

TEST_CASE("usage and spec errors exit 1") {
  CHECK(run("nf --group ex3").code == 1);
  CHECK(run("nf --group nosuch:3 --word x").code == 1);
  CHECK(run("nf --group free:2 --word \"q\"").code == 1);
  CHECK(run("ball --group free:2 --radius 2 --format yaml").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("").code == 1);
}

TEST_CASE("coset graph of <x> in BS(1,2)") {
  const auto dot = run("coset-graph --group bs:1,2 --subgroup cyclic-span:x --radius 6 --format dot");
  CHECK(dot.code == 0);
  CHECK(dot.out.rfind("digraph", 0) == 0);
  const auto j = json_of(run("coset-graph --group bs:1,2 --subgroup cyclic-span:x --radius 6"));
  CHECK(j["vertices"].size() == 190);  // 1 + 3 (2^6 - 1)
  CHECK(j["tainted"] == false);
}

TEST_CASE("sampled coset graphs are tainted") {
  const auto r = run("coset-graph --group free:2 --subgroup cyclic-span:x --radius 2 --budget 2");
  CHECK(r.code == 2);
  CHECK(json_of(r)["tainted"] == true);
  CHECK(run("coset-graph --group free:2 --subgroup cyclic-span:x --radius 6 --budget 2", "COMMLAB_MAX_VERTICES=40")
            .code == 2);
}

TEST_CASE("hausdorff") {
  const auto r = run("hausdorff --group free:2 --subgroup cyclic-span:x --g y --rmax 6 --R 12");
  CHECK(r.code == 0);
  const auto j = json_of(r);
  CHECK(j["verdict"] == "GrowingEvidence");
  CHECK(j["lowerBounds"] == nlohmann::json::array({1, 2, 3, 4, 5, 6, 7}));
  CHECK(json_of(run("hausdorff --group bs:1,2 --subgroup cyclic-span:x --g t"))["verdict"] == "BoundedEvidence");
}

TEST_CASE("output does not depend on the worker count") {
  const std::string args = "hausdorff --group ex3 --subgroup base --g t --rmax 4";
  const auto one = run(args + " --workers 1"), four = run(args + " --workers 4");
  CHECK(one.code == four.code);
  CHECK(one.out == four.out);
  CHECK(run(args).out == one.out);
}

TEST_CASE("witness subcommands") {
  const std::string h = "--group bs:1,2 --subgroup cyclic-span:x";
  const auto s = run("witness search " + h + " --g t");
  CHECK(s.code == 0);
  CHECK(json_of(s)["B"] == nlohmann::json::array({"t^-1", "x t^-1"}));
  CHECK(run("witness verify " + h + " --g t").code == 0);
  CHECK(run("witness invert " + h + " --g t").code == 0);
  CHECK(run("witness transport " + h + " --g t --k \"t x^-1\"").code == 0);
  CHECK(run("witness findex " + h + " --g t --target cyclic-span:x^2 --reps 1,x --direction sub").code == 0);
  CHECK(run("witness search --group free:2 --subgroup cyclic-span:x --g y").code == 2);
}

TEST_CASE("--out writes the report") {
  const std::string path = "cli_test_out.json";
  std::remove(path.c_str());
  const auto r = run("ball --group abelian:2 --radius 2 --out " + path);
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  const auto j = nlohmann::json::parse(slurp(path));
  CHECK(j["vertices"].size() == 13);

  const auto dot = run("export --in " + path + " --format dot");
  CHECK(dot.code == 0);
  CHECK(dot.out.find("digraph") != std::string::npos);
  CHECK(nlohmann::json::parse(run("export --in " + path).out) == j);
  std::remove(path.c_str());
}

TEST_CASE("scripted examples") {
  for (int n : {1, 3}) {
    const auto r = run("paper-example --n " + std::to_string(n));
    CHECK(r.code == 0);
    CHECK(json_of(r)["pass"] == true);
  }
  CHECK(run("paper-example --n 5").code == 1);
}

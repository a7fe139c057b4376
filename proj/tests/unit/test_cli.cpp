#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunOutput {
  int status = -1;
  std::string err;
};

const char* cli_path() { return std::getenv("BALLOONS_CLI"); }

fs::path tmp_root() {
  const char* t = std::getenv("BALLOONS_TEST_TMP");
  return t ? fs::path(t) : fs::temp_directory_path() / "balloons-cli-test";
}

RunOutput run(const std::string& args, const std::string& tag) {
  const fs::path err_file = tmp_root() / (tag + ".stderr");
  fs::create_directories(tmp_root());
  const std::string cmd = std::string("\"") + cli_path() + "\" " + args + " > /dev/null 2> \"" + err_file.string() + "\"";
  const int raw = std::system(cmd.c_str());
  RunOutput out;
  out.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(err_file);
  std::stringstream buf;
  buf << in.rdbuf();
  out.err = buf.str();
  return out;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = tmp_root() / name;
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("simulate is reproducible") {
  if (!cli_path()) return;
  const fs::path a = fresh_dir("sim-a"), b = fresh_dir("sim-b");
  const std::string base = "simulate --space euclidean --dim 2 --window 500 --seed 7 --t-grid 0:20:1 --out ";
  REQUIRE(run(base + "\"" + a.string() + "\"", "sim-a").status == 0);
  REQUIRE(run(base + "\"" + b.string() + "\"", "sim-b").status == 0);
  REQUIRE(fs::exists(a / "summary.json"));
  CHECK(slurp(a / "summary.json") == slurp(b / "summary.json"));

  const json manifest = json::parse(slurp(a / "manifest.json"));
  CHECK(manifest["command"] == "simulate");
  CHECK(manifest["seed"] == 7);
  CHECK(manifest["verifier_violations"] == 0);

  // replaying the manifest reproduces every artifact
  const fs::path c = fresh_dir("sim-replay");
  REQUIRE(run("simulate --config \"" + (a / "manifest.json").string() + "\" --out \"" + c.string() + "\"", "sim-c")
              .status == 0);
  CHECK(slurp(c / "summary.json") == slurp(a / "summary.json"));
}

TEST_CASE("a manifest from another command is rejected") {
  if (!cli_path()) return;
  const fs::path a = fresh_dir("gap-src");
  REQUIRE(run("verify-gap --d 3:4 --t 1:2 --out \"" + a.string() + "\"", "gap-src").status == 0);
  const fs::path b = fresh_dir("gap-bad");
  const RunOutput r = run("simulate --config \"" + (a / "manifest.json").string() + "\" --out \"" + b.string() + "\"",
                          "gap-bad");
  CHECK(r.status == 2);
  CHECK(json::parse(r.err)["error"] == "invalid-input");
}

TEST_CASE("invalid arguments fail cleanly") {
  if (!cli_path()) return;
  struct Bad {
    const char* args;
    const char* code;
  };
  const Bad cases[] = {
      {"simulate --space sphere", "invalid-argument"},
      {"simulate --window -3", "invalid-argument"},
      {"simulate --t-grid 5:1:1", "invalid-argument"},
      {"treesep --n 7", "invalid-argument"},
      {"simulate --no-such-flag 1", "invalid-argument"},
  };
  int i = 0;
  for (const Bad& c : cases) {
    const fs::path out = fresh_dir("bad-" + std::to_string(i));
    const RunOutput r = run(std::string(c.args) + " --out \"" + out.string() + "\"", "bad-" + std::to_string(i++));
    CAPTURE(c.args);
    CHECK(r.status == 2);
    json j;
    REQUIRE_NOTHROW(j = json::parse(r.err));
    CHECK(j["error"].get<std::string>() == c.code);
    CHECK(j.contains("message"));
    CHECK_FALSE(fs::exists(out));
  }
}

TEST_CASE("render three points on a line") {
  if (!cli_path()) return;
  const fs::path out = fresh_dir("render");
  REQUIRE(run("render --points \"0,0;1,0;3,0\" --t 1 --format svg --out \"" + out.string() + "\"", "render").status == 0);
  const std::string svg = slurp(out / "balloons.svg");
  auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = svg.find(needle); pos != std::string::npos; pos = svg.find(needle, pos + 1)) ++n;
    return n;
  };
  CHECK(count("class=\"popped\"") == 2);
  CHECK(count("class=\"pair\"") == 1);
  CHECK(count("class=\"active\"") == 1);
  const json manifest = json::parse(slurp(out / "manifest.json"));
  CHECK(manifest["summary"]["active"] == 1);
  CHECK(manifest["summary"]["popped_pairs"] == 1);
}

TEST_CASE("verify-gap table") {
  if (!cli_path()) return;
  const fs::path out = fresh_dir("gap");
  REQUIRE(run("verify-gap --d 3:10 --t 1:8 --out \"" + out.string() + "\"", "gap").status == 0);
  const json table = json::parse(slurp(out / "gap.json"));
  CHECK(table.size() == 64);
  int feasible = 0;
  for (const auto& row : table) {
    if (row["infeasible"].get<bool>()) continue;
    ++feasible;
    CHECK(row["margin"].get<double>() > 0.0);
  }
  CHECK(feasible > 0);
}

}  // TEST_SUITE

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

std::string cli() {
  const char* p = std::getenv("CLOSURELAB_CLI");
  REQUIRE_MESSAGE(p != nullptr, "CLOSURELAB_CLI must point at the closurelab binary");
  return p;
}

std::string plugins_dir() { return std::string(CLOSURELAB_DATA_DIR) + "/../plugins"; }

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + (env.empty() ? "" : " ") + cli() + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json run_json(const std::string& args, int expect_code) {
  const Run r = run(args + " --json");
  CHECK(r.code == expect_code);
  return nlohmann::json::parse(r.out);
}

bool has_skip(const nlohmann::json& rep, const std::string& reason_part, bool exact = false) {
  for (const auto& c : rep["checks"]) {
    if (c["status"] != "skip") continue;
    const auto reason = c["values"]["reason"].get<std::string>();
    if (exact ? reason == reason_part : reason.find(reason_part) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("verify-closure reproduces the laguerre {1^I} data") {
  const auto rep = run_json("verify-closure --family L --D 1I --Y 1", 0);
  CHECK(rep["summary"]["fail"] == 0);
  const auto& R = rep["data"]["closure"]["R"];
  CHECK(R == nlohmann::json::array({"-1024", "0", "80", "0"}));
  CHECK(rep["tool"].get<std::string>().rfind("closurelab", 0) == 0);
  const auto sym = run_json("verify-closure --family L --D 1I --mode symbolic", 0);
  CHECK(sym["data"]["closure"]["mode"] == "symbolic");
  CHECK(sym["data"]["closure"]["R_-1"] == rep["data"]["closure"]["R_-1"]);
}

TEST_CASE("verify-closure with Y=eta^2 gives K=8") {
  const auto rep = run_json("verify-closure --family L --D 1I --Y eta^2", 0);
  CHECK(rep["data"]["closure"]["K"] == 8);
  CHECK(rep["data"]["closure"]["R"][0] == "-37748736");
}

TEST_CASE("verify-closure for W is spectral-level only") {
  const auto rep = run_json("verify-closure --family W --D 1I", 0);
  bool notice = false;
  for (const auto& n : rep["notices"]) notice = notice || n == "operator-level: plugin required";
  CHECK(notice);
  CHECK(rep["summary"]["pass"].get<int>() > 0);
}

TEST_CASE("verify-closure at a sample and with a plugin") {
  run_json("verify-closure --family J --D 1II --params g=2 h=3", 0);
  const auto rep = run_json("verify-closure --plugin " + plugins_dir() + "/L_2I.json", 0);
  CHECK(rep["data"]["closure"]["K"] == 6);
  const auto low = run_json("verify-closure --family L --D 1I --params g=7/3 --K 3", 1);
  CHECK(has_skip(low, "K overridden"));
}

TEST_CASE("recurrence tables and the wrong-X control") {
  const auto rep = run_json("recurrence --family L --D 1I --n-max 6", 0);
  CHECK(rep["data"]["r"]["0"]["2"] == "1");
  const auto bad = run_json("recurrence --family L --D 1I --X eta --n-max 2", 1);
  bool remainder = false;
  for (const auto& c : bad["checks"])
    remainder = remainder || (c["status"] == "fail" && c["values"].value("error", "") == "NonzeroRemainder");
  CHECK(remainder);
}

TEST_CASE("spectrum: worked example, degenerate control, families") {
  const auto rep = run_json("spectrum --alphas 2,-3", 0);
  CHECK(rep["data"]["R"] == nlohmann::json::array({"6", "-1"}));
  CHECK(rep["data"]["eigen"]["P"] == nlohmann::json::parse(R"([["3","-2"],["1","1"]])"));
  CHECK(rep["data"]["eigen"]["det_P"] == "5");
  const auto deg = run_json("spectrum --alphas 2,2", 1);
  CHECK(deg["checks"][0]["values"]["error"] == "DegenerateSpectrum");
  run_json("spectrum --alphas 0,3", 1);
  run_json("spectrum --family L --D 1I", 0);
  run_json("spectrum --family AW --D 1I --n-max 3", 0);
}

TEST_CASE("heisenberg suite") { run_json("heisenberg --family L --D 1I --n-max 4", 0); }

TEST_CASE("appendix-b with and without plugins") {
  const auto bare = run_json("appendix-b --family L", 0);
  CHECK(has_skip(bare, "plugin required", true));
  CHECK(has_skip(bare, "extension target"));
  const auto full = run_json("appendix-b --plugin " + plugins_dir(), 0);
  CHECK_FALSE(has_skip(full, "plugin required", true));
  bool erratum = false;
  for (const auto& c : full["checks"])
    erratum = erratum || (c["id"] == "J:{1I,2I} regenerated" && c["values"]["verdict"] == "matches-erratum");
  CHECK(erratum);
  CHECK(has_skip(full, "reference only"));
}

TEST_CASE("plugin-validate") {
  run_json("plugin-validate --plugin " + plugins_dir() + "/J_2II.json", 0);
  std::ifstream in(plugins_dir() + "/L_1I.json");
  auto doc = nlohmann::json::parse(in);
  doc["energies"] = nlohmann::json::array({"0"});
  const auto path = (std::filesystem::temp_directory_path() / "closurelab_bad_plugin.json").string();
  std::ofstream(path) << doc.dump();
  CHECK(run("plugin-validate --plugin " + path).code == 2);
  std::ofstream(path) << "{not json";
  CHECK(run("plugin-validate --plugin " + path).code == 2);
  std::filesystem::remove(path);
}

TEST_CASE("configuration errors exit with 2") {
  CHECK(run("verify-closure --family Q").code == 2);
  CHECK(run("verify-closure --family L --D 1I --Y eta^-1").code == 2);
  CHECK(run("verify-closure --family L --D 1I --Y x").code == 2);
  CHECK(run("verify-closure --family L --D 1I --params g=-2").code == 2);
  CHECK(run("verify-closure --family L --D 1I --params q=1/2").code == 2);
  CHECK(run("verify-closure --family L --D 2I").code == 2);
  CHECK(run("heisenberg --family AW --D 1I").code == 2);
  CHECK(run("verify-closure --family J --D 1I --params g=1 h=1/2").code == 2);
  CHECK(run("spectrum --random 3", "CLOSURELAB_SEED=abc").code == 2);
  CHECK(run("no-such-command").code == 2);
}

TEST_CASE("reports are byte-stable and the seed is honoured") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto a = (dir / "closurelab_rep_a.json").string(), b = (dir / "closurelab_rep_b.json").string();
  CHECK(run("verify-closure --family J --D 1I --report " + a, "CLOSURELAB_SEED=17").code == 0);
  CHECK(run("verify-closure --family J --D 1I --report " + b, "CLOSURELAB_SEED=17").code == 0);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const std::string ra = slurp(a);
  CHECK(!ra.empty());
  CHECK(ra == slurp(b));
  CHECK(nlohmann::json::parse(ra)["data"]["seed"] == "17");
  std::filesystem::remove(a);
  std::filesystem::remove(b);
}

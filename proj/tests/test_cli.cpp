#include "commands.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dioph;
using namespace dioph::cli;

namespace {

Config configOf(const std::vector<std::string>& sets) { return loadConfig("", sets); }

struct Run {
  int code = -1;
  std::string out;
};

// Runs the installed binary; skipped when the path is not provided.
Run runBinary(const std::string& args) {
  const char* bin = std::getenv("DIOPH_BIN");
  Run r;
  if (!bin) return r;
  std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("height, member, angles") {
  GlobalOptions g;
  CHECK(cmdHeight("1,0,1;0,1,1").summary["heightSq"] == "3");
  CHECK(cmdMember("1,1,2", "1,0,1;0,1,1").summary["verdict"] == "InB");
  CHECK(cmdMember("1,1,1", "1,0,0;0,1,0").summary["verdict"] == "Inconclusive");
  auto ang = cmdAngles("1,0", "1,1", g).summary;
  CHECK(ang["omegas"][0]["sinSq"] == "1/2");
  CHECK_THROWS_AS(cmdHeight("1,0;1"), ValidationError);
}

TEST_CASE("constructions") {
  GlobalOptions g;
  auto line = cmdConstructLine(configOf({"line.n=3", "line.gamma=3,4"}), g);
  CHECK(line.exitCode == kOk);
  CHECK(line.summary["predictions"][0]["mu"] == "4");
  CHECK(line.summary["predictions"][1]["mu"] == "12");

  g.mode = Mode::Relaxed;
  auto blocks = cmdConstructBlocks(configOf({"blocks.d=2", "blocks.m=2", "blocks.beta=5,4;26,25"}), g);
  CHECK(blocks.exitCode == kOk);
  bool found = false;
  for (const auto& p : blocks.summary["predictions"])
    if (p["e"] == 3 && p["k"] == 2) {
      CHECK(p["mu"] == "260/23");
      found = true;
    }
  CHECK(found);

  g.mode = Mode::Strict;
  auto strict = cmdConstructBlocks(configOf({"blocks.d=2", "blocks.m=2", "blocks.beta=5,4;26,25"}), g);
  CHECK(strict.exitCode == kValidation);
  CHECK(strict.summary["violations"].size() > 0);

  CHECK_THROWS_AS(cmdConstructLine(configOf({"line.n=3", "line.gamma=3", "line.colour=red"}), g), ValidationError);
}

TEST_CASE("estimate against the line formula") {
  GlobalOptions g;
  const std::vector<std::string> base{"scan.n=2", "target.kind=line", "target.gamma=3", "target.mode=relaxed",
                                      "estimate.n_lo=2", "estimate.n_hi=6"};
  auto ok = cmdEstimate(configOf(base), g, "1/10");
  CHECK(ok.exitCode == kOk);
  CHECK(ok.summary["pass"] == true);

  auto wrong = base;
  wrong.push_back("estimate.prediction=5");
  auto bad = cmdEstimate(configOf(wrong), g, "1/10");
  CHECK(bad.exitCode == kTolerance);
  CHECK(bad.summary["pass"] == false);

  auto again = cmdEstimate(configOf(base), g, "1/10");
  CHECK(sha256Hex(ok.files["records.csv"]) == sha256Hex(again.files["records.csv"]));
}

TEST_CASE("spectrum certificates") {
  GlobalOptions g;
  CHECK(cmdSpectrumCertify("min-angle", 6, 2, "", 5, g).summary["level"] == "triangular");
  auto last = cmdSpectrumCertify("last-angle-d", 4, 2, "", 5, g).summary["level"];
  CHECK((last == "triangular" || last == "genericRank"));
  CHECK_THROWS_AS(cmdSpectrumCertify("min-angle", 5, 2, "", 5, g), ValidationError);
}

TEST_CASE("config parsing") {
  auto cfg = Config::parse("# comment\n[scan]\nn = 3\ne=1\n\n[target]\ngamma = 3, 4\n");
  CHECK(cfg.getInt("scan.n") == 3);
  CHECK(cfg.getRationalList("target.gamma") == std::vector<BigRat>{3, 4});
  try {
    Config::parse("[scan]\nn = 3\nthis line has no equals\n");
    FAIL("expected a parse error");
  } catch (const ConfigParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() >= 1);
  }
  CHECK_THROWS_AS(Config::parse("[scan\nn=1\n"), ConfigParseError);
  auto over = loadConfig("", {"scan.n=4"});
  CHECK(over.getInt("scan.n") == 4);
  CHECK_THROWS_AS(loadConfig("", {"no-dot=1"}), ValidationError);
  CHECK_THROWS_AS(Config::parse("[a]\nk = x\n").getInt("a.k"), ValidationError);
}

TEST_CASE("binary: exit codes and reproducible outputs") {
  if (!std::getenv("DIOPH_BIN")) return;
  auto h = runBinary("height --basis \"1,0,1;0,1,1\"");
  CHECK(h.code == 0);
  CHECK(h.out.find("\"heightSq\": \"3\"") != std::string::npos);
  CHECK(runBinary("spectrum-certify --family min-angle --n 5 --d 2").code == 2);
  CHECK(runBinary("construct-blocks --set blocks.d=2 --set blocks.m=2 --set \"blocks.beta=5,4;26,25\"").code == 2);

  const auto dir = std::filesystem::temp_directory_path() / "dioph_cli_test";
  std::filesystem::remove_all(dir);
  const std::string args = "scan --set scan.n=3 --set scan.height_sq_max=30 --set target.gamma=3 "
                           "--set target.mode=relaxed";
  auto first = runBinary("--out " + (dir / "a").string() + " " + args);
  auto second = runBinary("--workers 2 --out " + (dir / "b").string() + " " + args);
  CHECK(first.code == 0);
  CHECK(second.code == 0);
  const auto csvA = slurp(dir / "a" / "records.csv");
  CHECK_FALSE(csvA.empty());
  CHECK(csvA == slurp(dir / "b" / "records.csv"));
  CHECK(std::filesystem::exists(dir / "a" / "manifest.json"));
  CHECK(slurp(dir / "a" / "manifest.json").find(sha256Hex(csvA)) != std::string::npos);
  std::filesystem::remove_all(dir);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <sys/wait.h>
#include <unistd.h>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "seqevolve/oracle.hpp"
#include "seqevolve/synthesizer.hpp"

namespace fs = std::filesystem;
using namespace seqevolve;
namespace st = seqevolve::testing;

namespace {

std::string bin() {
  const char* b = std::getenv("SEQEVOLVE_BIN");
  REQUIRE(b != nullptr);
  return b;
}

int run(const std::string& args, const fs::path& log) {
  std::string cmd = bin() + " " + args + " >" + log.string() + " 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("seqevolve_cli_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

fs::path write_toggle(const TempDir& dir) {
  fs::path p = dir.path / "toggle.json";
  std::ofstream(p) << st::toggle_fsm_text();
  return p;
}

}  // namespace

TEST_CASE("missing required flag exits 2 with usage") {
  TempDir dir;
  fs::path log = dir.path / "log";
  CHECK(run("evolve --out " + (dir.path / "o").string(), log) == 2);
  CHECK(run("evolve", log) == 2);
  CHECK(run("show --circuit x.json --format nope", log) == 2);
}

TEST_CASE("verify exits 2 on unreadable files") {
  TempDir dir;
  CHECK(run("verify --circuit /nonexistent.json --fsm /nonexistent.json",
            dir.path / "log") == 2);
}

TEST_CASE("benchmark subcommand writes the detector FSM") {
  TempDir dir;
  fs::path out = dir.path / "seqdet6.json";
  CHECK(run("benchmark --out " + out.string(), dir.path / "log") == 0);
  FsmSpec spec = parse_fsm(slurp(out));
  CHECK(spec.name == "seqdet6");
  CHECK(spec.states.size() == 8);
}

TEST_CASE("evolve on the toggle machine produces all artifacts and verifies") {
  TempDir dir;
  fs::path fsm = write_toggle(dir);
  fs::path out = dir.path / "run1";
  int code = run("evolve --fsm " + fsm.string() +
                     " --rows 2 --cols 2 --runs 3 --seed 42 --max-gens 4000 --stall 1000 --out " +
                     out.string(),
                 dir.path / "log");
  CHECK(code == 0);
  CHECK(fs::exists(out / "circuit.json"));
  CHECK(fs::exists(out / "expressions.txt"));
  CHECK(fs::exists(out / "report.json"));
  CHECK(fs::exists(out / "stats.csv"));

  std::string csv = slurp(out / "stats.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 3);  // header + targets*runs

  // the written circuit verifies via the CLI too
  CHECK(run("verify --circuit " + (out / "circuit.json").string() + " --fsm " + fsm.string(),
            dir.path / "log2") == 0);

  // show formats
  fs::path showlog = dir.path / "show";
  CHECK(run("show --circuit " + (out / "circuit.json").string() + " --format expr", showlog) ==
        0);
  CHECK(slurp(showlog).find("=") != std::string::npos);
  CHECK(run("show --circuit " + (out / "circuit.json").string() + " --format dot", showlog) ==
        0);
  CHECK(slurp(showlog).find("digraph") != std::string::npos);
  CHECK(run("show --circuit " + (out / "circuit.json").string() + " --format json", showlog) ==
        0);
}

TEST_CASE("evolve with a hopeless budget exits 1 and reports partial fitness") {
  TempDir dir;
  fs::path fsm = write_toggle(dir);
  fs::path log = dir.path / "log";
  int code = run("evolve --fsm " + fsm.string() +
                     " --rows 2 --cols 2 --runs 1 --max-gens 1 --stall 1 --seed 9 --out " +
                     (dir.path / "o").string(),
                 log);
  CHECK(code == 1);
  CHECK(slurp(log).find("best design fitness") != std::string::npos);
}

TEST_CASE("verify exits 1 on a corrupted circuit") {
  TempDir dir;
  fs::path fsm = write_toggle(dir);
  fs::path out = dir.path / "run";
  REQUIRE(run("evolve --fsm " + fsm.string() +
                  " --rows 2 --cols 2 --runs 3 --seed 42 --max-gens 4000 --stall 1000 --out " +
                  out.string(),
              dir.path / "log") == 0);
  // corrupt the Z subcircuit's tap select bits (the chromosome tail)
  nlohmann::json doc = nlohmann::json::parse(slurp(out / "circuit.json"));
  for (auto& sub : doc["subcircuits"])
    if (sub["target"] == "out:Z") {
      std::string hex = sub["chromosome_hex"].get<std::string>();
      hex.back() = hex.back() == '0' ? '8' : '0';
      sub["chromosome_hex"] = hex;
    }
  std::ofstream(out / "bad.json") << doc.dump();
  fs::path log = dir.path / "vlog";
  int code = run("verify --circuit " + (out / "bad.json").string() + " --fsm " + fsm.string(),
                 log);
  // either the corruption changed behavior (exit 1 + mismatch lines) or not (exit 0)
  CHECK((code == 0 || code == 1));
  if (code == 1) CHECK(slurp(log).find("mismatch") != std::string::npos);
}

TEST_CASE("bench writes a deterministic CSV and summary") {
  TempDir dir;
  fs::path fsm = write_toggle(dir);
  fs::path out1 = dir.path / "b1", out2 = dir.path / "b2";
  std::string flags = " --rows 2 --cols 2 --runs 4 --seed 5 --max-gens 300 --stall 100 --out ";
  CHECK(run("bench --fsm " + fsm.string() + flags + out1.string(), dir.path / "log") == 0);
  CHECK(run("bench --fsm " + fsm.string() + flags + out2.string(), dir.path / "log") == 0);
  CHECK(slurp(out1 / "stats.csv") == slurp(out2 / "stats.csv"));
  CHECK(slurp(out1 / "summary.txt") == slurp(out2 / "summary.txt"));
  std::string csv = slurp(out1 / "stats.csv");
  CHECK(csv.rfind("benchmark,target,run,seed,generations,termination,design,gates,final\n", 0) ==
        0);
}

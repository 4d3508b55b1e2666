#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "thnorm/cli.hpp"
#include "thnorm/search.hpp"

using namespace thnorm;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(THNORM_TEST_TMP) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("norm for small n") {
    const auto r = invoke({"norm", "--n", "2", "--no-cache"});
    REQUIRE(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("norm") == "2/3");
    CHECK(j.at("complete") == true);

    const auto text = invoke({"norm", "--n", "1", "--format", "text", "--no-cache"});
    CHECK(text.code == kExitOk);
    CHECK(text.out.find("norm             1  (1)") != std::string::npos);
  }

  TEST_CASE("deterministic across thread counts") {
    const fs::path dir = scratch("cli-cache");
    const auto a = invoke({"norm", "--n", "2", "--threads", "1", "--cache-dir", dir.string()});
    const auto b = invoke({"norm", "--n", "2", "--threads", "3", "--cache-dir", dir.string()});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(fs::exists(dir / "classes-n2-dihedral.bin"));
  }

  TEST_CASE("budget exit") {
    const auto r = invoke({"norm", "--n", "4", "--samples", "2", "--no-cache"});
    CHECK(r.code == kExitBudget);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("budget_exceeded") == true);
    CHECK(j.at("complete") == false);
  }

  TEST_CASE("usage errors") {
    CHECK(invoke({}).code == kExitUsage);
    CHECK(invoke({"frobnicate"}).code == kExitUsage);
    CHECK(invoke({"norm"}).code == kExitUsage);
    CHECK(invoke({"norm", "--n", "0"}).code == kExitUsage);
    CHECK(invoke({"norm", "--n", "3", "--mode", "fast"}).code == kExitUsage);
    CHECK(invoke({"norm", "--n", "4", "--mode", "paper-fast", "--no-cache"}).code == kExitUsage);
    CHECK(invoke({"bound", "--n", "3", "--volume", "-1"}).code == kExitUsage);
    CHECK(invoke({"bound", "--n", "3", "--volume", "pi^"}).code == kExitUsage);
    CHECK(invoke({"bound", "--n", "4", "--volume", "1"}).code == kExitUsage);
    CHECK(invoke({"eval"}).code == kExitUsage);
    CHECK(invoke({"eval", "/nonexistent/config"}).code == kExitUsage);
    CHECK(invoke({"verify", "--suite", "everything"}).code == kExitUsage);
    CHECK(invoke({"--help"}).code == kExitOk);
    CHECK(invoke({"--version"}).code == kExitOk);
  }

  TEST_CASE("bound") {
    const auto unit = invoke({"bound", "--n", "3", "--volume", "1", "--digits", "12"});
    REQUIRE(unit.code == kExitOk);
    CHECK(unit.out.find("45/(11*pi^3) = 0.131938095409\n") != std::string::npos);
    const auto exact = invoke({"bound", "--n", "3", "--volume", "pi^3"});
    CHECK(exact.out.find("exact        45/11\n") != std::string::npos);
    const auto surf = invoke({"bound", "--surfaces", "2", "2", "2", "--format", "json"});
    REQUIRE(surf.code == kExitOk);
    CHECK(nlohmann::json::parse(surf.out).at("exact") == "2880/11");
    CHECK(invoke({"bound", "--n", "2", "--surfaces", "2", "2", "2"}).code == kExitUsage);
    CHECK(invoke({"bound", "--n", "4", "--norm", "1/100", "--volume", "pi^4"}).out.find("exact        100") !=
          std::string::npos);
  }

  TEST_CASE("eval from file and --out") {
    const fs::path dir = scratch("cli-eval");
    const fs::path cfg = dir / "heptagon.cfg";
    std::ofstream(cfg) << "n 3\nranks 1 1 2 3 4 5 6 7\nranks 2 1 3 5 7 2 4 6\nranks 3 1 4 7 3 6 2 5\n";
    const fs::path out = dir / "result.json";
    const auto r = invoke({"eval", cfg.string(), "--format", "json", "--out", out.string()});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.empty());
    std::ifstream in(out);
    CHECK(nlohmann::json::parse(in).at("theta") == "11/45");

    std::ofstream(dir / "bad.cfg") << "n 1\nranks 1 1 2\n";
    const auto bad = invoke({"eval", (dir / "bad.cfg").string()});
    CHECK(bad.code == kExitUsage);
    CHECK(bad.err.find("line 2") != std::string::npos);
  }

  TEST_CASE("classes") {
    const auto r = invoke({"classes", "--n", "1", "--no-cache"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.rfind("dihedral classes for n = 1: 5\n", 0) == 0);
    CHECK(invoke({"classes", "--n", "2", "--kind", "paper-distinct", "--no-cache"}).code == kExitUsage);
  }

  TEST_CASE("identity verification") {
    const auto a = invoke({"verify", "--suite", "identities", "--samples", "30", "--format", "json"});
    const auto b = invoke({"verify", "--suite", "identities", "--samples", "30", "--format", "json", "--threads", "2"});
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(nlohmann::json::parse(a.out).at("passed") == true);
  }
}

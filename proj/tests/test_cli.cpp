#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "heightlab/cli.hpp"
#include "heightlab/errors.hpp"

using namespace heightlab;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "heightlab");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "heightlab_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("height command output") {
  auto r = invoke({"height", "--family", "z^2 + t", "--point", "1/2"});
  REQUIRE(r.code == kExitOk);
  auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["height"]["lo"] == "511/1024");
  CHECK(doc["height"]["hi"] == "513/1024");
}

TEST_CASE("exit codes") {
  CHECK(invoke({"height", "--family", "z^2 + ", "--point", "0"}).code == kExitDomain);
  CHECK(invoke({"height", "--family", "z + t", "--point", "0"}).code == kExitDomain);
  CHECK(invoke({"bogus"}).code == kExitDomain);
  CHECK(invoke({"height", "--family", "z^2 + t", "--point", "0", "--workers", "0"}).code == kExitDomain);
  CHECK(invoke({"preperiodic-params", "--family", "z^2+t", "--point", "0", "--pairs", "1:1"}).code ==
        kExitDomain);
  auto big = invoke({"height", "--family", "z^2 + t", "--point", "t", "--iters", "40"});
  CHECK(big.code == kExitResource);
  CHECK(big.err.find("resource error") != std::string::npos);
  auto bad = invoke({"height", "--family", "z^2 +\n t )", "--point", "0"});
  CHECK(bad.code == kExitDomain);
  CHECK(bad.err.find("line 2, column 4") != std::string::npos);
  CHECK(invoke({"--help"}).code == kExitOk);
}

TEST_CASE("every command runs") {
  const std::string quad = "z^2 + t", lat = "(z^2 - t)^2 / (4*z*(z-1)*(z-t))";
  std::vector<std::vector<std::string>> runs = {
      {"orbit", "--family", lat, "--point", "2", "--nmax", "3"},
      {"classify", "--family", lat, "--point", "t"},
      {"resultant", "--family", lat},
      {"degenerate", "--family", lat, "--lift", "2:1"},
      {"degenerate", "--family", lat, "--lift", "2:1", "--at", "1"},
      {"escape", "--family", lat, "--lift", "2:1", "--annulus", "0.1,0.5,8,8", "--radii", "0.1,0.01"},
      {"activity", "--family", quad, "--point", "0", "--grid", "-2,-1,1,1,16,16"},
      {"preperiodic-params", "--family", quad, "--point", "0", "--pairs", "3:0,3:1"},
      {"density", "--family", quad, "--point", "0", "--pairs", "2:0,4:0", "--grid", "-2,-1,1,1,16,16"},
  };
  for (const auto& args : runs) {
    CAPTURE(args[0]);
    auto r = invoke(args);
    CHECK(r.code == kExitOk);
    CHECK(nlohmann::json::accept(r.out));
  }
}

TEST_CASE("config file and flag precedence") {
  auto cfg = scratch("run.conf");
  {
    std::ofstream os(cfg);
    os << "family=z^2 + t\npoint=0\niters=6\n";
  }
  auto r = invoke({"height", "--config", cfg.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(nlohmann::json::parse(r.out)["height"]["n_used"] == 6);
  auto over = invoke({"height", "--config", cfg.string(), "--iters", "8"});
  CHECK(nlohmann::json::parse(over.out)["height"]["n_used"] == 8);
}

TEST_CASE("worker count from the environment") {
  ::setenv("HEIGHTLAB_WORKERS", "0", 1);
  CHECK(invoke({"height", "--family", "z^2 + t", "--point", "0"}).code == kExitDomain);
  ::setenv("HEIGHTLAB_WORKERS", "3", 1);
  auto a = invoke({"activity", "--family", "z^2 + t", "--point", "0", "--grid", "-2,-1,1,1,32,32"});
  ::unsetenv("HEIGHTLAB_WORKERS");
  auto b = invoke({"activity", "--family", "z^2 + t", "--point", "0", "--grid", "-2,-1,1,1,32,32"});
  CHECK(a.code == kExitOk);
  CHECK(a.out == b.out);
}

TEST_CASE("file outputs are deterministic across worker counts") {
  for (const char* fmt : {"csv", "pgm"}) {
    auto p1 = scratch(std::string("a1.") + fmt), p4 = scratch(std::string("a4.") + fmt);
    CHECK(invoke({"activity", "--family", "z^2+t", "--point", "0", "--grid", "-2,-1,1,1,40,30",
                  "--format", fmt, "--out", p1.string(), "--workers", "1"})
              .code == kExitOk);
    CHECK(invoke({"activity", "--family", "z^2+t", "--point", "0", "--grid", "-2,-1,1,1,40,30",
                  "--format", fmt, "--out", p4.string(), "--workers", "4"})
              .code == kExitOk);
    CHECK(slurp(p1) == slurp(p4));
  }
  auto pgm = slurp(scratch("a1.pgm"));
  CHECK(pgm.rfind("P5\n40 30\n255\n", 0) == 0);
  CHECK(pgm.size() == std::string("P5\n40 30\n255\n").size() + 40 * 30);
  auto csv = slurp(scratch("a1.csv"));
  CHECK(csv.rfind("re,im,first_activity,nan\n", 0) == 0);

  auto e = scratch("e.csv");
  CHECK(invoke({"escape", "--family", "(z^2 - t)^2 / (4*z*(z-1)*(z-t))", "--lift", "2:1", "--annulus",
                "0.1,0.5,4,4", "--format", "csv", "--out", e.string()})
            .code == kExitOk);
  std::istringstream lines(slurp(e));
  std::string header;
  std::getline(lines, header);
  CHECK(header == "re,im,n,G");
  std::size_t rows = 0;
  for (std::string line; std::getline(lines, line);) ++rows;
  CHECK(rows == 16 * 9);
}

TEST_CASE("installed binary matches the in-process entry point") {
  auto out = scratch("bin.json");
  std::string cmd = std::string(HEIGHTLAB_CLI_PATH) +
                    " classify --family '(z^2 - t)^2 / (4*z*(z-1)*(z-t))' --point 2 --out " + out.string();
  CHECK(std::system(cmd.c_str()) == 0);
  auto r = invoke({"classify", "--family", "(z^2 - t)^2 / (4*z*(z-1)*(z-t))", "--point", "2"});
  CHECK(slurp(out) == r.out);
  std::string fail = std::string(HEIGHTLAB_CLI_PATH) + " height --family 'z + t' --point 0 2>/dev/null";
  int status = std::system(fail.c_str());
  CHECK(WEXITSTATUS(status) == kExitDomain);
}

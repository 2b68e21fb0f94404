#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "json.hpp"
#include "qg/cli.hpp"
#include "qg/search.hpp"
#include "qg/table_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qg::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(QG_TEST_DATA_DIR) + "/" + name; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kN1 = "((x*y)*z)*y = x*(y*(z*y))";

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("qg_cli_test_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("check") {
  auto r = run({"check", "--table", data("z3plus.qg"), "--identity", kN1});
  CHECK(r.code == 0);
  CHECK(r.out == "HOLDS\n");

  r = run({"check", "--table", data("z3minus.qg"), "--identity", kN1});
  CHECK(r.code == 1);
  CHECK(r.out == "FAILS at x=0 y=0 z=1\n");

  r = run({"--format", "structured", "check", "--table", data("z3minus.qg"), "--identity", kN1});
  CHECK(r.code == 1);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["holds"] == false);
  CHECK(doc["witness"]["z"] == 1);

  r = run({"check", "--table", data("z3plus.qg"), "--identity", "x*(x\\y) = y", "--format", "structured"});
  CHECK(r.code == 0);
}

TEST_CASE("check with an identity file") {
  auto r = run({"check", "--table", data("z3plus.qg"), "--identity-file", data("identities.txt")});
  CHECK(r.code == 0);
  CHECK(r.out.find("((x*y)*z)*y = x*(y*(z*y)): HOLDS\n") != std::string::npos);
  r = run({"check", "--table", data("z3minus.qg"), "--identity-file", data("identities.txt")});
  CHECK(r.code == 1);
  CHECK(r.out.find("((x*y)*z)*y = x*(y*(z*y)): FAILS at x=0 y=0 z=1\n") != std::string::npos);
  CHECK(r.out.find("x*(x\\y) = y: HOLDS\n") != std::string::npos);
  r = run({"--format", "structured", "check", "--table", data("z3minus.qg"), "--identity-file",
           data("identities.txt")});
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["all_hold"] == false);
  CHECK(doc["verdicts"].size() == 8);
  CHECK(run({"check", "--table", data("z3plus.qg")}).code == 2);
  r = run({"count", "--order", "3", "--identity-file", data("identities.txt")});
  CHECK(r.out == "raw: 3\n");  // labeled copies of Z3: 3!/|Aut(Z3)|
}

TEST_CASE("input errors exit 2 with a diagnostic") {
  auto r = run({"check", "--table", data("z3plus.qg"), "--identity", "x*(y"});
  CHECK(r.code == 2);
  CHECK(r.err.find("at offset 4") != std::string::npos);

  r = run({"check", "--table", data("short_rows.qg"), "--identity", kN1});
  CHECK(r.code == 2);
  CHECK(r.err.find("expected 2 rows, found 1") != std::string::npos);

  r = run({"check", "--table", data("bad_entry.qg"), "--identity", kN1});
  CHECK(r.code == 2);
  CHECK(r.err.find("bad_entry.qg:3:") != std::string::npos);

  r = run({"check", "--table", data("missing.qg"), "--identity", kN1});
  CHECK(r.code == 2);

  r = run({"check", "--table", data("const2.qg"), "--identity", "x*(x\\y) = y"});
  CHECK(r.code == 2);
  CHECK(r.err.find("not a quasigroup") != std::string::npos);

  CHECK(run({"bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"count", "--order", "3", "--reduced", "--up-to-iso"}).code == 2);
  CHECK(run({"count", "--order", "9"}).code == 2);
  CHECK(run({"kunen"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("kunen on single tables") {
  auto r = run({"kunen", "--table", data("z3plus.qg")});
  CHECK(r.code == 0);
  CHECK(r.out.find("J_EQ_K              pass") != std::string::npos);
  CHECK(r.out.find("loop: yes") != std::string::npos);

  r = run({"kunen", "--table", data("z3minus.qg")});
  CHECK(r.code == 0);
  CHECK(r.out.find("N1: fails at x=0 y=0 z=1") != std::string::npos);

  r = run({"kunen", "--table", data("const2.qg")});
  CHECK(r.out.find("quasigroup: no (row 0 repeats 0)") != std::string::npos);
  CHECK(r.out.find("N1: not evaluated") != std::string::npos);

  r = run({"kunen", "--table", data("const2.qg"), "--force-n1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("N1: holds") != std::string::npos);
  CHECK(r.out.find("note: N1 holds on this non-quasigroup") != std::string::npos);
}

TEST_CASE("structured reports match the golden files") {
  const std::vector<std::pair<std::vector<std::string>, std::string>> cases{
      {{"kunen", "--table", data("z3plus.qg")}, "kunen_z3plus.json"},
      {{"kunen", "--table", data("z3minus.qg")}, "kunen_z3minus.json"},
      {{"kunen", "--table", data("const2.qg"), "--force-n1"}, "kunen_const2_forced.json"},
      {{"collapse", "--table", data("q5lin.qg")}, "collapse_q5lin.json"},
      {{"count", "--order", "3", "--up-to-iso"}, "count_order3_iso.json"},
  };
  for (const auto& [args, golden] : cases) {
    auto full = args;
    full.insert(full.begin(), {"--format", "structured"});
    const auto r = run(full);
    CHECK_MESSAGE(r.out == slurp(data("golden/" + golden)), golden);
    // Stable under re-serialization.
    CHECK(nlohmann::ordered_json::parse(r.out).dump(2) + "\n" == r.out);
  }
}

TEST_CASE("every step appears in the structured report with its witness") {
  const auto r = run({"--format", "structured", "kunen", "--table", data("klein4.qg")});
  const auto doc = nlohmann::ordered_json::parse(r.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc["steps"].items()) {
    keys.push_back(k);
    CHECK(v.contains("passed"));
    CHECK(v.contains("witness"));
  }
  CHECK(keys == std::vector<std::string>{"J_EQ_K", "EQ1_TWO_SIDED", "VALUE_IDEMPOTENT", "MAP_IDEMPOTENT", "FIX_EQ_IM",
                                         "STAR_STEP", "RIGHT_INVOLUTION", "LEFT_INVARIANCE", "COEQ_TERMINAL",
                                         "J_CONSTANT", "IDENTITY_TWO_SIDED"});
}

TEST_CASE("kunen exhaustive") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto r = run({"kunen", "--order", std::to_string(n), "--exhaustive"});
    CHECK(r.code == 0);
    qg::SearchSpec spec;
    spec.order = n;
    spec.required_identities = {qg::builtin_n1()};
    const auto count = qg::count_models(spec).raw;
    const std::string summary = "N1 models: " + std::to_string(count) + ", loops: " + std::to_string(count) +
                                ", violations: 0\n";
    CHECK(r.out.size() >= summary.size());
    CHECK(r.out.substr(r.out.size() - summary.size()) == summary);
  }
  const auto r = run({"--format", "structured", "--parallel", "2", "kunen", "--order", "4", "--exhaustive"});
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["n1_models"] == 16);
  CHECK(doc["violations"] == 0);
  CHECK(doc["models"].size() == 16);
}

TEST_CASE("enumerate and count") {
  auto r = run({"enumerate", "--order", "3"});
  CHECK(r.code == 0);
  std::istringstream in(r.out);
  CHECK(qg::read_tables(in).size() == 12);

  r = run({"enumerate", "--order", "3", "--up-to-iso", "--identity", kN1});
  CHECK(r.out == "3\n0 1 2\n1 2 0\n2 0 1\n");

  r = run({"count", "--order", "4", "--reduced"});
  CHECK(r.out == "raw: 4\n");
  r = run({"count", "--order", "4", "--identity", kN1, "--up-to-iso", "--parallel", "3"});
  CHECK(r.out == "raw: 16\niso classes: 2\n");
  r = run({"count", "--order", "2", "--no-latin"});
  CHECK(r.out == "raw: 16\n");

  r = run({"--format", "structured", "enumerate", "--order", "2"});
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["count"] == 2);
  CHECK(doc["tables"][1] == nlohmann::json::parse("[[1,0],[0,1]]"));
}

TEST_CASE("collapse") {
  auto r = run({"collapse", "--table", data("z3minus.qg")});
  CHECK(r.code == 0);
  CHECK(r.out.find("constant:       yes, value 0") != std::string::npos);
  CHECK(r.out.find("partition:      {0,1,2}") != std::string::npos);
  r = run({"collapse", "--table", data("q5lin.qg"), "--family", "right"});
  CHECK(r.out.find("coequalization: FAIL  R_0") != std::string::npos);
  CHECK(run({"collapse", "--table", data("const2.qg")}).code == 2);
  CHECK(run({"collapse", "--table", data("z3plus.qg"), "--family", "up"}).code == 2);
}

TEST_CASE("witness") {
  auto r = run({"witness", "--order", "2", "--no-latin", "--require", kN1, "--no-identity-element"});
  CHECK(r.code == 0);
  CHECK(r.out == "2\n0 0\n0 0\n");

  r = run({"witness", "--order", "4", "--up-to", "--require", kN1, "--forbid", "x\\x = y/y", "--expect-none"});
  CHECK(r.code == 0);
  CHECK(r.out == "NONE\n");

  r = run({"witness", "--order", "3", "--forbid", kN1, "--expect-none"});
  CHECK(r.code == 1);
  CHECK(r.out == "3\n0 1 2\n2 0 1\n1 2 0\n");

  r = run({"witness", "--order", "3", "--require", "x*x = x", "--require", "x*y = y*x"});
  CHECK(r.code == 0);
  CHECK(r.out == "3\n0 2 1\n2 1 0\n1 0 2\n");
}

TEST_CASE("enumeration cache") {
  TempDir dir;
  const std::vector<std::string> args{"--cache-dir", dir.path.string(), "enumerate", "--order", "4", "--identity", kN1};
  const auto first = run(args);
  CHECK(first.code == 0);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir.path)) files.push_back(e.path());
  REQUIRE(files.size() == 1);
  CHECK(run(args).out == first.out);

  // A tampered entry is rejected on load and rebuilt.
  {
    std::ofstream bad(files[0], std::ios::app);
    bad << "---\n2\n0 0\n0 0\n";
  }
  CHECK(run(args).out == first.out);
  CHECK(slurp(files[0]).find("0 0\n0 0") == std::string::npos);

  // The cache also serves kunen --exhaustive.
  const auto k = run({"--cache-dir", dir.path.string(), "kunen", "--order", "4", "--exhaustive"});
  CHECK(k.out.find("N1 models: 16, loops: 16, violations: 0") != std::string::npos);
}

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace {

std::string g_cli;
std::filesystem::path g_dir;

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the CLI with the given arguments; returns the exit code and fills
// stdout/stderr captures.
int run_cli(const std::string& args, std::string* out = nullptr,
            std::string* err = nullptr, const std::string& env = "") {
  std::filesystem::path o = g_dir / "stdout.txt";
  std::filesystem::path e = g_dir / "stderr.txt";
  std::string cmd = env + (env.empty() ? "" : " ") + g_cli + " " + args +
                    " > " + o.string() + " 2> " + e.string();
  int rc = std::system(cmd.c_str());
  if (out) *out = slurp(o);
  if (err) *err = slurp(e);
  return WEXITSTATUS(rc);
}

std::string path_of(const std::string& name) {
  return (g_dir / name).string();
}

}  // namespace

using nlohmann::json;

TEST_CASE("gen writes a market to file and stdout") {
  CHECK(run_cli("gen --family fig3 --k 2 --out " + path_of("fig3.json")) == 0);
  json m = json::parse(slurp(g_dir / "fig3.json"));
  CHECK(m["buyers"].size() == 4);
  std::string out;
  CHECK(run_cli("gen --family fig1 --n 3", &out) == 0);
  CHECK(json::parse(out)["sellers"].size() == 3);
}

TEST_CASE("solve reports exact revenue for the harmonic market") {
  run_cli("gen --family fig3 --k 2 --out " + path_of("fig3.json"));
  std::string out;
  CHECK(run_cli("solve --input " + path_of("fig3.json") + " --solver exact",
                &out) == 0);
  json r = json::parse(out);
  CHECK(r["revenue"] == "1");
  CHECK(r["certified_optimal"] == true);
  CHECK(r["solver"] == "exact");
}

TEST_CASE("identical invocations produce byte-identical output") {
  run_cli("gen --family fig3 --k 2 --out " + path_of("fig3.json"));
  std::string a, b;
  run_cli("solve --input " + path_of("fig3.json") + " --solver auto", &a);
  run_cli("solve --input " + path_of("fig3.json") + " --solver auto", &b);
  CHECK(a == b);
  CHECK(!a.empty());
}

TEST_CASE("class errors exit 1 with machine-readable detail") {
  run_cli("gen --family fig1 --n 3 --out " + path_of("fig1.json"));
  std::string err;
  CHECK(run_cli("solve --input " + path_of("fig1.json") + " --solver swsh",
                nullptr, &err) == 1);
  CHECK(json::parse(err)["error"] == "class");
}

TEST_CASE("parse errors exit 3") {
  std::ofstream(g_dir / "junk.json") << "{not json";
  std::string err;
  CHECK(run_cli("solve --input " + path_of("junk.json"), nullptr, &err) == 3);
  CHECK(json::parse(err)["error"] == "parse");
}

TEST_CASE("capacity errors exit 2 and honor the env limit") {
  run_cli("gen --family fig1 --n 3 --out " + path_of("fig1.json"));
  std::string err;
  CHECK(run_cli("solve --input " + path_of("fig1.json") + " --solver exact",
                nullptr, &err, "PLATFORM_MATCH_MAX_EXACT=2") == 2);
  CHECK(json::parse(err)["error"] == "capacity");
  // The explicit flag overrides the env var.
  CHECK(run_cli("solve --input " + path_of("fig1.json") +
                    " --solver exact --max-exact 8",
                nullptr, nullptr, "PLATFORM_MATCH_MAX_EXACT=2") == 0);
}

TEST_CASE("eval prices a configuration") {
  run_cli("gen --family fig1 --n 3 --out " + path_of("fig1.json"));
  std::ofstream(g_dir / "edges.json")
      << R"({"edges":[["b1","s1"],["b2","s2"],["b3","s3"]]})";
  std::string out;
  CHECK(run_cli("eval --input " + path_of("fig1.json") + " --edges " +
                    path_of("edges.json"),
                &out) == 0);
  json r = json::parse(out);
  CHECK(r["revenue"] == "6");
  CHECK(r["welfare"] == "6");
}

TEST_CASE("verify exits zero only for clean equilibria") {
  run_cli("gen --family fig1 --n 3 --out " + path_of("fig1.json"));
  std::ofstream(g_dir / "edges.json")
      << R"({"edges":[["b1","s1"],["b2","s2"],["b3","s3"]]})";
  std::ofstream(g_dir / "alloc.json")
      << R"([["b1","s1"],["b2","s2"],["b3","s3"]])";
  std::string out;
  CHECK(run_cli("verify --input " + path_of("fig1.json") + " --edges " +
                    path_of("edges.json") + " --allocation " +
                    path_of("alloc.json"),
                &out) == 0);
  CHECK(json::parse(out)["violations"].empty());
  // Dropping a trade breaks max-weight: violations reported, exit 1.
  std::ofstream(g_dir / "alloc.json") << R"([["b1","s1"]])";
  CHECK(run_cli("verify --input " + path_of("fig1.json") + " --edges " +
                    path_of("edges.json") + " --allocation " +
                    path_of("alloc.json"),
                &out) == 1);
  CHECK(!json::parse(out)["violations"].empty());
}

TEST_CASE("convert prints a conversion report") {
  run_cli("gen --family fig3 --k 2 --out " + path_of("fig3.json"));
  std::string out;
  CHECK(run_cli("convert --input " + path_of("fig3.json"), &out) == 0);
  json r = json::parse(out);
  CHECK(r["revenue"] == "1");
  CHECK(r["harmonic_k"] == 2);
  CHECK(r["input_delta_w"] == "3/2");
}

TEST_CASE("prm prints the welfare ratio") {
  CHECK(run_cli("gen --family fig4 --eps 1/4 --out " + path_of("fig4.json")) ==
        0);
  std::string out;
  CHECK(run_cli("prm --input " + path_of("fig4.json"), &out) == 0);
  CHECK(json::parse(out)["ratio"] == "8/5");
}

TEST_CASE("unknown flags and solvers are rejected") {
  CHECK(run_cli("solve --bogus x") != 0);
  run_cli("gen --family fig1 --n 2 --out " + path_of("f.json"));
  std::string err;
  CHECK(run_cli("solve --input " + path_of("f.json") + " --solver nope",
                nullptr, &err) == 1);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-cli>\n");
    return 1;
  }
  g_cli = argv[argc - 1];
  char tmpl[] = "/tmp/platmatch_cli_test_XXXXXX";
  g_dir = mkdtemp(tmpl);
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv);
  int rc = ctx.run();
  std::filesystem::remove_all(g_dir);
  return rc;
}

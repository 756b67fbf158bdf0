// End-to-end checks of the command-line tool: spawns the real binary against
// fixture files and inspects the JSON reports and exit codes.

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mumford/io.hpp"

using namespace mumford;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int exit_code;
  json report;     // parsed stdout when non-empty
  bool has_report;
};

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "mumford-cli-tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p);
  out << text;
}

CliRun run_cli(const std::string& args) {
  fs::path out = work_dir() / "stdout.json";
  std::string cmd = std::string(CLI_PATH) + " " + args + " > " +
                    out.string() + " 2> " + (work_dir() / "stderr.txt").string();
  int rc = std::system(cmd.c_str());
  CliRun result;
  result.exit_code = WEXITSTATUS(rc);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  result.has_report = !text.empty();
  if (result.has_report) result.report = json::parse(text);
  return result;
}

std::string fixture(const std::string& name, const std::string& text) {
  fs::path p = work_dir() / name;
  write_file(p, text);
  return p.string();
}

}  // namespace

TEST_CASE("tate-graph emits a graph that feeds the other commands") {
  CliRun tg = run_cli("tate-graph --prime 5 --m 3");
  REQUIRE(tg.exit_code == 0);
  CHECK(tg.report["schema_version"] == 1);
  REQUIRE(tg.report.contains("graph"));
  std::string graph_path = fixture("tate3.json", tg.report["graph"].dump());

  // the emitted graph re-parses (round trip through the real file)
  CHECK(graph_from_json(tg.report["graph"]).betti() == 1);

  CliRun dp = run_cli("dplus --graph " + graph_path + " --word g0");
  REQUIRE(dp.exit_code == 0);
  CHECK(dp.report["l"] == 3);
  CHECK(dp.report["l_plus"] == 2);
  CHECK(dp.report["d_plus_exp"] == 2);

  std::string unit_rep = fixture(
      "unit.json", R"({"p": 5, "rank": 1, "generators": [[["2"]]]})");
  CliRun phi =
      run_cli("phi-check --graph " + graph_path + " --rep " + unit_rep +
              " --depth 8");
  REQUIRE(phi.exit_code == 0);
  CHECK(phi.report["verdict"] == "PhiBounded");
  CHECK(phi.report["certificate"] == "integral");

  std::string growth_rep = fixture(
      "p3.json", R"({"p": 5, "rank": 1, "generators": [[["p^3"]]]})");
  CliRun phi2 =
      run_cli("phi-check --graph " + graph_path + " --rep " + growth_rep);
  REQUIRE(phi2.exit_code == 0);
  CHECK(phi2.report["verdict"] == "NotPhiBounded");
  CHECK(phi2.report["witness"] == "g0");
  CHECK(phi2.report["growth_exponent"] == "1");
}

TEST_CASE("cover pipeline on the mod-5 example") {
  std::string rep = fixture(
      "mod5.json", R"({"p": 5, "rank": 1, "generators": [[["2"]]]})");
  CliRun c = run_cli("cover --rep " + rep + " --level 1");
  REQUIRE(c.exit_code == 0);
  CHECK(c.report["group_order"] == 4);
  CHECK(c.report["kernel_rank"] == 1);
  CHECK(c.report["genus"] == 1);
  CHECK(c.report["kernel_trivial_mod_pn"] == true);

  CliRun dw = run_cli("dw-compare --rep " + rep + " --level 1");
  REQUIRE(dw.exit_code == 0);
  CHECK(dw.report["all_equal"] == true);

  CliRun tw = run_cli("tower --rep " + rep + " --levels 2");
  REQUIRE(tw.exit_code == 0);
  CHECK(tw.report["levels"][0]["quotient_order"] == 4);
  CHECK(tw.report["levels"][1]["quotient_order"] == 20);
}

TEST_CASE("rcf and integral-test commands") {
  std::string id2 =
      fixture("id2.json", R"({"p": 5, "matrix": [["1", "0"], ["0", "1"]]})");
  CliRun r = run_cli("rcf --matrix " + id2);
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.report["invariant_factors"].size() == 2);
  CHECK(r.report["invariant_factors"][0]["display"] == "X - 1");
  CHECK(r.report["canonical"][0][0] == "1");

  std::string bad = fixture(
      "nonint.json", R"({"p": 5, "matrix": [["p", "0"], ["0", "1/p"]]})");
  CliRun n = run_cli("integral-test --matrix " + bad);
  REQUIRE(n.exit_code == 0);  // a negative verdict is data
  CHECK(n.report["verdict"] == "No");
}

TEST_CASE("schottky-check and pair-classify commands") {
  std::string sch = fixture("schottky.json", R"({
    "p": 5,
    "generators": [[["p^2", "0"], ["0", "1"]]],
    "balls": [{"minus": {"center": "0", "radius_exp": -1, "complement": true},
               "plus": {"center": "0", "radius_exp": 1}}]
  })");
  CliRun s = run_cli("schottky-check --input " + sch);
  REQUIRE(s.exit_code == 0);
  CHECK(s.report["verdict"] == "GoodPosition");

  std::string pair = fixture("pair.json", R"({
    "p": 5,
    "a": [["1", "0"], ["0", "-1"]],
    "b": [["0", "1"], ["1", "0"]]
  })");
  CliRun pc = run_cli("pair-classify --input " + pair);
  REQUIRE(pc.exit_code == 0);
  CHECK(pc.report["t"]["exact"] == "1");
  CHECK(pc.report["s"]["exact"] == "0");
  CHECK(pc.report["c"] == "1");
}

TEST_CASE("category operations and iso-check") {
  std::string a = fixture(
      "repa.json", R"({"p": 5, "rank": 1, "generators": [[["2"]]]})");
  std::string b = fixture(
      "repb.json", R"({"p": 5, "rank": 1, "generators": [[["3"]]]})");
  CliRun t = run_cli("tensor --rep1 " + a + " --rep2 " + b);
  REQUIRE(t.exit_code == 0);
  CHECK(t.report["representation"]["generators"][0][0][0] == "6");
  // the emitted representation re-parses
  CHECK(rep_from_json(t.report["representation"]).rank == 1);

  CliRun d = run_cli("dual --rep " + a);
  CHECK(d.report["representation"]["generators"][0][0][0] == "1/2");

  CliRun ds = run_cli("dsum --rep1 " + a + " --rep2 " + b);
  CHECK(ds.report["representation"]["rank"] == 2);

  CliRun iso = run_cli("iso-check --rep1 " + a + " --rep2 " + b);
  REQUIRE(iso.exit_code == 0);
  CHECK(iso.report["verdict"] == "NotIsomorphic");
}

TEST_CASE("exit codes: parse errors and guards") {
  CliRun missing = run_cli("rcf --matrix /nonexistent/file.json");
  CHECK(missing.exit_code == 2);

  std::string rep = fixture(
      "guard.json", R"({"p": 5, "rank": 1, "generators": [[["2"]]]})");
  CliRun guard = run_cli("cover --rep " + rep + " --level 1 --guard 2");
  CHECK(guard.exit_code == 3);

  std::string nonint = fixture(
      "nonint_rep.json", R"({"p": 5, "rank": 1, "generators": [[["p"]]]})");
  CliRun dom = run_cli("tower --rep " + nonint);
  CHECK(dom.exit_code == 2);
}

TEST_CASE("reports are byte-identical across runs") {
  std::string rep = fixture(
      "det.json", R"({"p": 5, "rank": 1, "generators": [[["2"]]]})");
  fs::path o1 = work_dir() / "o1.json", o2 = work_dir() / "o2.json";
  std::string base = std::string(CLI_PATH) + " cover --rep " + rep +
                     " --level 1 --out ";
  REQUIRE(std::system((base + o1.string()).c_str()) == 0);
  REQUIRE(std::system((base + o2.string()).c_str()) == 0);
  std::ifstream f1(o1), f2(o2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  CHECK_FALSE(s1.str().empty());
}

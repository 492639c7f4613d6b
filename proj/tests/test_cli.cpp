#include <sstream>

#include "doctest.h"
#include "linkcalc/cli.hpp"

using namespace linkcalc;

namespace {

struct Run {
  int exit;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_command(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("trivial on the unlink exits 0") {
  Run r = cli({"trivial", "corpus:unlink3"});
  CHECK(r.exit == 0);
  CHECK(r.out.find("trivial") != std::string::npos);
}

TEST_CASE("classify hopf in JSON reports nontrivial homology") {
  Run r = cli({"classify", "corpus:hopf", "--format", "json"});
  CHECK(r.exit == 0);
  json j = json::parse(r.out);
  CHECK(j["homologically_trivial"] == false);
  CHECK(j["htb"] == "refuted");
  CHECK(j["trivial"]["verdict"] == "nontrivial");
}

TEST_CASE("small budgets surface as exit code 2") {
  Run r = cli({"trivial", "corpus:borromean", "--max-nodes", "1000"});
  CHECK(r.exit == 2);
  CHECK(r.out.find("inconclusive") != std::string::npos);
}

TEST_CASE("errors exit 1 with a message") {
  CHECK(cli({"validate", "corpus:nonesuch"}).exit == 1);
  CHECK(cli({"nonsense"}).exit == 1);
  Run r = cli({"twist", "corpus:hopf", "--component", "9"});
  CHECK(r.exit == 1);
  CHECK(r.err.find("out of range") != std::string::npos);
}

TEST_CASE("validate and invariants") {
  Run r = cli({"validate", "corpus:trefoil"});
  CHECK(r.exit == 0);
  CHECK(r.out.find("3 crossings") != std::string::npos);
  Run inv = cli({"invariants", "corpus:trefoil", "--format", "json"});
  json j = json::parse(inv.out);
  CHECK(j["writhe"] == 3);
  CHECK(j["faces"].size() == 5);
}

TEST_CASE("moves enumerate and apply through JSON") {
  Run r = cli({"moves", "corpus:kink", "--cap", "1", "--format", "json"});
  CHECK(r.exit == 0);
  json ms = json::parse(r.out);
  REQUIRE(ms.size() == 1);
  CHECK(ms[0]["kind"] == "R1Remove");
  // write the move to a file and apply it
  std::string path = "/tmp/linkcalc_cli_move.json";
  {
    std::ofstream f(path);
    f << ms[0].dump();
  }
  Run ap = cli({"moves", "corpus:kink", "--apply", path});
  CHECK(ap.exit == 0);
  CHECK(ap.out.find("O[1]") != std::string::npos);
}

TEST_CASE("reduce emits certificates and traces") {
  std::string trace = "/tmp/linkcalc_cli_trace.jsonl";
  Run r = cli({"reduce", "corpus:doublekink", "--trace", trace, "--format", "json"});
  CHECK(r.exit == 0);
  json j = json::parse(r.out);
  CHECK(j["found"] == true);
  CHECK(j["certificate"].size() == 2);
  Run nf = cli({"reduce", "corpus:trefoil", "--max-crossings", "4"});
  CHECK(nf.exit == 2);
}

TEST_CASE("unknot exit codes") {
  CHECK(cli({"unknot", "corpus:doublekink"}).exit == 0);
  CHECK(cli({"unknot", "corpus:trefoil", "--max-crossings", "5"}).exit == 2);
  CHECK(cli({"unknot", "corpus:hopf"}).exit == 1);
}

TEST_CASE("twist and slopes") {
  Run r = cli({"twist", "corpus:keychain", "--component", "3", "--q", "1"});
  CHECK(r.exit == 0);
  Run s = cli({"slopes", "corpus:borromean_round", "--slopes", "*,*,1/1", "--format", "json"});
  CHECK(s.exit == 0);
  json j = json::parse(s.out);
  CHECK(j["crossings"].size() == 6);
  CHECK(cli({"slopes", "corpus:hopf", "--slopes", "2/3,*"}).exit == 1);
}

TEST_CASE("corpus show round trips") {
  Run r = cli({"corpus", "show", "trefoil"});
  CHECK(r.exit == 0);
  LinkDiagram d = parse_pd(r.out);
  CHECK(canonical_key(d) == canonical_key(corpus_load("trefoil")));
}

TEST_CASE("stdin input") {
  // '-' reads a PD text from stdin
  std::istringstream fake("X[1,1,2,2]");
  auto* old = std::cin.rdbuf(fake.rdbuf());
  Run r = cli({"validate", "-"});
  std::cin.rdbuf(old);
  CHECK(r.exit == 0);
  CHECK(r.out.find("1 crossings") != std::string::npos);
}

TEST_CASE("exit codes and JSON schemas across the command matrix") {
  for (const auto& e : corpus()) {
    std::string ref = "corpus:" + e.name;
    Run tv = cli({"trivial", ref, "--max-nodes", "500", "--format", "json"});
    CHECK((tv.exit == 0 || tv.exit == 2));
    json jt = json::parse(tv.out);
    CHECK(jt.contains("verdict"));
    CHECK((tv.exit == 2) == (jt["verdict"] == "inconclusive"));
    if (jt["verdict"] == "nontrivial") CHECK(jt.contains("witness"));

    Run cl = cli({"classify", ref, "--max-nodes", "500", "--format", "json"});
    CHECK((cl.exit == 0 || cl.exit == 2));
    json jc = json::parse(cl.out);
    for (const char* field : {"homologically_trivial", "brunnian", "htb", "trivial", "sublinks"})
      CHECK(jc.contains(field));

    Run rd = cli({"reduce", ref, "--max-nodes", "500", "--format", "json"});
    CHECK((rd.exit == 0 || rd.exit == 2));
    json jr = json::parse(rd.out);
    CHECK(jr.contains("found"));
    CHECK(jr.contains("report"));

    Run mv = cli({"moves", ref, "--format", "json"});
    CHECK(mv.exit == 0);
    CHECK(json::parse(mv.out).is_array());

    Run sh = cli({"corpus", "show", e.name, "--format", "json"});
    CHECK(sh.exit == 0);
    CHECK(json::parse(sh.out).contains("pd"));
  }
}

TEST_CASE("json output validates against the schemas for every corpus entry") {
  for (const auto& e : corpus()) {
    Run inv = cli({"invariants", "corpus:" + e.name, "--format", "json"});
    CHECK(inv.exit == 0);
    json j = json::parse(inv.out);
    for (const char* field : {"components", "crossings", "linking", "writhe", "faces"})
      CHECK(j.contains(field));
    Run val = cli({"validate", "corpus:" + e.name, "--format", "json"});
    json v = json::parse(val.out);
    LinkDiagram back = diagram_from_json(v["diagram"]);
    CHECK(canonical_key(back) == canonical_key(corpus_load(e.name)));
  }
}

TEST_SUITE_END();

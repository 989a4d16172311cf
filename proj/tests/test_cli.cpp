#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "doctest.h"
#include "report.hpp"
#include "toric/errors.hpp"

using namespace toric;
using nlohmann::json;

namespace {

const std::string kData = TOOLS_DATA_DIR;

struct Run {
  int code;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::dispatch(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / ("toric_cli_test_" + name);
  std::ofstream(p) << body;
  return p.string();
}

}  // namespace

TEST_CASE("cli: fan verbs") {
  Run r = run({"fan-check", "--fan", kData + "/p2.json"});
  CHECK(r.code == 0);
  CHECK(r.doc()["result"]["valid"] == true);
  CHECK(r.doc()["result"]["projective_space"] == true);
  Run spaced = run({"fan", "check", "--fan", kData + "/p2.json"});
  CHECK(spaced.out == r.out);
  Run t = run({"fan-terminal", "--fan", kData + "/p4713.json"});
  CHECK(t.code == 0);
  CHECK(t.doc()["result"]["terminal"] == false);
  CHECK(t.doc()["result"]["offending_cones"].size() == 3);
}

TEST_CASE("cli: theorem run") {
  std::vector<std::string> args{"theorem-run", "--fan", kData + "/p4713.json", "--divisor", kData + "/o364.json",
                                "--orbit", "[]", "--assume-cb"};
  Run r = run(args);
  REQUIRE(r.code == 0);
  json res = r.doc()["result"];
  CHECK(res["alpha"] == "28/1");
  CHECK(res["certificate"]["anti_canonical_degree"] == "24/13");
  CHECK(run(args).out == r.out);  // byte-for-byte deterministic

  args.pop_back();
  Run missing = run(args);
  CHECK(missing.code == 2);
  CHECK(missing.doc()["error"]["type"] == "AssumptionRequired");
  CHECK(missing.err.find("Zariski-dense") != std::string::npos);

  Run f1 = run({"theorem", "run", "--fan", kData + "/f1.json", "--divisor", kData + "/f1_line.json", "--assume-cb"});
  REQUIRE(f1.code == 0);
  CHECK(f1.doc()["result"]["alpha"] == "1/1");
  CHECK(f1.doc()["result"]["certificate"]["anti_canonical_degree"] == "2/1");
}

TEST_CASE("cli: exit codes for bad input") {
  CHECK(run({}).code == 3);
  CHECK(run({"bogus"}).code == 3);
  CHECK(run({"fan-check", "--fan", "/nonexistent/fan.json"}).code == 3);
  CHECK(run({"fan-check", "--fan", temp_file("float.json", R"({"rank":2,"rays":[[1.5,0]],"max_cones":[]})")}).code == 3);
  CHECK(run({"fan-check", "--fan", temp_file("junk.json", "{not json")}).code == 3);
  // Two rays cannot make a complete fan in rank 2.
  CHECK(run({"fan-check", "--fan", temp_file("incomplete.json", R"({"rank":2,"rays":[[1,0],[0,1]],"max_cones":[[0,1]]})")})
            .code == 3);
  std::string neg = temp_file("neg.json", R"(["0/1","0/1","0/1","1/1"])");
  CHECK(run({"theorem-run", "--fan", kData + "/f1.json", "--divisor", neg, "--assume-cb"}).code == 3);
  std::string short_div = temp_file("short.json", R"(["1/1"])");
  CHECK(run({"divisor-nef", "--fan", kData + "/f1.json", "--divisor", short_div}).code == 3);
  CHECK(run({"fan-check", "--fan", kData + "/p2.json", "--format", "xml"}).code == 3);
}

TEST_CASE("cli: divisor, mmp, curve and alpha verbs") {
  Run n = run({"divisor-nef", "--fan", kData + "/f1.json", "--divisor", kData + "/f1_line.json"});
  REQUIRE(n.code == 0);
  CHECK(n.doc()["result"]["nef"] == true);
  Run m = run({"mmp", "run", "--fan", kData + "/f1.json", "--divisor", kData + "/f1_line.json", "--orbit", "[]"});
  REQUIRE(m.code == 0);
  CHECK(m.doc()["result"]["steps"][0]["kind"] == "divisorial");
  CHECK(m.doc()["result"]["terminal_step"] == 1);
  Run c = run({"curve", "find", "--fan", kData + "/p4713.json", "--orbit", "[]"});
  REQUIRE(c.code == 0);
  CHECK(c.doc()["result"]["anti_canonical_degree"] == "24/13");
  Run a = run({"alpha", "curve", "--degree", "39", "--branches", "[[1,2],[1,2]]"});
  REQUIRE(a.code == 0);
  CHECK(a.doc()["result"]["alpha"] == "39/2");
  CHECK(run({"alpha", "--degree", "5", "--branches", "[[1,0]]"}).doc()["result"]["alpha"] == "inf");
  // The curve t -> (t^2, t^3) in the chart of the cone {1, 2} of P^2 has multiplicity 2 there.
  std::string o1 = temp_file("o1.json", R"(["1/1","0/1","0/1"])");
  Run cusp = run({"alpha", "--fan", kData + "/p2.json", "--divisor", o1, "--orbit", "[1,2]", "--w", "[-3,-1]"});
  REQUIRE(cusp.code == 0);
  CHECK(cusp.doc()["result"]["certificate"]["multiplicity"] == 2);
  CHECK(run({"alpha", "--fan", kData + "/p2.json", "--divisor", o1, "--orbit", "[1,2]", "--w", "[1,1]"}).code == 3);
}

TEST_CASE("cli: casestudy") {
  Run r = run({"casestudy", "p4713", "--context", kData + "/context_kv.json"});
  REQUIRE(r.code == 0);
  json res = r.doc()["result"];
  CHECK(res["best_approximation"] == true);
  CHECK(res["nodal_curve"]["alpha"] == "39/2");
  CHECK(res["base_locus"]["self_intersection"] == "-65/1");
  CHECK(res["order_three_section"]["form"]["text"] == "x^14 - 4*x^9*y*z + x^7*y^4 + 6*x^4*y^2*z^2 - 4*x^2*y^5*z + y^8 - x*z^4");
  CHECK(run({"casestudy", "p4713"}).code == 2);
  Run s = run({"casestudy", "search", "--weights", "4,7,13", "--cap", "39", "--context", kData + "/context_kv.json"});
  REQUIRE(s.code == 0);
  CHECK(s.doc()["result"]["candidates"][0]["alpha"] == "39/2");
  CHECK(s.doc()["result"]["candidates"][1]["alpha"] == "20/1");
  Run text = run({"casestudy", "p4713", "--context", kData + "/context_kv.json", "--format", "text"});
  CHECK(text.code == 0);
  CHECK(text.out.find("best_approximation: true") != std::string::npos);
  std::string bad_ctx = temp_file("ctx.json", R"({"k_is_Q": true, "quadratics": [{"d": -3, "in_k": true, "in_kv": false}]})");
  CHECK(run({"casestudy", "p4713", "--context", bad_ctx}).code == 3);
}

TEST_CASE("report round trip") {
  Run r = run({"theorem-run", "--fan", kData + "/f1.json", "--divisor", kData + "/f1_line.json", "--assume-cb"});
  json doc = r.doc();
  CHECK(json::parse(doc.dump()) == doc);
  CHECK(doc.dump(2) + "\n" == r.out);
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> dist(-1000000, 1000000);
  for (int i = 0; i < 200; ++i) {
    long b = dist(rng);
    Rat x(Int(dist(rng)), Int(b == 0 ? 1 : b));
    CHECK(report::parse_rat_value(report::rat(x)) == x);
  }
  Fan f = report::parse_fan(report::read_json_file(kData + "/f1.json"));
  CHECK(report::parse_fan(report::fan_json(f)).same_as(f));
}

TEST_CASE("report: index lists") {
  CHECK(report::parse_orbit("[2, 0]") == Cone{0, 2});
  CHECK(report::parse_orbit("2,0") == Cone{0, 2});
  CHECK(report::parse_orbit("1") == Cone{1});
  CHECK(report::parse_orbit("[]").empty());
  CHECK_THROWS_AS(report::parse_orbit("-1"), ParseError);
  CHECK_THROWS_AS(report::parse_orbit("{}"), ParseError);
  CHECK(run({"curve-find", "--fan", kData + "/p4713.json", "--orbit", "0"}).code == 0);
}

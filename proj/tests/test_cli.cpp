#include <catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string text;
  json doc;
};

std::string data(const std::string& name) { return std::string(GHOM_DATA_DIR) + "/" + name; }

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "ghom");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  const int code = ghom::cli::run(static_cast<int>(argv.size()), argv.data(), out);
  Outcome o{code, out.str(), json()};
  if (code != 0 || (!o.text.empty() && o.text[0] == '{')) o.doc = json::parse(o.text);
  return o;
}

}  // namespace

TEST_CASE("cli h0: graph E") {
  const auto o = run({"h0", data("graphE.json")});
  REQUIRE(o.code == 0);
  CHECK(o.doc["group"]["rank"] == 0);
  CHECK(o.doc["group"]["torsion"] == json::array());
  CHECK(o.doc["vertex_order"] == json({"u", "v"}));
  CHECK(o.doc["relation_matrix"] == json::parse(R"([["0", "-1"], ["-1", "1"]])"));
  CHECK(o.doc["conventions"].contains("x_orientation"));
  CHECK(o.doc["conventions"].contains("special_edge_policy"));
}

TEST_CASE("cli h0: matrix input") {
  const auto o = run({"--matrix", "h0", data("full3shift_matrix.json")});
  REQUIRE(o.code == 0);
  CHECK(o.doc["group"]["torsion"] == json({2}));
}

TEST_CASE("cli exactness: graph F") {
  const auto o = run({"exactness", data("graphF.json")});
  REQUIRE(o.code == 0);
  CHECK(o.doc["sigma_lambda_zero"] == true);
  CHECK(o.doc["coker_lambda_equals_h0"] == true);
}

TEST_CASE("cli compare: F against the full 2-shift") {
  const auto o = run({"compare", data("graphF.json"), data("full2shift.json"), "--max-lag", "2", "--entry-bound", "2"});
  REQUIRE(o.code == 0);
  CHECK(o.doc["verdict"] == "eventually_conjugate");
  CHECK(o.doc["certificate"]["R"] == json::parse(R"([["1", "1"]])"));
  CHECK(o.doc["certificate"]["S"] == json::parse(R"([["1"], ["1"]])"));
  CHECK(o.doc["certificate"]["lag"] == 1);
  CHECK(o.doc["certificate_verified"] == true);
  CHECK(o.doc["certificate_preserves_cone"] == true);
  CHECK(o.doc["first"]["vertex_order"] == json({"u"}));
}

TEST_CASE("cli compare: F against the full 3-shift is distinguished by the spectrum") {
  const auto o = run({"compare", data("graphF.json"), data("full3shift.json"), "--max-lag", "2", "--entry-bound", "2"});
  REQUIRE(o.code == 0);
  CHECK(o.doc["verdict"] == "distinguished");
  CHECK(o.doc["distinguished_by"] == "nonzero_spectrum");
}

TEST_CASE("cli cover: F on [-1, 1]") {
  const auto o = run({"cover", data("graphF.json"), "--min", "-1", "--max", "1"});
  REQUIRE(o.code == 0);
  CHECK(o.doc["vertices"].size() == 3);
  REQUIRE(o.doc["edges"].size() == 4);
  for (const auto& e : o.doc["edges"]) {
    const int n = e["stage"];
    CHECK(e["src"] == "u@" + std::to_string(n));
    CHECK(e["dst"] == "u@" + std::to_string(n - 1));
  }
}

TEST_CASE("cli paths, nf, oracle, triple") {
  const auto p = run({"paths", data("graphE.json"), "--max-len", "2"});
  REQUIRE(p.code == 0);
  CHECK(p.doc["count"] == 10);

  const auto nf = run({"nf", data("graphF.json"), "--expr", "e"});
  REQUIRE(nf.code == 0);
  CHECK(nf.doc["normal_form"]["text"] == "u - f");
  CHECK(nf.doc["special_edges"]["u"] == "e");
  const auto nfe = run({"nf", data("graphE.json"), "--expr", "f g", "--special", "u=e", "v=g"});
  REQUIRE(nfe.code == 0);
  CHECK(nfe.doc["normal_form"]["terms"].size() == 1);
  CHECK(nfe.doc["normal_form"]["terms"][0]["edges"] == json({"f"}));

  const auto orc = run({"oracle", data("graphE.json"), "--max-len", "2"});
  REQUIRE(orc.code == 0);
  CHECK(orc.doc["agree"] == true);

  const auto t = run({"triple", data("graphE.json")});
  REQUIRE(t.code == 0);
  CHECK(t.doc["matrix_transpose"] == json::parse(R"([["1", "1"], ["1", "0"]])"));
  CHECK(t.doc["eventual_kernel"] == json::array());
}

TEST_CASE("cli h0gr: equality and positivity") {
  const auto eq = run({"h0gr", data("graphF.json"), "--equals", "a(u,1)", "2 a(u,0)"});
  REQUIRE(eq.code == 0);
  CHECK(eq.doc["equals"] == true);
  const auto ne = run({"h0gr", data("graphF.json"), "--equals", "a(u,0)", "a(u,1)"});
  CHECK(ne.doc["equals"] == false);
  const auto pos = run({"h0gr", data("graphF.json"), "--positive", "a(u,0) - a(u,-1)", "--cap", "2"});
  REQUIRE(pos.code == 0);
  CHECK(pos.doc["verdict"] == "positive");
  CHECK(pos.doc.contains("witness"));
}

TEST_CASE("cli: input errors exit with 2 and an error object") {
  const auto missing = run({"h0", data("no-such-file.json")});
  CHECK(missing.code == 2);
  CHECK(missing.doc["error"]["kind"] == "unreadable_file");

  const auto unknown = run({"frobnicate", data("graphE.json")});
  CHECK(unknown.code == 2);
  CHECK(unknown.doc["error"].contains("message"));

  const auto none = run({});
  CHECK(none.code == 2);

  const auto both = run({"h0gr", data("graphF.json"), "--equals", "a(u,0)", "a(u,0)", "--positive", "a(u,0)"});
  CHECK(both.code == 2);

  const auto bad_expr = run({"h0gr", data("graphF.json"), "--equals", "a(x,0)", "a(u,0)"});
  CHECK(bad_expr.code == 2);

  const auto sinks = run({"triple", data("sink.json")});
  CHECK(sinks.code == 2);
  CHECK(sinks.doc["error"]["kind"] == "precondition");

  const auto bad_special = run({"nf", data("graphE.json"), "--expr", "f", "--special", "u=g"});
  CHECK(bad_special.code == 2);
}

TEST_CASE("cli: help exits 0") {
  const auto o = run({"--help"});
  CHECK(o.code == 0);
  CHECK(o.text.find("h0gr") != std::string::npos);
}

TEST_CASE("cli: repeated runs are byte-identical") {
  const std::vector<std::vector<std::string>> cmds{
      {"h0", data("graphE.json")},
      {"exactness", data("weighted.json")},
      {"compare", data("graphF.json"), data("full2shift.json"), "--max-lag", "2", "--entry-bound", "2"},
      {"cover", data("weighted.json"), "--min", "-2", "--max", "2"},
  };
  for (const auto& c : cmds) {
    const auto first = run(c);
    REQUIRE(first.code == 0);
    for (int k = 0; k < 2; ++k) REQUIRE(run(c).text == first.text);
  }
}

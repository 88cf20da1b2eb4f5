#include <doctest.h>

#include <sstream>

#include "cli.hpp"
#include "higgs/json_io.hpp"

using higgs::io::json;

namespace {

struct Result {
  int code;
  json report;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = higgs::cli::run(args, in, out, err);
  json report;
  if (!out.str().empty()) report = json::parse(out.str());
  return {code, report, err.str()};
}

json series(std::vector<std::pair<int, const char*>> terms, int precision = 32) {
  json c = json::array();
  for (auto& [e, v] : terms) c.push_back(json::array({e, v}));
  return {{"precision", precision}, {"coeffs", c}};
}

std::string poly(std::vector<json> a) { return json{{"p", {{"a", a}}}}.dump(); }

}  // namespace

TEST_CASE("decompose") {
  Result r = run({"decompose"}, poly({series({}), series({{1, "-1"}})}));
  CHECK(r.code == 0);
  CHECK(r.report["partition"] == json::array({2}));

  // T^2 - (1 + z) T + z
  r = run({"decompose"}, poly({series({{0, "1"}, {1, "1"}}), series({{1, "1"}})}));
  CHECK(r.code == 0);
  CHECK(r.report["partition"] == json::array({1, 1}));
  CHECK(r.report["components"].size() == 2);

  r = run({"decompose"}, poly({series({}), series({})}));
  CHECK(r.code == 2);
  CHECK(r.report["error"] == "NotSeparable");
}

TEST_CASE("fixture and check round trip") {
  Result f = run({"fixture", "p1-ramified-positive"});
  REQUIRE(f.code == 0);
  Result c = run({"check"}, f.report.dump());
  CHECK(c.code == 0);
  CHECK(c.report["contained"] == true);
  CHECK(c.report["consistent"] == true);
  CHECK_FALSE(c.report["residuals"].empty());
  for (const auto& x : c.report["residuals"]) CHECK(x["value"] == "0/1");

  // deterministic table
  Result again = run({"check"}, run({"fixture", "p1-ramified-positive"}).report.dump());
  CHECK(again.report["residuals"].dump() == c.report["residuals"].dump());

  Result n = run({"check"}, run({"fixture", "p1-trivial-negative"}).report.dump());
  CHECK(n.code == 0);
  CHECK(n.report["contained"] == false);
  CHECK(n.report["consistent"] == true);
  bool nonzero = false;
  for (const auto& x : n.report["residuals"]) nonzero = nonzero || x["value"] != "0/1";
  CHECK(nonzero);

  Result u = run({"decompose"}, run({"fixture", "p1-unramified"}).report.dump());
  CHECK(u.report["partition"] == json::array({1, 1}));
}

TEST_CASE("check flags and failures") {
  std::string problem = run({"fixture", "p1-ramified-positive"}).report.dump();
  Result narrow = run({"check", "--window", "-4:4"}, problem);
  CHECK(narrow.code == 0);
  CHECK(narrow.report["precision"]["window"] == json::array({-4, 4}));

  Result starved = run({"check", "--precision", "12"}, problem);
  CHECK(starved.code == 2);
  CHECK(starved.report["error"] == "PrecisionError");

  Result bad = run({"check"}, "{\"p\": [1, 2");
  CHECK(bad.code == 2);
  CHECK(bad.report["error"] == "ParseError");
  CHECK(bad.err.find("parse") != std::string::npos);

  CHECK(run({"check", "--window", "3:4"}, problem).code == 2);
}

TEST_CASE("hitchin") {
  json z = series({{1, "1"}}), one = series({{0, "1"}}), zero = series({});
  Result r = run({"hitchin"}, json{{"A", {{zero, z}, {one, zero}}}}.dump());
  CHECK(r.code == 0);
  CHECK(r.report["p"]["a"][0]["coeffs"].empty());
  CHECK(r.report["p"]["a"][1]["coeffs"] == json::array({json::array({1, "-1/1"})}));

  // companion of T^2 - 3T + (2 + z), i.e. a = [3, 2 + z]
  json two_z = series({{0, "-2"}, {1, "-1"}}), three = series({{0, "3"}});
  r = run({"hitchin", "--trivialize"}, json{{"A", {{zero, two_z}, {one, three}}}}.dump());
  CHECK(r.code == 0);
  CHECK(r.report["p"]["a"][0]["coeffs"] == json::array({json::array({0, "3/1"})}));
  CHECK(r.report["p"]["a"][1]["coeffs"] == json::array({json::array({0, "2/1"}), json::array({1, "1/1"})}));
  CHECK(r.report.contains("P"));

  Result id = run({"hitchin", "--trivialize"}, json{{"A", {{one, zero}, {zero, one}}}}.dump());
  CHECK(id.code == 2);
  CHECK(id.report["error"] == "NotSeparable");
}

TEST_CASE("fixture listing and unknown names") {
  Result l = run({"fixture", "--list"});
  CHECK(l.code == 0);
  CHECK(l.report.size() >= 20);
  Result nope = run({"fixture", "nope"});
  CHECK(nope.code == 2);
  CHECK(nope.report["error"] == "UnknownFixture");
  CHECK(run({"frobnicate"}).code == 2);
}

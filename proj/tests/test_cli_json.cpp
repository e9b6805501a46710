#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

#include "doctest.h"

using json = nlohmann::json;

namespace {

struct RunResult {
  int code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(CANYONLAB_BIN) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
  int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

const std::string kF = "\"1/3*x^3 - t^2*x*y^10 + y^12\"";
const std::string kG = "\"x^3 + y^12 + x*y^9 + t*y^13\"";

}  // namespace

TEST_CASE("card: cubic family values land in the JSON document") {
  auto r = run("card " + kF + " --bind t=1");
  REQUIRE(r.code == 0);
  json d = json::parse(r.out);
  auto& card = d["card"];
  REQUIRE(card["canyons"].size() == 2);
  for (auto& c : card["canyons"]) {
    CHECK(c["d"] == "6");
    CHECK(c["h"] == "12");
    CHECK(c["a"]["re"] == "1");
  }
  REQUIRE(card["second_level"].size() == 1);
  auto& s = card["second_level"][0];
  CHECK(s["H"] == "15");
  CHECK(s["delta"] == "5");
  CHECK((s["diff"]["re"] == "4/3" || s["diff"]["re"] == "-4/3"));
  CHECK(s["diff"]["im"] == "0");
}

TEST_CASE("card: half-integer gradient degree serializes exactly") {
  auto r = run("card " + kG + " --bind t=1");
  REQUIRE(r.code == 0);
  json d = json::parse(r.out);
  for (auto& c : d["card"]["canyons"]) CHECK(c["d"] == "13/2");
  CHECK(d["card"]["second_level"][0]["H"] == "27/2");
}

TEST_CASE("card: a smooth germ yields an empty card") {
  auto r = run("card \"y\"");
  REQUIRE(r.code == 0);
  json d = json::parse(r.out);
  CHECK(d["card"]["canyons"].empty());
  CHECK(d["card"]["first_level"].empty());
}

TEST_CASE("card: output is canonical across runs") {
  auto a = run("card " + kF + " --bind t=1");
  auto b = run("card " + kF + " --bind t=1");
  CHECK(a.out == b.out);
  auto p = run("card " + kF + " --bind t=1 --pretty");
  CHECK(p.out != a.out);
  CHECK(json::parse(p.out) == json::parse(a.out));
}

TEST_CASE("compare: constraint-stage refutation") {
  auto r = run("compare " + kF + " " + kF + " --bind t=1");
  // identical germs: inconclusive by soundness
  REQUIRE(r.code == 0);
  CHECK(json::parse(r.out)["verdict"] == "inconclusive");

  auto q = run("compare \"1/3*x^3 - x*y^10 + y^12\" "
               "\"1/3*x^3 - 4*x*y^10 + y^12\" --certificate");
  REQUIRE(q.code == 0);
  json d = json::parse(q.out);
  CHECK(d["verdict"] == "not_equivalent");
  CHECK(d["route"] == "scale_constraints");
  REQUIRE(d["matchings"].size() == 2);
  for (auto& m : d["matchings"]) {
    CHECK(m["refuted"] == true);
    CHECK(m["solution"]["unsat"] == true);
    CHECK(!m["constraints"].empty());
  }
}

TEST_CASE("compare: degree mismatch refutes without matchings") {
  auto r = run("compare " + kF + " " + kG + " --bind t=1 --certificate");
  REQUIRE(r.code == 0);
  json d = json::parse(r.out);
  CHECK(d["verdict"] == "not_equivalent");
  CHECK(d["matchings"].empty());
}

TEST_CASE("sweep: one value is a single class") {
  auto r = run("sweep \"x^3 - t*x*y^10 + y^12\" --param t --values 3");
  REQUIRE(r.code == 0);
  json d = json::parse(r.out);
  CHECK(d["pairs"].empty());
  REQUIRE(d["not_refuted_classes"].size() == 1);
  CHECK(d["not_refuted_classes"][0] == json::array({"3"}));
}

TEST_CASE("sweep: the cubic family separates pairwise") {
  auto r = run("sweep " + kF + " --param t --values 1,2,3");
  REQUIRE(r.code == 0);
  json d = json::parse(r.out);
  REQUIRE(d["pairs"].size() == 3);
  for (auto& p : d["pairs"])
    CHECK(p["result"]["verdict"] == "not_equivalent");
  CHECK(d["not_refuted_classes"].size() == 3);
}

TEST_CASE("exit codes: parse failures give 3, compute failures 2") {
  CHECK(run("card \"x + + y\"").code == 3);
  CHECK(run("card \"t*x\"").code == 3);  // unbound parameter
  auto r = run("card \"0\"");
  CHECK(r.code == 2);
  json d = json::parse(r.out);
  CHECK(d["error"] == "compute");
}

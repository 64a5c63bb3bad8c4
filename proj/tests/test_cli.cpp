#include <catch_amalgamated.hpp>

#include <sstream>

#include "cli.hpp"

using fiblab::io::Json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = fiblab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("factorize", "[cli]") {
  auto r = run({"factorize", "--map", R"j({"m":2,"n":3,"values":[0,0,2]})j", "--json"});
  REQUIRE(r.code == 0);
  auto j = Json::parse(r.out);
  CHECK(j.at("command") == "factorize");
  CHECK(j.at("factorization").at("p_f").at("values") == Json::parse("[0,0,2]"));
  CHECK(j.at("factorization").at("i_f").at("n") == 3);
}

TEST_CASE("check-fibration on the G(2) under space", "[cli]") {
  auto r = run({"check-fibration", "--map", R"j({"slice_projection":"G(2)","vertex":0})j", "--side", "left", "--json"});
  CHECK(r.code == 1);
  auto j = Json::parse(r.out);
  const auto& level1 = j.at("fibration").at("per_level").at(0);
  CHECK(level1.at("lhs") == 3);
  CHECK(level1.at("rhs") == 4);
  CHECK(j.at("verdict") == "fail");
}

TEST_CASE("yoneda", "[cli]") {
  CHECK(run({"yoneda", "--mode", "tensor_fibered"}).code == 0);
  CHECK(run({"yoneda", "--category", "[2]", "--vertex", "1"}).code == 0);
}

TEST_CASE("input errors exit with 2", "[cli]") {
  auto bad = run({"factorize", "--map", "{\"m\":2,"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("byte") != std::string::npos);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"factorize"}).code == 2);
  CHECK(run({"check-fibration", "--map", R"j({"identity":"F(1)"})j", "--side", "sideways"}).code == 2);
}

TEST_CASE("output is deterministic", "[cli]") {
  const std::vector<std::string> args{"theorem-a", "--seed", "5"};
  auto a = run(args), b = run(args);
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);
  auto c = run({"straighten", "--map", R"j({"grothendieck":{"random_chain":{"n":2,"seed":4}}})j", "--json"});
  auto d = run({"straighten", "--map", R"j({"grothendieck":{"random_chain":{"n":2,"seed":4}}})j", "--json"});
  CHECK(c.out == d.out);
  CHECK(c.code == 0);
}

TEST_CASE("report-suite runs one criterion", "[cli]") {
  auto r = run({"report-suite", "--criterion", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
}

TEST_CASE("every command is registered", "[cli]") {
  CHECK(fiblab::cli::commands().size() == 15);
  auto h = run({"homology", "--set", "boundary(2)", "--json"});
  CHECK(h.code == 0);
  CHECK(Json::parse(h.out).at("betti").at("betti") == Json::parse("[1,1,0,0]"));
}

#include <catch_amalgamated.hpp>

#include "fiblab/error.hpp"
#include "fiblab/fib.hpp"
#include "fiblab/io.hpp"

using namespace fiblab;
using io::Json;

namespace {

std::vector<std::size_t> level_sizes(const sspace::FinSimplicialSpace& x) {
  std::vector<std::size_t> out;
  for (int m = 0; m <= x.level_bound(); ++m) out.push_back(x.level_size(m));
  return out;
}

}  // namespace

TEST_CASE("malformed JSON reports its location", "[io]") {
  try {
    io::parse("{\"m\": 2,", "payload");
    FAIL("no error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("payload") != std::string::npos);
    CHECK(std::string(e.what()).find("byte") != std::string::npos);
  }
  CHECK(io::parse_value("F(2)", "x") == Json("F(2)"));
  CHECK(io::parse_value("[2]", "x") == Json("[2]"));
  CHECK(io::parse_value("[1,2]", "x").is_array());
}

TEST_CASE("monotone maps", "[io]") {
  poset::MonotoneMap f(2, 3, {0, 0, 2});
  auto j = io::to_json(f);
  CHECK(j == Json::parse(R"j({"m":2,"n":3,"values":[0,0,2]})j"));
  CHECK(io::monotone_from_json(j) == f);
  CHECK_THROWS_AS(io::monotone_from_json(Json::parse(R"j({"m":1,"n":3,"values":[2,0]})j")), Error);
  CHECK_THROWS_AS(io::monotone_from_json(Json::parse(R"j({"m":1,"values":[0,0]})j")), InputError);
}

TEST_CASE("simplicial sets", "[io]") {
  for (const char* name : {"delta(3)", "boundary(2)", "horn(2,1)", "spine(3)", "discrete(4)", "J(1)@3", "point", "empty"}) {
    auto s = io::sset_from_json(Json(name));
    auto back = io::sset_from_json(io::to_json(*s));
    CHECK(back->cell_count() == s->cell_count());
    CHECK(back->top_dim() == s->top_dim());
    CHECK(back->exact() == s->exact());
  }
  auto manual = io::sset_from_json(Json::parse(
      R"j({"dim_bound":1,"exact":true,"cells":[{"label":"a","dim":0},{"label":"b","dim":0},{"label":"e","dim":1,"faces":["b","a"]}]})j"));
  CHECK(manual->count_cells(1) == 1);
  CHECK_THROWS_AS(io::sset_from_json(Json("delta(x)")), InputError);
}

TEST_CASE("simplicial spaces", "[io]") {
  CHECK(level_sizes(*io::space_from_json(Json("F(2)@4"))) == level_sizes(*sspace::F(2, 4)));
  CHECK(io::space_from_json(Json("F(2)"))->level_bound() == io::kDefaultLevels);
  CHECK(level_sizes(*io::space_from_json(Json("G(2)"))) == level_sizes(*sspace::G(2, 2)));
  CHECK(level_sizes(*io::space_from_json(Json("E(1)@2"))) == std::vector<std::size_t>{2, 4, 8});
  for (const char* name : {"F(1)", "G(3)", "dF(2)", "L(1,1)@2"}) {
    auto x = io::space_from_json(Json(name));
    auto back = io::space_from_json(io::to_json(*x));
    CHECK(level_sizes(*back) == level_sizes(*x));
    CHECK(back->validate().empty());
  }
  auto nerve = io::space_from_json(Json::parse(R"j({"nerve":"[2]","M":2})j"));
  CHECK(level_sizes(*nerve) == level_sizes(*sspace::F(2, 2)));
  auto slice = io::space_from_json(Json::parse(R"j({"slice":"G(2)","vertex":0,"direction":"under"})j"));
  CHECK(slice->level_size(1) == 3);
}

TEST_CASE("maps", "[io]") {
  auto p = io::map_from_json(Json::parse(R"j({"slice_projection":"G(2)","vertex":0})j"));
  CHECK_FALSE(fib::fibration_check(p, fib::Side::left, fib::Variant::zeroth, fib::Mode::exact_discrete).verdict);
  auto back = io::map_from_json(io::to_json(p));
  CHECK(back.validate().empty());
  for (int m = 0; m <= p.source->level_bound(); ++m) CHECK(back.components[m].assign == p.components[m].assign);
  auto c = io::map_from_json(Json::parse(R"j({"classifying":"F(2)","m":1,"vertex":3})j"));
  CHECK(c.source->level_size(0) == 2);
  auto g = io::map_from_json(Json::parse(R"j({"grothendieck":{"random_chain":{"n":2,"seed":4}}})j"));
  CHECK(fib::fibration_check(g, fib::Side::right, fib::Variant::zeroth, fib::Mode::exact_discrete).verdict);
  CHECK_THROWS_AS(io::map_from_json(Json::parse(R"j({"frobnicate":"F(1)"})j")), InputError);
}

TEST_CASE("categories and functors", "[io]") {
  auto c = io::category_from_json(Json::parse(R"j({"objects":["a","b"],"morphisms":[{"id":"f","src":"a","tgt":"b"}]})j"));
  CHECK(c->object_count() == 2);
  CHECK(c->morphism_count() == 3);
  auto back = io::category_from_json(io::to_json(*c));
  CHECK(back->morphism_count() == 3);
  CHECK(io::category_from_json(Json("[3]"))->morphism_count() == 10);
  CHECK(io::category_from_json(Json("I[1]"))->morphism_count() == 4);
  CHECK(io::category_from_json(Json("terminal"))->object_count() == 1);
  auto f = io::functor_from_json(Json::parse(R"j({"representable":0,"category":"[2]","variance":"covariant"})j"));
  CHECK(f.sizes == std::vector<int>{1, 1, 1});
  auto fb = io::functor_from_json(io::to_json(f));
  CHECK(fb.sizes == f.sizes);
  CHECK(fb.maps == f.maps);
  CHECK_THROWS_AS(io::category_from_json(Json::parse(R"j({"objects":["a"],"morphisms":[{"id":"f","src":"a","tgt":"z"}]})j")),
                  InputError);
}

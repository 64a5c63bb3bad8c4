#include <catch_amalgamated.hpp>

#include "corpus.hpp"
#include "fiblab/error.hpp"
#include "fiblab/fib.hpp"
#include "fiblab/straighten.hpp"
#include "oracles.hpp"

using namespace fiblab;
using fib::Mode;
using fib::Side;
using fib::Variant;
using sspace::SSpaceMap;

namespace {

bool check(const SSpaceMap& p, Side side, Variant variant = Variant::zeroth) {
  return fib::fibration_check(p, side, variant, Mode::exact_discrete).verdict;
}

std::vector<std::size_t> level_sizes(const sspace::FinSimplicialSpace& x, int upto) {
  std::vector<std::size_t> out;
  for (int m = 0; m <= upto; ++m) out.push_back(x.level_size(m));
  return out;
}

cat::CatPtr discrete_category(int n) {
  std::vector<std::vector<bool>> leq(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  return cat::poset_category(leq);
}

}  // namespace

TEST_CASE("G(2) under-space counterexample", "[fib]") {
  auto sl = fib::slice_space(sspace::G(2, 2), 0, fib::Direction::under);
  auto rep = fib::fibration_check(sl.projection, Side::left, Variant::zeroth, Mode::exact_discrete);
  CHECK_FALSE(rep.verdict);
  REQUIRE(rep.counterexample.has_value());
  CHECK(rep.counterexample->level == 1);
  CHECK(rep.counterexample->lhs.size() == 3);
  std::set<std::string> rhs(rep.counterexample->rhs.begin(), rep.counterexample->rhs.end());
  CHECK(rhs == std::set<std::string>{"(00,00)", "(00,01)", "(01,11)", "(01,12)"});
  REQUIRE(rep.counterexample->unmatched.size() == 1);
  CHECK(rep.counterexample->unmatched[0].rfind("(01,12)", 0) == 0);
}

TEST_CASE("identities and pullbacks of fibrations", "[fib]") {
  for (auto x : {sspace::F(2, 3), sspace::G(3, 3), sspace::E(1, 3)}) {
    auto id = sspace::identity_map(x);
    CHECK(check(id, Side::left));
    CHECK(check(id, Side::right));
    CHECK(fib::reedy_bounded(id, 2).verdict);
  }
  std::mt19937_64 rng(3);
  auto p = straighten::random_chain_functor(2, cat::Variance::covariant, rng);
  auto l = straighten::grothendieck_fibration(p, 3);
  REQUIRE(check(l, Side::left));
  auto f1 = sspace::F(1, 3);
  auto g = sspace::classifying_map(f1, 1, l.target, sspace::F_vertex(*l.target, 2, poset::MonotoneMap(1, 2, {0, 2})));
  auto pb = sspace::pullback(g, l);
  CHECK(check(pb.p1, Side::left));
}

TEST_CASE("reedy fibrations", "[fib]") {
  for (int n = 0; n <= 2; ++n) CHECK(fib::reedy_bounded(sspace::to_point(sspace::F(n, 2)), 2).verdict);
  CHECK_FALSE(fib::reedy_bounded(sspace::to_point(sspace::embed_constant(sset::delta(1), 2)), 2).verdict);
  // the matching map at level 1 is the diagonal K -> K x K
  CHECK_FALSE(fib::reedy_bounded(sspace::to_point(sspace::embed_constant(sset::j_truncated(1, 3), 2)), 3).verdict);
  CHECK(fib::reedy_bounded(sspace::to_point(sspace::embed_constant(sset::discrete(3), 2)), 2).verdict);
}

TEST_CASE("segal spaces", "[fib]") {
  for (const auto& c : suite::category_corpus(17, 10)) CHECK(fib::segal_check(fib::nerve_space(*c, 3), Mode::exact_discrete).verdict);
  auto g = fib::segal_check(sspace::G(2, 2), Mode::exact_discrete);
  CHECK_FALSE(g.verdict);
  REQUIRE(g.counterexample.has_value());
  CHECK(g.counterexample->level == 2);
  for (int n = 0; n <= 3; ++n) CHECK(fib::segal_check(sspace::F(n, 3), Mode::exact_discrete).verdict);
}

TEST_CASE("under spaces of nerves", "[fib]") {
  for (const auto& c : suite::category_corpus(5, 6))
    for (int x = 0; x < c->object_count(); ++x) {
      fib::SliceResult sl;
      CHECK(suite::compare_under_slice(c, x, suite::kNerveLevels, &sl).empty());
      CHECK(check(sl.projection, Side::left));
    }
  auto f2 = sspace::F(2, 3);
  auto sl = fib::slice_space(f2, 0, fib::Direction::under);
  CHECK(level_sizes(*sl.space, sl.space->level_bound()) == level_sizes(*f2, sl.space->level_bound()));
  auto over = fib::slice_space(f2, 2, fib::Direction::over);
  CHECK(check(over.projection, Side::right));
}

TEST_CASE("initial objects", "[fib]") {
  CHECK(fib::initial_object_check(fib::nerve_space(*cat::ordinal(2), 3), 0).value);
  for (int n = 1; n <= 2; ++n) {
    CHECK(fib::initial_object_check(sspace::F(n, 3), 0).value);
    CHECK_FALSE(fib::initial_object_check(sspace::F(n, 3), 1).value);
  }
  CHECK(fib::initial_object_check(sspace::F(0, 3), 0).value);
}

TEST_CASE("cocones", "[fib]") {
  auto x = fib::nerve_space(*cat::ordinal(2), 3);
  for (int v = 0; v <= 2; ++v) {
    auto co = fib::cocone_space(sspace::point_map(x, v));
    auto sl = fib::slice_space(x, v, fib::Direction::under);
    const int top = std::min(co.space->level_bound(), sl.space->level_bound());
    CHECK(level_sizes(*co.space, top) == level_sizes(*sl.space, top));
    CHECK(check(co.projection, Side::left));
  }
  auto none = sspace::hom(sspace::empty_space(3), x).maps;
  REQUIRE(none.size() == 1);
  auto co = fib::cocone_space(none[0]);
  const int top = co.space->level_bound();
  CHECK(level_sizes(*co.space, top) == level_sizes(*x, top));
}

TEST_CASE("colimits", "[fib]") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 4; ++k) {
    auto c = cat::random_poset(rng, 3, true);
    auto x = fib::nerve_space(*c, 3);
    auto rep = fib::colimit_evidence(sspace::identity_map(x));
    CHECK(rep.has_colimit);
    REQUIRE(rep.vertex.has_value());
    CHECK(x->level(0).label(*rep.vertex) == c->object(suite::poset_top(*c)));
  }
  auto x = fib::nerve_space(*cat::ordinal(2), 3);
  for (int v = 0; v <= 2; ++v) {
    auto rep = fib::colimit_evidence(sspace::point_map(x, v));
    CHECK(rep.has_colimit);
    CHECK(rep.vertex == v);
  }
  auto d = fib::nerve_space(*discrete_category(2), 3);
  CHECK_FALSE(fib::colimit_evidence(sspace::identity_map(d)).has_colimit);
}

TEST_CASE("cofinality", "[fib]") {
  auto f0 = sspace::F(0, 2), f1 = sspace::F(1, 2);
  CHECK(fib::cofinal_evidence(sspace::classifying_map(f0, 0, f1, 1)).value);
  auto zero = fib::cofinal_evidence(sspace::classifying_map(f0, 0, f1, 0));
  CHECK_FALSE(zero.value);
  CHECK(zero.tier == oracle::Tier::decisive);
  CHECK(fib::cofinal_evidence(sspace::identity_map(sspace::F(2, 2))).value);
}

TEST_CASE("span profiles", "[fib]") {
  auto c1 = cat::ordinal(1);
  cat::SetFunctor iso{c1, cat::Variance::covariant, {2, 2}, {{"a", "b"}, {"a", "b"}}, {}};
  cat::SetFunctor collapse{c1, cat::Variance::covariant, {2, 1}, {{"a", "b"}, {"a"}}, {}};
  for (int f = 0; f < c1->morphism_count(); ++f) {
    iso.maps.push_back({0, 1});
    if (c1->src(f) == c1->tgt(f)) collapse.maps.push_back(c1->src(f) == 0 ? std::vector<int>{0, 1} : std::vector<int>{0});
    else collapse.maps.push_back({0, 0});
  }
  REQUIRE(iso.validate().empty());
  REQUIRE(collapse.validate().empty());
  auto a = fib::span_profile(straighten::grothendieck_fibration(iso, 2));
  CHECK(a.also_right);
  auto b = fib::span_profile(straighten::grothendieck_fibration(collapse, 2));
  CHECK_FALSE(b.also_right);
  REQUIRE(b.spans.size() == 1);
  CHECK(b.spans[0].left_leg_bijective);
  CHECK_FALSE(b.spans[0].right_leg_bijective);
  auto id = fib::span_profile(sspace::identity_map(sspace::F(1, 2)));
  REQUIRE(id.spans.size() == 1);
  CHECK(id.spans[0].left_leg_bijective);
  CHECK(id.spans[0].right_leg_bijective);
}

TEST_CASE("variants, duality and locality", "[fib]") {
  auto corpus = suite::chain_corpus(23, 10, cat::Variance::covariant, 2);
  for (const auto& inst : corpus) {
    const auto& p = inst.fibration;
    for (Side side : {Side::left, Side::right}) CHECK(check(p, side, Variant::zeroth) == check(p, side, Variant::adjacent));
    auto op = sspace::opposite_map(p, sspace::opposite(*p.source), sspace::opposite(*p.target));
    CHECK(check(p, Side::left) == check(op, Side::right));
    bool local = true;
    for (int k = 0; k <= p.target->level_bound(); ++k)
      for (int v = 0; v < static_cast<int>(p.target->level_size(k)); ++v) local = local && check(fib::pull_to_simplex(p, k, v), Side::left);
    CHECK(local == check(p, Side::left));
  }
}

TEST_CASE("exact mode needs discrete input", "[fib]") {
  auto p = sspace::to_point(sspace::embed_constant(sset::delta(1), 2));
  CHECK_THROWS_AS(fib::fibration_check(p, Side::left, Variant::zeroth, Mode::exact_discrete), PreconditionError);
  auto rep = fib::fibration_check(p, Side::left, Variant::zeroth, Mode::bounded_evidence);
  CHECK(rep.mode == Mode::bounded_evidence);
}

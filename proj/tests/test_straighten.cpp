#include <catch_amalgamated.hpp>

#include "corpus.hpp"
#include "fiblab/error.hpp"
#include "fiblab/straighten.hpp"
#include "oracles.hpp"

using namespace fiblab;
using fib::Side;
using poset::MonotoneMap;

namespace {

cat::SetFunctor chain_functor(const std::vector<int>& sizes, cat::Variance variance) {
  auto c = cat::ordinal(static_cast<int>(sizes.size()) - 1);
  cat::SetFunctor p{c, variance, sizes, {}, {}};
  for (int s : sizes) {
    std::vector<std::string> labels;
    for (int k = 0; k < s; ++k) labels.push_back(std::string(1, static_cast<char>('a' + k)));
    p.labels.push_back(labels);
  }
  // x -> min(x, size - 1) in the direction of the functor
  for (int f = 0; f < c->morphism_count(); ++f) {
    const int from = variance == cat::Variance::covariant ? c->src(f) : c->tgt(f);
    const int to = variance == cat::Variance::covariant ? c->tgt(f) : c->src(f);
    std::vector<int> m;
    for (int x = 0; x < sizes[from]; ++x) m.push_back(std::min(x, sizes[to] - 1));
    p.maps.push_back(m);
  }
  return p;
}

}  // namespace

TEST_CASE("grothendieck fibrations", "[straighten]") {
  for (int n = 0; n <= 3; ++n) {
    auto one = straighten::grothendieck_fibration(chain_functor(std::vector<int>(static_cast<std::size_t>(n + 1), 1), cat::Variance::contravariant), 3);
    for (int m = 0; m <= 3; ++m) CHECK(one.source->level_size(m) == poset::count_maps(m, n));
    CHECK(fib::fibration_check(one, Side::right, fib::Variant::zeroth, fib::Mode::exact_discrete).verdict);
  }
  for (const auto& inst : suite::chain_corpus(31, 20, cat::Variance::contravariant, 4)) {
    REQUIRE(inst.functor.validate().empty());
    for (int m = 0; m <= inst.fibration.source->level_bound(); ++m)
      CHECK(inst.fibration.source->level_size(m) == suite::grothendieck_count(inst.functor, m));
    CHECK(inst.fibration.validate().empty());
  }
  for (const auto& inst : suite::chain_corpus(37, 10, cat::Variance::covariant, 3))
    for (int m = 0; m <= inst.fibration.source->level_bound(); ++m)
      CHECK(inst.fibration.source->level_size(m) == suite::grothendieck_count(inst.functor, m));
}

TEST_CASE("fiber equivalences", "[straighten]") {
  auto p = chain_functor({1, 2, 3}, cat::Variance::contravariant);
  auto r = straighten::grothendieck_fibration(p, 2);
  auto rep = straighten::fiber_equivalence_report(r, Side::right);
  CHECK(rep.all_pass);
  bool seen = false;
  for (const auto& row : rep.rows) {
    CHECK(row.fiber == static_cast<std::size_t>(p.size(row.simplex.back() - '0')));
    if (row.simplex == "01") {
      seen = true;
      CHECK(row.fiber == 2);
    }
  }
  CHECK(seen);
  auto id = straighten::fiber_equivalence_report(sspace::identity_map(sspace::F(3, 3)));
  CHECK(id.all_pass);
  for (const auto& row : id.rows) CHECK(row.fiber == 1);
}

TEST_CASE("straightening the F(2) example", "[straighten]") {
  auto p = chain_functor({1, 2, 3}, cat::Variance::contravariant);
  auto r = straighten::grothendieck_fibration(p, 2);
  auto s = straighten::straighten(r);
  CHECK(s.chain_sizes() == std::vector<std::size_t>{1, 2, 3});
  for (int i = 0; i <= 2; ++i)
    CHECK(s.chain[i].set->vertex_count() == sspace::fiber_over(r, 2, poset::standard_embedding(i, 2)).set->vertex_count());
  CHECK(s.links.size() == 2);
  CHECK(straighten::check_straightening_condition(s).empty());
  CHECK(straighten::check_comparison(s).empty());
  CHECK(s.straightened.validate().empty());
}

TEST_CASE("straightening the identity", "[straighten]") {
  for (int n = 0; n <= 3; ++n) {
    auto fn = sspace::F(n, std::max(n, 1));
    auto s = straighten::straighten(sspace::identity_map(fn));
    for (int m = 0; m <= fn->level_bound(); ++m) CHECK(s.straightened.source->level_size(m) == fn->level_size(m));
    CHECK(straighten::check_comparison(s).empty());
  }
}

TEST_CASE("straightening a corpus", "[straighten]") {
  for (const auto& inst : suite::chain_corpus(41, 15, cat::Variance::contravariant, 4)) {
    auto s = straighten::straighten(inst.fibration);
    CHECK(straighten::check_straightening_condition(s).empty());
    CHECK(straighten::check_comparison(s).empty());
  }
  for (const auto& inst : suite::chain_corpus(43, 10, cat::Variance::covariant, 3)) {
    auto s = straighten::straighten(inst.fibration, Side::left);
    CHECK(straighten::check_straightening_condition(s).empty());
    CHECK(straighten::check_comparison(s).empty());
    CHECK(straighten::mirror_agreement(inst.fibration).empty());
  }
}

TEST_CASE("straightening needs a fibration", "[straighten]") {
  auto p = chain_functor({1, 2}, cat::Variance::covariant);
  auto l = straighten::grothendieck_fibration(p, 2);
  REQUIRE_FALSE(fib::fibration_check(l, Side::right, fib::Variant::zeroth, fib::Mode::exact_discrete).verdict);
  CHECK_THROWS_AS(straighten::straighten(l, Side::right), PreconditionError);
}

TEST_CASE("mapping decomposition", "[straighten]") {
  std::mt19937_64 rng(47);
  for (int it = 0; it < 5; ++it) {
    auto r = straighten::grothendieck_fibration(straighten::random_chain_functor(1, cat::Variance::contravariant, rng), 2);
    auto w = straighten::grothendieck_fibration(straighten::random_chain_functor(1, cat::Variance::contravariant, rng), 2);
    auto rep = straighten::mapping_decomposition_check(r, w, 2);
    CHECK(rep.pass);
    CHECK(rep.chain_pass);
    for (const auto& row : rep.rows) CHECK(row.lhs == row.rhs);
  }
  auto r = straighten::grothendieck_fibration(chain_functor({2, 3}, cat::Variance::contravariant), 2);
  auto point = straighten::mapping_decomposition_check(r, sspace::identity_map(r.target), 2);
  REQUIRE_FALSE(point.rows.empty());
  CHECK(point.rows[0].lhs == 1);
  CHECK(point.rows[0].rhs == 1);
  auto w = straighten::grothendieck_fibration(chain_functor({2, 2}, cat::Variance::covariant), 2);
  auto sections = straighten::mapping_decomposition_check(sspace::identity_map(w.target), w, 1);
  CHECK(sections.pass);
}

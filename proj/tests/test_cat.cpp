#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "corpus.hpp"
#include "fiblab/cat.hpp"
#include "fiblab/error.hpp"
#include "oracles.hpp"

using namespace fiblab;
using namespace fiblab::cat;

namespace {

/// Connected components of a category, by union-find over its morphisms.
int components(const FinCategory& c) {
  std::vector<int> parent(static_cast<std::size_t>(c.object_count()));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> root = [&](int x) { return parent[x] == x ? x : parent[x] = root(parent[x]); };
  for (int f = 0; f < c.morphism_count(); ++f) parent[root(c.src(f))] = root(c.tgt(f));
  int n = 0;
  for (int x = 0; x < c.object_count(); ++x) n += root(x) == x;
  return n;
}

CatPtr discrete_category(int n) {
  std::vector<std::vector<bool>> leq(static_cast<std::size_t>(n), std::vector<bool>(static_cast<std::size_t>(n), false));
  for (int i = 0; i < n; ++i) leq[i][i] = true;
  return poset_category(leq);
}

}  // namespace

TEST_CASE("finite categories validate", "[cat]") {
  for (const auto& c : suite::category_corpus(3, 30)) {
    CHECK(c->validate().empty());
    CHECK(c->object_count() <= 5);
  }
  CHECK(ordinal(3)->morphism_count() == 10);
  CHECK(groupoid(1)->morphism_count() == 4);
  CHECK(terminal_category()->morphism_count() == 1);
  CHECK(opposite(*ordinal(2))->validate().empty());
}

TEST_CASE("nerves", "[cat]") {
  for (int n = 0; n <= 3; ++n) {
    auto s = nerve(*ordinal(n), n);
    auto d = sset::delta(n);
    for (int k = 0; k <= n; ++k) CHECK(s->count_cells(k) == d->count_cells(k));
  }
  auto i1 = nerve(*groupoid(1), 3);
  auto j = sset::j_truncated(1, 3);
  for (int k = 0; k <= 3; ++k) CHECK(i1->count(k) == j->count(k));
  for (const auto& c : suite::category_corpus(4, 10)) {
    auto s = nerve(*c, 3);
    for (int k = 0; k <= 3; ++k) CHECK(s->count(k) == suite::chain_count(*c, k));
  }
}

TEST_CASE("slice categories", "[cat]") {
  auto c2 = ordinal(2);
  auto over_top = slice_category(c2, 2, Direction::over);
  CHECK(over_top.total->object_count() == 3);
  CHECK(over_top.total->morphism_count() == c2->morphism_count());
  CHECK(slice_category(c2, 1, Direction::over).total->object_count() == 2);
  for (const auto& c : suite::category_corpus(8, 10))
    for (int x = 0; x < c->object_count(); ++x) {
      auto over = slice_category(c, x, Direction::over);
      CHECK(over.projection.validate().empty());
      CHECK(fibered_check(over).fibered_in_sets);
      CHECK(fibered_check(slice_category(c, x, Direction::under)).cofibered_in_sets);
    }
}

TEST_CASE("fibered categories", "[cat]") {
  std::mt19937_64 rng(12);
  for (const auto& c : suite::category_corpus(9, 10)) {
    CHECK(fibered_check(grothendieck_cat(random_functor(c, Variance::covariant, rng))).cofibered_in_sets);
    CHECK(fibered_check(grothendieck_cat(random_functor(c, Variance::contravariant, rng))).fibered_in_sets);
  }
  // [1] -> [0]: the arrow 0 -> 1 is a second lift of the identity
  auto t = terminal_category();
  FiberedCategory collapse{ordinal(1), t, Functor{ordinal(1), t, {0, 0}, {}}};
  for (int f = 0; f < ordinal(1)->morphism_count(); ++f) collapse.projection.on_morphisms.push_back(t->id(0));
  REQUIRE(collapse.projection.validate().empty());
  auto rep = fibered_check(collapse);
  CHECK_FALSE(rep.fibered_in_sets);
  CHECK_FALSE(rep.fibered_witness.empty());
  auto id = fibered_check(FiberedCategory{ordinal(2), ordinal(2), identity_functor(ordinal(2))});
  CHECK(id.fibered_in_sets);
}

TEST_CASE("grothendieck categories", "[cat]") {
  std::mt19937_64 rng(13);
  for (const auto& c : suite::category_corpus(10, 10)) {
    auto one = grothendieck_cat(constant_functor(c, 1, Variance::covariant));
    CHECK(one.total->object_count() == c->object_count());
    CHECK(one.total->morphism_count() == c->morphism_count());
    for (int x = 0; x < c->object_count(); ++x) {
      auto el = grothendieck_cat(representable(c, x, Variance::covariant));
      auto under = slice_category(c, x, Direction::under);
      CHECK(el.total->object_count() == under.total->object_count());
      CHECK(el.total->morphism_count() == under.total->morphism_count());
    }
    auto f = random_functor(c, Variance::contravariant, rng);
    CHECK(grothendieck_cat(f).total->object_count() == std::accumulate(f.sizes.begin(), f.sizes.end(), 0));
  }
}

TEST_CASE("tensor products", "[cat]") {
  std::mt19937_64 rng(14);
  for (const auto& c : suite::category_corpus(11, 10)) {
    for (int x = 0; x < c->object_count(); ++x)
      for (int y = 0; y < c->object_count(); ++y) {
        auto t = tensor_functors(representable(c, y, Variance::contravariant), representable(c, x, Variance::covariant));
        CHECK(t.size() == c->hom(x, y).size());
      }
    auto p = random_functor(c, Variance::contravariant, rng);
    CHECK(static_cast<int>(tensor_functors(p, constant_functor(c, 1, Variance::covariant)).size()) ==
          components(*grothendieck_cat(p).total));
    CHECK(tensor_functors(constant_functor(c, 0, Variance::contravariant), random_functor(c, Variance::covariant, rng)).size() == 0);
  }
}

TEST_CASE("fibered tensor products", "[cat]") {
  std::mt19937_64 rng(15);
  for (const auto& c : suite::category_corpus(16, 10)) {
    auto d = grothendieck_cat(random_functor(c, Variance::contravariant, rng));
    FiberedCategory base{c, c, identity_functor(c)};
    CHECK(tensor_fibered(d, base).count == components(*d.total));
    auto p = random_functor(c, Variance::contravariant, rng);
    auto e = grothendieck_cat(p);
    for (int x = 0; x < c->object_count(); ++x) CHECK(tensor_fibered(slice_category(c, x, Direction::under), e).count == p.size(x));
  }
  auto disc = discrete_category(2);
  auto a = grothendieck_cat(constant_functor(disc, 2, Variance::contravariant));
  auto b = grothendieck_cat(constant_functor(disc, 3, Variance::contravariant));
  CHECK(tensor_fibered(a, b).count == 12);
}

TEST_CASE("yoneda", "[cat]") {
  auto t = terminal_category();
  auto one = constant_functor(t, 1, Variance::contravariant);
  for (auto rep : {yoneda_hom_functor(one, 0), yoneda_tensor_functor(one, 0), yoneda_hom_fibered(grothendieck_cat(one), 0),
                   yoneda_tensor_fibered(grothendieck_cat(one), 0)}) {
    CHECK(rep.bijection);
    CHECK(rep.lhs == 1);
    CHECK(rep.rhs == 1);
  }
  std::mt19937_64 rng(16);
  for (const auto& c : suite::category_corpus(17, 10))
    for (int x = 0; x < c->object_count(); ++x) {
      auto h = yoneda_hom_functor(representable(c, x, Variance::covariant), x);
      CHECK(h.bijection);
      CHECK(h.rhs == c->hom(x, x).size());
      auto p = random_functor(c, Variance::contravariant, rng);
      auto tf = yoneda_tensor_fibered(grothendieck_cat(p), x);
      CHECK(tf.bijection);
      CHECK(tf.rhs == static_cast<std::size_t>(p.size(x)));
      CHECK(yoneda_tensor_functor(p, x).bijection);
      CHECK(yoneda_hom_fibered(grothendieck_cat(p), x).bijection);
    }
}

TEST_CASE("hom-tensor adjunction", "[cat]") {
  std::mt19937_64 rng(18);
  for (const auto& c : suite::category_corpus(19, 8)) {
    auto p = random_functor(c, Variance::contravariant, rng, 2);
    auto f = random_functor(c, Variance::covariant, rng, 2);
    auto single = hom_tensor_check(p, f, 1);
    CHECK(single.bijection);
    CHECK(single.lhs == 1);
    CHECK(single.rhs == 1);
    auto y = std::min(1, c->object_count() - 1);
    auto rep = hom_tensor_check(representable(c, y, Variance::contravariant), representable(c, 0, Variance::covariant), 2);
    CHECK(rep.bijection);
    CHECK(rep.rhs == static_cast<std::size_t>(std::pow(2.0, static_cast<double>(c->hom(0, y).size()))));
  }
  auto c = ordinal(2);
  CHECK_THROWS_AS(hom_tensor_check(constant_functor(c, 30, Variance::contravariant), constant_functor(c, 30, Variance::covariant), 3),
                  PreconditionError);
}

#include <catch_amalgamated.hpp>

#include "fiblab/error.hpp"
#include "fiblab/poset.hpp"
#include "oracles.hpp"

using namespace fiblab;
using poset::MonotoneMap;

TEST_CASE("compose", "[poset]") {
  CHECK(poset::compose(MonotoneMap::identity(3), MonotoneMap::identity(3)) == MonotoneMap::identity(3));
  CHECK(poset::compose(MonotoneMap(1, 2, {0, 2}), MonotoneMap(1, 1, {1, 1})) == MonotoneMap(1, 2, {2, 2}));
  CHECK(poset::compose(poset::standard_embedding(2, 3), poset::standard_embedding(1, 2)) == poset::standard_embedding(1, 3));
  CHECK_THROWS_AS(poset::compose(MonotoneMap::identity(2), MonotoneMap::identity(1)), CompositionError);
}

TEST_CASE("monotone maps reject bad data", "[poset]") {
  CHECK_THROWS_AS(MonotoneMap(1, 2, {2, 1}), DomainError);
  CHECK_THROWS_AS(MonotoneMap(1, 2, {0, 3}), DomainError);
  CHECK_THROWS_AS(MonotoneMap(2, 2, {0, 1}), DomainError);
  CHECK_THROWS_AS(poset::standard_embedding(3, 2), DomainError);
}

TEST_CASE("classify", "[poset]") {
  for (int n = 0; n <= 4; ++n) {
    auto c = poset::classify(MonotoneMap::identity(n));
    CHECK(c.is_right_convex_injection);
    CHECK(c.is_right_convex_surjection);
  }
  // image {0,1,2} is closed downwards; 3 has no majorant
  auto c = poset::classify(poset::standard_embedding(2, 3));
  CHECK(c.is_right_convex_injection);
  CHECK_FALSE(c.is_right_convex_surjection);
  CHECK(poset::classify(MonotoneMap(2, 3, {0, 1, 3})).is_right_convex_injection == false);
  CHECK(poset::classify(MonotoneMap(1, 2, {1, 2})).is_right_convex_injection == false);
  auto s = poset::classify(MonotoneMap(2, 2, {0, 0, 2}));
  CHECK(s.is_right_convex_surjection);
  CHECK_FALSE(s.is_right_convex_injection);
}

TEST_CASE("classify agrees with the definitions", "[poset]") {
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n)
      for (const auto& f : poset::all_maps(m, n)) {
        auto c = poset::classify(f);
        CHECK(c.is_right_convex_surjection == suite::def_right_convex_surjection(n, f.values));
        CHECK(c.is_right_convex_injection == suite::def_right_convex_injection(n, f.values));
      }
}

TEST_CASE("factorize", "[poset]") {
  auto fac = poset::factorize(MonotoneMap(2, 3, {0, 0, 2}));
  CHECK(fac.p == MonotoneMap(2, 2, {0, 0, 2}));
  CHECK(fac.i == poset::standard_embedding(2, 3));
  for (int n = 0; n <= 4; ++n) {
    auto id = poset::factorize(MonotoneMap::identity(n));
    CHECK(id.p == MonotoneMap::identity(n));
    CHECK(id.i == MonotoneMap::identity(n));
  }
}

TEST_CASE("factorize matches the brute-force splitting", "[poset]") {
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n) {
      auto splits = suite::all_splittings(m, n);
      for (const auto& f : poset::all_maps(m, n)) {
        const auto& found = splits.at(f.values);
        REQUIRE(found.size() == 1);
        auto fac = poset::factorize(f);
        CHECK(fac.p.values == found[0].first);
        CHECK(fac.i.values == found[0].second);
        CHECK(poset::compose(fac.i, fac.p) == f);
      }
    }
}

TEST_CASE("standard embeddings", "[poset]") {
  CHECK(poset::standard_embedding(3, 3) == MonotoneMap::identity(3));
  CHECK(poset::standard_embedding(0, 3) == MonotoneMap(0, 3, {0}));
  CHECK_FALSE(poset::classify(poset::standard_embedding(1, 3)).is_right_convex_surjection);
}

TEST_CASE("enumeration and counts", "[poset]") {
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= 5; ++n) {
      auto maps = poset::all_maps(m, n);
      CHECK(maps.size() == poset::count_maps(m, n));
      CHECK(maps.size() == suite::monotone_sequences(m, n).size());
      CHECK(std::is_sorted(maps.begin(), maps.end(), [](const auto& a, const auto& b) { return a.values < b.values; }));
    }
  CHECK(poset::count_maps(1, 2) == 6);
}

TEST_CASE("epi-mono, ties, reversal", "[poset]") {
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n)
      for (const auto& f : poset::all_maps(m, n)) {
        auto em = poset::epi_mono(f);
        CHECK(em.epi.surjective());
        CHECK(em.mono.injective());
        CHECK(poset::compose(em.mono, em.epi) == f);
        if (f.surjective()) CHECK(poset::surjection_from_ties(m, poset::ties_of(f)) == f);
        CHECK(poset::reversed(poset::reversed(f)) == f);
      }
  CHECK(poset::coface(2, 1) == MonotoneMap(1, 2, {0, 2}));
  CHECK(poset::codegeneracy(1, 0) == MonotoneMap(2, 1, {0, 0, 1}));
}

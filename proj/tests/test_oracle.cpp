#include <catch_amalgamated.hpp>

#include "corpus.hpp"
#include "fiblab/cat.hpp"
#include "fiblab/oracle.hpp"
#include "fiblab/sspace.hpp"

using namespace fiblab;
using namespace fiblab::oracle;

TEST_CASE("rank over the rationals", "[oracle]") {
  CHECK(rank_q({}) == 0);
  CHECK(rank_q({{1, 2}, {2, 4}}) == 1);
  CHECK(rank_q({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) == 3);
  CHECK(rank_q({{2, 4, 6}, {1, 3, 5}, {3, 7, 11}}) == 2);
  // large entries stay exact
  CHECK(rank_q({{1000000007, 998244353}, {998244353, 1000000007}}) == 2);
}

TEST_CASE("components", "[oracle]") {
  for (int n = 0; n <= 3; ++n) CHECK(pi0(*sset::delta(n)).count == 1);
  CHECK(pi0(*sset::boundary(1)).count == 2);
  CHECK(pi0(*sset::discrete(4)).count == 4);
  CHECK(pi0(*sset::empty_set()).count == 0);
  CHECK(pi0(*sspace::diagonal(*sspace::G(2, 2))).count == 1);
}

TEST_CASE("betti numbers", "[oracle]") {
  for (int n = 0; n <= 4; ++n) {
    std::vector<int> expected(4, 0);
    expected[0] = 1;
    CHECK(betti(*sset::delta(n), 3).numbers == expected);
  }
  CHECK(betti(*sset::boundary(2), 1).numbers == std::vector<int>{1, 1});
  CHECK(betti(*sset::boundary(3), 2).numbers == std::vector<int>{1, 0, 1});
  auto j = betti(*sset::j_truncated(1, 4), 3);
  CHECK(j.numbers == std::vector<int>{1, 0, 0, 0});
  CHECK_FALSE(j.bounded);
  CHECK(betti(*sset::j_truncated(1, 2), 3).bounded);
  CHECK(betti(*sset::spine(3), 1).numbers == std::vector<int>{1, 0});
}

TEST_CASE("d squared vanishes", "[oracle]") {
  std::vector<sset::SSetPtr> sets{sset::delta(4), sset::boundary(4), sset::horn(3, 0), sset::j_truncated(2, 4),
                                  sset::product(sset::delta(2), sset::delta(1)).set};
  for (const auto& c : suite::category_corpus(21, 10)) sets.push_back(cat::nerve(*c, 3));
  for (const auto& s : sets) CHECK(chain_complex(*s, std::max(s->top_dim(), 1)).check_d_squared().empty());
}

TEST_CASE("contractibility evidence", "[oracle]") {
  auto e = contractible_evidence(*sset::empty_set());
  CHECK_FALSE(e.value);
  CHECK(e.tier == Tier::decisive);
  for (int n = 0; n <= 4; ++n) CHECK(contractible_evidence(*sset::delta(n)).value);
  auto b = contractible_evidence(*sset::boundary(2));
  CHECK_FALSE(b.value);
  CHECK(b.reason == "b1 = 1");
  auto two = contractible_evidence(*sset::discrete(2));
  CHECK_FALSE(two.value);
  CHECK(two.tier == Tier::decisive);
  auto j = contractible_evidence(*sset::j_truncated(1, 4));
  CHECK(j.value);
  CHECK(j.tier == Tier::evidence);
}

TEST_CASE("weak equivalence evidence", "[oracle]") {
  CHECK(weak_equivalence_evidence(sset::identity_map(sset::boundary(2))).value);
  CHECK(weak_equivalence_evidence(sset::to_point(sset::delta(1))).value);
  CHECK_FALSE(weak_equivalence_evidence(sset::inclusion_into_delta(sset::boundary(2), 2)).value);
  auto d = weak_equivalence_evidence(sset::identity_map(sset::discrete(3)));
  CHECK(d.value);
  CHECK(d.tier == Tier::decisive);
}

#include <catch_amalgamated.hpp>

#include "fiblab/error.hpp"
#include "fiblab/sset.hpp"

using namespace fiblab;
using namespace fiblab::sset;
using poset::MonotoneMap;

namespace {

std::vector<int> cell_counts(const FinSimplicialSet& s) {
  std::vector<int> out;
  for (int d = 0; d <= s.top_dim(); ++d) out.push_back(s.count_cells(d));
  return out;
}

/// d_i d_j = d_{j-1} d_i, d_i s_j and s_i s_j identities on every simplex up to dim k.
void check_identities(const FinSimplicialSet& s, int k) {
  for (int n = 0; n <= k; ++n)
    for (const auto& x : s.simplices(n)) {
      for (int j = 0; j <= n; ++j) {
        auto sx = s.degeneracy(x, j);
        CHECK(s.face(sx, j) == x);
        CHECK(s.face(sx, j + 1) == x);
        for (int i = 0; i <= j; ++i) CHECK(s.degeneracy(s.degeneracy(x, j), i) == s.degeneracy(s.degeneracy(x, i), j + 1));
      }
      if (n < 2) continue;
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i) CHECK(s.face(s.face(x, j), i) == s.face(s.face(x, i), j - 1));
    }
}

}  // namespace

TEST_CASE("standard objects", "[sset]") {
  CHECK(cell_counts(*delta(2)) == std::vector<int>{3, 3, 1});
  CHECK(cell_counts(*boundary(1)) == std::vector<int>{2});
  CHECK(cell_counts(*boundary(2)) == std::vector<int>{3, 3});
  CHECK(cell_counts(*horn(2, 1)) == std::vector<int>{3, 2});
  auto j = j_truncated(1, 2);
  CHECK(j->count(0) == 2);
  CHECK(j->count(1) == 4);
  CHECK(j->count(2) == 8);
  CHECK_FALSE(j->exact());
  CHECK(cell_counts(*spine(3)) == std::vector<int>{4, 3});
  CHECK(discrete(4)->cell_count() == 4);
  CHECK(empty_set()->empty());
  CHECK_THROWS_AS(horn(2, 3), DomainError);
}

TEST_CASE("simplicial identities", "[sset]") {
  check_identities(*delta(3), 4);
  check_identities(*boundary(3), 3);
  check_identities(*horn(3, 1), 3);
  check_identities(*j_truncated(2, 3), 3);
  check_identities(*product(delta(1), delta(2)).set, 3);
}

TEST_CASE("apply operator", "[sset]") {
  auto d2 = delta(2);
  const Simplex top = d2->cell(d2->first(2));
  CHECK(d2->apply(top, MonotoneMap::identity(2)) == top);
  CHECK(d2->face(d2->face(top, 0), 0) == d2->apply(top, MonotoneMap(0, 2, {2})));
  CHECK(d2->vertices(d2->face(d2->face(top, 0), 0)) == std::vector<int>{2});
  for (int n = 0; n <= 2; ++n)
    for (const auto& x : d2->simplices(n)) CHECK(d2->face(d2->degeneracy(x, 0), 0) == x);
  // theta^* agrees with the composite of faces and degeneracies
  for (int m = 0; m <= 3; ++m)
    for (const auto& theta : poset::all_maps(m, 2)) CHECK(delta_map(2, d2->apply(top, theta)) == theta);
}

TEST_CASE("products, pushouts, pullbacks", "[sset]") {
  auto p = product(delta(1), delta(1));
  CHECK(cell_counts(*p.set) == std::vector<int>{4, 5, 2});
  CHECK(p.projections[0].validate().empty());

  // gluing delta(1) to a point along a vertex changes nothing
  auto v0 = classifying_map(delta(1), delta(1)->cell(0));
  auto po = pushout(v0, identity_map(point()));
  CHECK(cell_counts(*po.set) == std::vector<int>{2, 1});
  CHECK(po.from_b.injective());

  for (int n = 0; n <= 3; ++n) {
    auto pb = pullback(to_point(delta(n)), identity_map(point()));
    CHECK(cell_counts(*pb.set) == cell_counts(*delta(n)));
    CHECK(pb.p1.injective());
  }
  CHECK_THROWS_AS(pullback(to_point(delta(1)), identity_map(delta(1))), ShapeError);
}

TEST_CASE("hom sets", "[sset]") {
  for (int n = 0; n <= 4; ++n) CHECK(hom_set(delta(0), delta(n)).maps.size() == static_cast<std::size_t>(n + 1));
  CHECK(hom_set(delta(1), delta(2)).maps.size() == 6);
  CHECK(hom_set(boundary(1), delta(0)).maps.size() == 1);
  CHECK(hom_set(delta(2), delta(3)).maps.size() == poset::count_maps(2, 3));
  CHECK(hom_set(boundary(2), delta(1)).maps.size() == 4);
  for (const auto& f : hom_set(horn(2, 1), delta(2)).maps) CHECK(f.validate().empty());
}

TEST_CASE("mapping spaces", "[sset]") {
  auto b = boundary(2);
  auto m = mapping_space(delta(0), b, 2);
  for (int k = 0; k <= 2; ++k) CHECK(m->count(k) == b->count(k));
  auto pt = mapping_space(delta(1), delta(0), 2);
  for (int k = 0; k <= 2; ++k) CHECK(pt->count(k) == 1);
  CHECK(mapping_space(boundary(1), delta(1), 0)->count(0) == 4);
}

TEST_CASE("lifting", "[sset]") {
  auto id2 = identity_map(delta(2));
  CHECK(has_rlp(to_point(boundary(2)), id2).found);
  for (int n = 0; n <= 3; ++n) CHECK(has_rlp(to_point(delta(n)), inclusion_into_delta(horn(2, 1), 2)).found);
  auto outer = has_rlp(to_point(delta(1)), inclusion_into_delta(horn(2, 0), 2));
  CHECK_FALSE(outer.found);
  CHECK(outer.failing_square.has_value());
}

TEST_CASE("kan check", "[sset]") {
  auto a = kan_check(identity_map(delta(0)), 3);
  CHECK(a.fibration_up_to_bound);
  CHECK(a.trivial_fibration_up_to_bound);
  CHECK(kan_check(to_point(j_truncated(1, 4)), 3).fibration_up_to_bound);
  auto b = kan_check(to_point(delta(1)), 2);
  CHECK_FALSE(b.fibration_up_to_bound);
  REQUIRE_FALSE(b.failures.empty());
  CHECK(b.failures[0].kind == "horn");
}

TEST_CASE("opposite and sub-objects", "[sset]") {
  auto d2 = delta(2);
  auto op = opposite(*d2);
  CHECK(cell_counts(*op) == cell_counts(*d2));
  check_identities(*op, 3);
  auto sub = sub_generated(d2, {d2->first(1)});
  CHECK(cell_counts(*sub.set) == std::vector<int>{2, 1});
  CHECK(sub.inclusion.injective());
  CHECK(sub.inclusion.validate().empty());
}
